#pragma once

#include <cmath>
#include <span>

namespace gravatom {

/// Neumaier-compensated accumulator. Terms must be added in a fixed order for
/// results to be reproducible bit for bit.
template <typename Real = double>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(Real init) : sum_(init) {}

  CompensatedSum& operator+=(Real value) {
    const Real t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  [[nodiscard]] Real value() const { return sum_ + compensation_; }

 private:
  Real sum_{0};
  Real compensation_{0};
};

template <typename Real>
[[nodiscard]] Real compensated_sum(std::span<const Real> terms) {
  CompensatedSum<Real> acc;
  for (const Real t : terms) acc += t;
  return acc.value();
}

}  // namespace gravatom
