#pragma once

#include <stdexcept>
#include <string>

namespace gravatom {

/// Invalid quantum numbers, strains, or other out-of-domain arguments.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An adaptive integrator ran out of budget before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gravatom
