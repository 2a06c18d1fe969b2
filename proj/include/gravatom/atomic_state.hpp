#pragma once

#include <compare>
#include <cstdlib>
#include <string>

#include "gravatom/errors.hpp"

namespace gravatom {

/// Hydrogenic eigenstate label (n, l, m). Orders by (n, l, m).
struct AtomicState {
  int n{1};
  int l{0};
  int m{0};

  [[nodiscard]] constexpr bool valid() const noexcept {
    return n >= 1 && l >= 0 && l <= n - 1 && std::abs(m) <= l;
  }

  /// Validating constructor; throws DomainError on 0 <= l <= n-1, |m| <= l violations.
  static AtomicState make(int n, int l, int m = 0) {
    AtomicState s{n, l, m};
    if (!s.valid()) {
      throw DomainError("invalid quantum numbers (n=" + std::to_string(n) +
                        ", l=" + std::to_string(l) + ", m=" + std::to_string(m) +
                        "): need n >= 1, 0 <= l <= n-1, |m| <= l");
    }
    return s;
  }

  friend constexpr auto operator<=>(const AtomicState&, const AtomicState&) = default;
};

inline constexpr char orbital_letter(int l) {
  constexpr char letters[] = "spdfghiklmnoqrtuv";
  return (l >= 0 && l < 17) ? letters[l] : '?';
}

inline std::string to_string(const AtomicState& s) {
  return std::to_string(s.n) + orbital_letter(s.l);
}

}  // namespace gravatom
