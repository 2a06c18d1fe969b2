#pragma once

// Hydrogenic basis functions in atomic units (a0 = 1).
//
// Laguerre convention: modern generalized polynomials L_n^a, with L_0^a = 1 and
// L_1^a = 1 + a - x. The older physics convention writes the l = 0 radial
// function with L^1_{n} and a normalization containing (n!)^3; that convention
// is related by L^p_q(old) = (-1)^p q! L^{(p)}_{q-p}(x). Here the normalization
// is fixed by the requirement  ∫ R_{n,l}(r)^2 r^2 dr = 1.

#include <cmath>

#include "gravatom/atomic_state.hpp"
#include "gravatom/constants.hpp"
#include "gravatom/errors.hpp"

namespace gravatom {

/// Generalized Laguerre polynomial L_order^alpha(x) by upward three-term recurrence.
[[nodiscard]] inline double laguerre(int order, int alpha, double x) {
  if (order < 0 || alpha < 0) throw DomainError("laguerre: negative order or alpha");
  if (order == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < order; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Legendre polynomial P_l(x), |x| <= 1.
[[nodiscard]] inline double legendre(int l, double x) {
  if (l < 0) throw DomainError("legendre: negative degree");
  if (l == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < l; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// log of the radial normalization sqrt((2/n)^3 (n-l-1)! / (2n (n+l)!)).
[[nodiscard]] inline double log_radial_norm(int n, int l) {
  return 0.5 * (3.0 * std::log(2.0 / n) + std::lgamma(n - l) - std::log(2.0 * n) -
                std::lgamma(n + l + 1.0));
}

/// R_{n,l}(r), unit-normalized with measure r^2 dr. Units a0^(-3/2).
[[nodiscard]] inline double radial_wavefunction(const AtomicState& state, double r) {
  if (!state.valid()) throw DomainError("radial_wavefunction: invalid state");
  if (r < 0.0) throw DomainError("radial_wavefunction: negative radius");
  const int n = state.n;
  const int l = state.l;
  const double x = 2.0 * r / n;
  const double poly = laguerre(n - l - 1, 2 * l + 1, x);
  if (l == 0) return std::exp(log_radial_norm(n, l) - 0.5 * x) * poly;
  if (x == 0.0) return 0.0;
  return std::exp(log_radial_norm(n, l) - 0.5 * x + l * std::log(x)) * poly;
}

/// Y_l^0(theta) = sqrt((2l+1)/4pi) P_l(cos theta).
[[nodiscard]] inline double spherical_harmonic_m0(int l, double theta) {
  return std::sqrt((2.0 * l + 1.0) / (4.0 * constants::pi)) * legendre(l, std::cos(theta));
}

/// Same as spherical_harmonic_m0 but parameterized by cos(theta), which is
/// what the angular quadrature nodes are.
[[nodiscard]] inline double spherical_harmonic_m0_cos(int l, double cos_theta) {
  return std::sqrt((2.0 * l + 1.0) / (4.0 * constants::pi)) * legendre(l, cos_theta);
}

}  // namespace gravatom
