#pragma once

// Quadrature rules and integrators used by the overlap integrals.
//
// Radial integrals are over [0, inf) with integrands of the form
// polynomial(r) * exp(-beta r). They are done with an n-point Gauss-Laguerre
// rule after the substitution u = beta r; the rule stores w_i e^{u_i} so the
// full integrand (exponential included) is evaluated at each node. The rule is
// exact whenever the decay rate passed in matches the integrand's.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "gravatom/compensated_sum.hpp"
#include "gravatom/constants.hpp"
#include "gravatom/errors.hpp"

namespace gravatom {

enum class RadialScheme { gauss_laguerre_transformed, adaptive_panel };

inline constexpr int max_node_count = 2000;

struct QuadratureSpec {
  int radial_node_count{200};
  int angular_node_count{64};
  RadialScheme radial_scheme{RadialScheme::gauss_laguerre_transformed};
  double target_abs_tolerance{1e-12};

  void validate() const {
    if (radial_node_count < 2 || angular_node_count < 2) {
      throw DomainError("QuadratureSpec: node counts must be >= 2");
    }
    if (radial_node_count > max_node_count || angular_node_count > max_node_count) {
      throw DomainError("QuadratureSpec: node counts must be <= " + std::to_string(max_node_count));
    }
    if (!(target_abs_tolerance > 0.0)) {
      throw DomainError("QuadratureSpec: target_abs_tolerance must be > 0");
    }
  }
};

struct QuadratureNode {
  double x;
  double w;
};

using QuadratureRule = std::vector<QuadratureNode>;

namespace detail {

inline void check_node_count(int n) {
  if (n < 1 || n > max_node_count) {
    throw DomainError("unsupported quadrature node count " + std::to_string(n));
  }
}

// L_n(x) and L_{n-1}(x) for alpha = 0, rescaled to stay finite. `log_scale`
// receives the log of the factor that was divided out of both. Evaluated in
// long double: near the smallest roots the double recurrence carries noise
// of order 1e-13 in L_n, which stalls Newton at that level.
struct ScaledLaguerre {
  long double value;
  long double previous;
  long double log_scale;
};

inline ScaledLaguerre scaled_laguerre(int n, long double x) {
  constexpr long double big = 1e150L;
  long double prev = 1.0L;
  long double cur = 1.0L - x;
  long double log_scale = 0.0L;
  if (n == 0) return {1.0L, 0.0L, 0.0L};
  for (int k = 1; k < n; ++k) {
    const long double next = ((2.0L * k + 1.0L - x) * cur - k * prev) / (k + 1.0L);
    prev = cur;
    cur = next;
    if (std::abs(cur) > big) {
      cur /= big;
      prev /= big;
      log_scale += std::log(big);
    }
  }
  return {cur, prev, log_scale};
}

}  // namespace detail

/// n-point Gauss-Legendre rule on [a, b].
[[nodiscard]] inline QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0) {
  detail::check_node_count(n);
  QuadratureRule rule(static_cast<std::size_t>(n));
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * z * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = z;
    for (int k = 1; k < n; ++k) {
      const double p2 = ((2.0 * k + 1.0) * z * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule[static_cast<std::size_t>(i)] = {mid - half * z, half * w};
    rule[static_cast<std::size_t>(n - 1 - i)] = {mid + half * z, half * w};
  }
  return rule;
}

/// n-point Gauss-Laguerre rule for ∫_0^inf f(r) dr with f ~ poly * exp(-decay_rate r).
/// Weights are w_i e^{u_i} / decay_rate, nodes u_i / decay_rate.
[[nodiscard]] inline QuadratureRule gauss_laguerre_transformed(int n, double decay_rate = 1.0) {
  detail::check_node_count(n);
  if (!(decay_rate > 0.0)) throw DomainError("gauss_laguerre_transformed: decay rate must be > 0");

  // Golub-Welsch for starting values, then Newton on the scaled recurrence.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + 1.0;
  for (int i = 0; i + 1 < n; ++i) sub(i) = i + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd guesses = solver.eigenvalues();

  QuadratureRule rule(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    long double x = guesses(i);
    for (int iter = 0; iter < 50; ++iter) {
      const auto p = detail::scaled_laguerre(n, x);
      // L_n'(x) = n (L_n - L_{n-1}) / x
      const long double step = x * p.value / (n * (p.value - p.previous));
      x -= step;
      if (std::abs(step) <= 1e-18L * x) break;
    }
    // w = x / ((n+1)^2 L_{n+1}(x)^2); L_{n+1} = ((2n+1-x) L_n - n L_{n-1}) / (n+1)
    const auto p = detail::scaled_laguerre(n, x);
    const long double next = ((2.0L * n + 1.0L - x) * p.value - n * p.previous) / (n + 1.0L);
    const long double log_w = std::log(x) - 2.0L * std::log(n + 1.0L) -
                              2.0L * (std::log(std::abs(next)) + p.log_scale);
    rule[static_cast<std::size_t>(i)] = {static_cast<double>(x) / decay_rate,
                                         static_cast<double>(std::exp(log_w + x)) / decay_rate};
  }
  return rule;
}

/// Finite interval for gauss_nodes.
struct FiniteInterval {
  double a;
  double b;
};

/// Half-line [0, inf) for integrands decaying like exp(-decay_rate r).
struct HalfLine {
  double decay_rate{1.0};
};

using Interval = std::variant<FiniteInterval, HalfLine>;

/// Rule selected by a QuadratureSpec: Gauss-Legendre with angular_node_count nodes on
/// finite intervals, transformed Gauss-Laguerre with radial_node_count nodes
/// on the half line.
[[nodiscard]] inline QuadratureRule gauss_nodes(const QuadratureSpec& spec, const Interval& interval) {
  spec.validate();
  if (const auto* fin = std::get_if<FiniteInterval>(&interval)) {
    return gauss_legendre(spec.angular_node_count, fin->a, fin->b);
  }
  return gauss_laguerre_transformed(spec.radial_node_count, std::get<HalfLine>(interval).decay_rate);
}

template <typename F>
[[nodiscard]] double apply_rule(const QuadratureRule& rule, F&& f) {
  CompensatedSum<double> acc;
  for (const auto& node : rule) acc += node.w * f(node.x);
  return acc.value();
}

/// Adaptive Gauss-Legendre panels. Each panel is accepted once the 20-point
/// estimate on it agrees with the sum over its two halves to within the
/// panel's share of the tolerance.
class AdaptivePanelIntegrator {
 public:
  explicit AdaptivePanelIntegrator(double abs_tolerance, int max_panels = 20000)
      : tolerance_(abs_tolerance), max_panels_(max_panels), base_(gauss_legendre(20)) {}

  template <typename F>
  [[nodiscard]] double integrate(F&& f, double a, double b) const {
    int panels = 0;
    CompensatedSum<double> acc;
    refine(f, a, b, panel(f, a, b), tolerance_, panels, acc);
    return acc.value();
  }

  /// ∫_0^inf using consecutive panels of width `scale`; stops past `min_extent`
  /// once three panels in a row contribute less than 1e-3 of the tolerance.
  template <typename F>
  [[nodiscard]] double integrate_half_line(F&& f, double scale, double min_extent = 0.0) const {
    int panels = 0;
    CompensatedSum<double> acc;
    double a = 0.0;
    int quiet_panels = 0;
    for (int k = 0; k < 4000; ++k) {
      const double b = a + scale;
      CompensatedSum<double> part;
      refine(f, a, b, panel(f, a, b), tolerance_ * 0.25, panels, part);
      const double v = part.value();
      acc += v;
      quiet_panels = (std::abs(v) < 1e-3 * tolerance_) ? quiet_panels + 1 : 0;
      if (quiet_panels >= 3 && b >= min_extent) return acc.value();
      a = b;
    }
    throw ConvergenceError("adaptive half-line integration: tail did not decay");
  }

 private:
  template <typename F>
  double panel(F& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    CompensatedSum<double> acc;
    for (const auto& node : base_) acc += node.w * f(mid + half * node.x);
    return half * acc.value();
  }

  template <typename F>
  void refine(F& f, double a, double b, double whole, double tol, int& panels,
              CompensatedSum<double>& acc) const {
    if (++panels > max_panels_) {
      throw ConvergenceError("adaptive panel integration exceeded panel budget of " +
                             std::to_string(max_panels_));
    }
    const double mid = 0.5 * (a + b);
    const double left = panel(f, a, mid);
    const double right = panel(f, mid, b);
    if (std::abs(left + right - whole) <= tol) {
      acc += left;
      acc += right;
      return;
    }
    refine(f, a, mid, left, 0.5 * tol, panels, acc);
    refine(f, mid, b, right, 0.5 * tol, panels, acc);
  }

  double tolerance_;
  int max_panels_;
  QuadratureRule base_;
};

}  // namespace gravatom
