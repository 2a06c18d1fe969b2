#pragma once

// Strain-distorted hydrogenic states and their decomposition over the
// unperturbed basis.
//
// A transverse strain S maps r -> r A(theta) with
//     A(theta) = (1 - S) / sqrt(cos^2 theta + ((1 - S)/(1 + S))^2 sin^2 theta),
// and the distorted state is psi'(r, theta) = R_{n0,l0}(r A(theta)) Y_{l0}^0(theta).
//
// Three routes to the coefficients C_{n,l} = <n l 0 | psi'> are provided:
//   numeric_decomposition  - 2D quadrature of the exact overlap integral;
//   series_decomposition   - the expansion in powers of S obtained from the
//                            Laguerre shift identity, truncated at k_max;
//   closed_form_*          - the first-order closed forms for C_0, C_{+2}, C_{-2}.
// The numeric route is the reference for the other two.
// Differences between them are reported, not reconciled.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gravatom/atomic_state.hpp"
#include "gravatom/compensated_sum.hpp"
#include "gravatom/constants.hpp"
#include "gravatom/errors.hpp"
#include "gravatom/hydrogenics.hpp"
#include "gravatom/quadrature.hpp"

namespace gravatom {

/// In-plane strain amplitude, |S| < 0.5.
struct Strain {
  double s_p{0.0};

  static Strain make(double s_p) {
    if (!std::isfinite(s_p) || !(std::abs(s_p) < 0.5)) {
      throw DomainError("strain must satisfy |S_p| < 0.5, got " + std::to_string(s_p));
    }
    return Strain{s_p};
  }
};

/// A(theta) given cos(theta).
[[nodiscard]] inline double strain_factor_cos(double cos_theta, const Strain& strain) {
  const double s = strain.s_p;
  const double q = (1.0 - s) / (1.0 + s);
  const double c2 = cos_theta * cos_theta;
  const double s2 = std::max(0.0, 1.0 - c2);
  return (1.0 - s) / std::sqrt(c2 + q * q * s2);
}

[[nodiscard]] inline double strain_factor(double theta, const Strain& strain) {
  const double s = strain.s_p;
  const double q = (1.0 - s) / (1.0 + s);
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  return (1.0 - s) / std::sqrt(c * c + q * q * sn * sn);
}

/// psi'(r, theta) = R_{n0,l0}(r A(theta)) Y_{l0}^0(theta). Only m = 0 sources.
[[nodiscard]] inline double distorted_wavefunction(const AtomicState& source, const Strain& strain,
                                                   double r, double theta) {
  if (source.m != 0) throw DomainError("distorted_wavefunction: only m = 0 sources are supported");
  return radial_wavefunction(source, r * strain_factor(theta, strain)) *
         spherical_harmonic_m0(source.l, theta);
}

// ---------------------------------------------------------------------------
// Angular components
// ---------------------------------------------------------------------------

inline constexpr int theta_component_max_k = 12;

/// Theta_{k,l}: the angular integral 2pi ∫ sin(theta) Y_0^0 cos^k(2 theta) Y_l^0 dtheta
/// divided by sqrt(2l+1). Zero for odd l and for l > 2k.
[[nodiscard]] inline double theta_component(int k, int l) {
  if (k < 0 || k > theta_component_max_k) {
    throw DomainError("theta_component: k must be in [0, 12]");
  }
  if (l < 0) throw DomainError("theta_component: l must be >= 0");
  if (l % 2 != 0 || l > 2 * k) return 0.0;
  // integrand is a polynomial of degree 2k + l <= 48 in cos(theta)
  static const QuadratureRule rule = gauss_legendre(32);
  const double y00 = 1.0 / std::sqrt(4.0 * constants::pi);
  const double integral = apply_rule(rule, [&](double x) {
    const double c2 = 2.0 * x * x - 1.0;
    return y00 * std::pow(c2, k) * spherical_harmonic_m0_cos(l, x);
  });
  return 2.0 * constants::pi * integral / std::sqrt(2.0 * l + 1.0);
}

// ---------------------------------------------------------------------------
// Linear response and closed forms
// ---------------------------------------------------------------------------

/// C(S) ~ zeroth_order + value_at_unit_strain * S. Physical strains (~1e-20)
/// are handled through the slope, never through C - 1.
struct LinearResponseCoefficient {
  double value_at_unit_strain{0.0};
  double zeroth_order{0.0};

  [[nodiscard]] double at(const Strain& s) const { return zeroth_order + value_at_unit_strain * s.s_p; }
};

/// Which closed-form family to use for an l0 = 0 source. The l0 = 0 formulas
/// and the general-l0 formulas disagree in the sign of the C_0 slope at l0 = 0.
enum class ClosedFormFamily {
  by_initial_l,  ///< l0 = 0 formulas for l0 = 0, general formulas otherwise
  general        ///< general-l0 formulas for every l0, including l0 = 0
};

struct ClosedFormCoefficients {
  AtomicState source;
  LinearResponseCoefficient c0;
  LinearResponseCoefficient c_plus2;
  LinearResponseCoefficient c_minus2;
  bool plus2_in_range{false};
  bool minus2_in_range{false};
  /// Set when |slope| * S > 0.1 for any coefficient; first order is not trustworthy there.
  bool large_response_warning{false};
};

namespace detail {

inline double c0_slope_general(int n, int l) {
  const double a = n + l + 1.0;
  return -(a * a * a) / ((2.0 * l - 1.0) * (2.0 * l + 3.0));
}

inline double c_plus2_slope_general(int n, int l) {
  if (l + 2 > n - 1) return 0.0;
  const double ratio = (n + l + 1.0) / (n + l + 2.0);
  const double radicand = ratio * ratio * ratio * (n - l - 1.0) * (n - l - 2.0) /
                          ((2.0 * l + 1.0) * (2.0 * l + 5.0));
  return 2.0 * (l + 1.0) * (l + 2.0) / (2.0 * l + 3.0) * std::sqrt(radicand);
}

inline double c_minus2_slope_general(int n, int l) {
  if (l < 2) return 0.0;
  const double a = n + l + 1.0;
  const double b = n + l;
  const double c = n + l - 1.0;
  const double radicand = (b * b * b) * (c * c * c) /
                          ((n - l) * (n - l + 1.0) * (2.0 * l + 1.0) * (2.0 * l - 3.0));
  return 2.0 * l * (l - 1.0) * (a * a * a) / (2.0 * l - 1.0) * std::sqrt(radicand);
}

inline double c0_slope_s_state(int n) {
  const double a = n + 1.0;
  return -(a * a * a) / 3.0;
}

inline double c2_slope_s_state(int n) {
  if (n < 3) return 0.0;
  const double nn = static_cast<double>(n);
  return 4.0 * (nn + 1.0) / (3.0 * (nn + 2.0) * (nn + 2.0)) *
         std::sqrt((nn * nn - 1.0) * (nn * nn - 4.0) / 5.0);
}

}  // namespace detail

[[nodiscard]] inline ClosedFormCoefficients closed_form_coefficients(
    const AtomicState& source, const Strain& strain,
    ClosedFormFamily family = ClosedFormFamily::by_initial_l) {
  if (!source.valid()) throw DomainError("closed_form_coefficients: invalid source state");
  if (source.m != 0) throw DomainError("closed_form_coefficients: only m = 0 sources are supported");
  const int n = source.n;
  const int l = source.l;

  ClosedFormCoefficients out;
  out.source = source;
  out.c0.zeroth_order = 1.0;
  out.plus2_in_range = (l + 2 <= n - 1);
  out.minus2_in_range = (l - 2 >= 0);
  if (l == 0 && family == ClosedFormFamily::by_initial_l) {
    out.c0.value_at_unit_strain = detail::c0_slope_s_state(n);
    out.c_plus2.value_at_unit_strain = out.plus2_in_range ? detail::c2_slope_s_state(n) : 0.0;
  } else {
    out.c0.value_at_unit_strain = detail::c0_slope_general(n, l);
    out.c_plus2.value_at_unit_strain = out.plus2_in_range ? detail::c_plus2_slope_general(n, l) : 0.0;
    out.c_minus2.value_at_unit_strain = out.minus2_in_range ? detail::c_minus2_slope_general(n, l) : 0.0;
  }
  const double s = std::abs(strain.s_p);
  out.large_response_warning = std::abs(out.c0.value_at_unit_strain) * s > 0.1 ||
                               std::abs(out.c_plus2.value_at_unit_strain) * s > 0.1 ||
                               std::abs(out.c_minus2.value_at_unit_strain) * s > 0.1;
  return out;
}

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

enum class DecompositionMethod { numeric_oracle, power_series, closed_form };

inline const char* to_string(DecompositionMethod m) {
  switch (m) {
    case DecompositionMethod::numeric_oracle: return "numeric_oracle";
    case DecompositionMethod::power_series: return "power_series";
    case DecompositionMethod::closed_form: return "closed_form";
  }
  return "?";
}

struct DecompositionEntry {
  AtomicState state;
  double coefficient{0.0};
};

struct SpectralDecomposition {
  AtomicState source;
  Strain strain;
  DecompositionMethod method{DecompositionMethod::numeric_oracle};
  int k_max{0};
  std::vector<DecompositionEntry> entries;  // sorted by (n, l)
  double norm_sum{0.0};
  std::optional<double> direct_norm;
  /// Estimated squared weight beyond the outermost n shell (numeric only).
  std::optional<double> tail_estimate;
  std::vector<std::string> warnings;

  [[nodiscard]] std::optional<double> coefficient(const AtomicState& s) const {
    for (const auto& e : entries) {
      if (e.state == s) return e.coefficient;
    }
    return std::nullopt;
  }

  [[nodiscard]] const DecompositionEntry& dominant() const {
    return *std::max_element(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return std::abs(a.coefficient) < std::abs(b.coefficient);
    });
  }
};

/// Basis window around n0: n in [max(1, n0 - delta_n), n0 + delta_n], l <= min(l_max, n - 1).
struct BasisTruncation {
  int delta_n{4};
  int l_max{10};

  [[nodiscard]] std::vector<AtomicState> states(int n0) const {
    std::vector<AtomicState> out;
    for (int n = std::max(1, n0 - delta_n); n <= n0 + delta_n; ++n) {
      for (int l = 0; l <= std::min(l_max, n - 1); ++l) out.push_back(AtomicState{n, l, 0});
    }
    return out;
  }
};

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 3);
  return std::string(buf, res.ptr);
}

inline void finalize(SpectralDecomposition& d) {
  std::sort(d.entries.begin(), d.entries.end(),
            [](const auto& a, const auto& b) { return a.state < b.state; });
  CompensatedSum<double> norm;
  for (const auto& e : d.entries) norm += e.coefficient * e.coefficient;
  d.norm_sum = norm.value();
}

}  // namespace detail

/// Evaluates overlap integrals <target | psi'_source> by quadrature. Holds
/// only immutable precomputed rules, so one engine may be shared freely.
class OverlapEngine {
 public:
  explicit OverlapEngine(QuadratureSpec spec = {})
      : spec_(validated(spec)),
        radial_(gauss_laguerre_transformed(spec_.radial_node_count, 1.0)),
        angular_(gauss_legendre(spec_.angular_node_count)),
        angular_refined_(gauss_legendre(2 * spec_.angular_node_count)) {}

  [[nodiscard]] const QuadratureSpec& spec() const { return spec_; }

  /// C = 2pi ∫∫ R_t(r) Y_t(theta) R_s(r A) Y_s(theta) r^2 sin(theta) dtheta dr.
  /// The angular node count is doubled until two successive estimates agree
  /// to target_abs_tolerance; throws ConvergenceError otherwise.
  [[nodiscard]] double overlap(const AtomicState& target, const AtomicState& source,
                               const Strain& strain) const {
    check_pair(target, source);
    return converge_angular([&](double cos_theta) {
      const double a = strain_factor_cos(cos_theta, strain);
      const double decay = 1.0 / target.n + a / source.n;
      const double radial = radial_integral(
          [&](double r) { return radial_wavefunction(target, r) * radial_wavefunction(source, r * a) * r * r; },
          decay, target.n + source.n + target.l + source.l);
      return spherical_harmonic_m0_cos(target.l, cos_theta) *
             spherical_harmonic_m0_cos(source.l, cos_theta) * radial;
    });
  }

  /// ∫ |psi'|^2 d^3r, evaluated directly.
  [[nodiscard]] double direct_norm(const AtomicState& source, const Strain& strain) const {
    check_pair(source, source);
    return converge_angular([&](double cos_theta) {
      const double a = strain_factor_cos(cos_theta, strain);
      const double radial = radial_integral(
          [&](double r) {
            const double v = radial_wavefunction(source, r * a);
            return v * v * r * r;
          },
          2.0 * a / source.n, 2 * (source.n + source.l));
      const double y = spherical_harmonic_m0_cos(source.l, cos_theta);
      return y * y * radial;
    });
  }

  /// ∫_0^inf f(r) dr for f ~ polynomial * exp(-decay r) using the configured scheme.
  template <typename F>
  [[nodiscard]] double radial_integral(F&& f, double decay, int degree_hint) const {
    if (spec_.radial_scheme == RadialScheme::gauss_laguerre_transformed) {
      CompensatedSum<double> acc;
      for (const auto& node : radial_) acc += node.w / decay * f(node.x / decay);
      return acc.value();
    }
    const AdaptivePanelIntegrator integrator(0.25 * spec_.target_abs_tolerance);
    return integrator.integrate_half_line(f, 4.0 / decay, (2.0 * degree_hint + 60.0) / decay);
  }

 private:
  static QuadratureSpec validated(QuadratureSpec spec) {
    spec.validate();
    return spec;
  }

  static void check_pair(const AtomicState& target, const AtomicState& source) {
    if (!target.valid() || !source.valid()) throw DomainError("overlap: invalid state");
    if (target.m != 0 || source.m != 0) throw DomainError("overlap: only m = 0 states are supported");
  }

  template <typename G>
  double angular_sum(G& g, int nodes) const {
    const auto integrate = [&](const QuadratureRule& rule) { return 2.0 * constants::pi * apply_rule(rule, g); };
    if (nodes == spec_.angular_node_count) return integrate(angular_);
    if (nodes == 2 * spec_.angular_node_count) return integrate(angular_refined_);
    return integrate(gauss_legendre(nodes));
  }

  template <typename G>
  double converge_angular(G&& g) const {
    int nodes = spec_.angular_node_count;
    double previous = angular_sum(g, nodes);
    for (int attempt = 0; attempt < 5 && 2 * nodes <= max_node_count; ++attempt) {
      nodes *= 2;
      const double current = angular_sum(g, nodes);
      if (std::abs(current - previous) <= spec_.target_abs_tolerance) return current;
      previous = current;
    }
    throw ConvergenceError("angular quadrature did not reach tolerance " +
                           detail::sci(spec_.target_abs_tolerance));
  }

  QuadratureSpec spec_;
  QuadratureRule radial_;
  QuadratureRule angular_;
  QuadratureRule angular_refined_;
};

/// Single overlap C_{target} for the distorted source.
[[nodiscard]] inline double overlap_numeric(const AtomicState& target, const AtomicState& source,
                                            const Strain& strain, const QuadratureSpec& quad = {}) {
  return OverlapEngine(quad).overlap(target, source, strain);
}

/// Quadrature decomposition over a truncated bound-state basis, with direct
/// norm and a tail estimate for Parseval diagnostics.
[[nodiscard]] inline SpectralDecomposition numeric_decomposition(const AtomicState& source,
                                                                 const Strain& strain,
                                                                 const QuadratureSpec& quad = {},
                                                                 const BasisTruncation& basis = {}) {
  if (source.m != 0 || !source.valid()) throw DomainError("numeric_decomposition: invalid source");
  const OverlapEngine engine(quad);
  SpectralDecomposition d;
  d.source = source;
  d.strain = strain;
  d.method = DecompositionMethod::numeric_oracle;
  for (const auto& target : basis.states(source.n)) {
    d.entries.push_back({target, engine.overlap(target, source, strain)});
  }
  detail::finalize(d);
  d.direct_norm = engine.direct_norm(source, strain);

  // Shell weights fall off roughly as n^-3 for large n, so the weight beyond
  // the last shell N is about shell(N) * N / 2.
  const int n_last = source.n + basis.delta_n;
  CompensatedSum<double> last_shell;
  for (const auto& e : d.entries) {
    if (e.state.n == n_last) last_shell += e.coefficient * e.coefficient;
  }
  d.tail_estimate = last_shell.value() * n_last / 2.0;
  return d;
}

/// Radial factor used by the series route.
enum class SeriesRadialFactor {
  /// Closed factorial expression for ∫ R'_{n0,k} R_{n,l}; diagonal in n.
  factorial,
  /// r^2 dr quadrature of N e^{-x/2} x^k L^{1+k}_{n0-1}(x) against R_{n,l}, x = 2r/n0.
  quadrature
};

inline const char* to_string(SeriesRadialFactor f) {
  return f == SeriesRadialFactor::factorial ? "factorial" : "quadrature";
}

/// Factorial radial factor
///   sqrt((n0-1)! (n0-l-1)! / [n0! (n0+l)!]^3) [(n0+k)!]^3 / (n0-l-1)!,
/// for the n = n0 target. Zero when l > n0 - 1.
[[nodiscard]] inline double factorial_radial_factor(int n0, int k, int l) {
  if (l > n0 - 1) return 0.0;
  const double log_f = 0.5 * (std::lgamma(n0) + std::lgamma(n0 - l) - 3.0 * std::lgamma(n0 + 1.0) -
                              3.0 * std::lgamma(n0 + l + 1.0)) +
                       3.0 * std::lgamma(n0 + k + 1.0) - std::lgamma(n0 - l);
  return std::exp(log_f);
}

/// k-th radial factor by quadrature (see SeriesRadialFactor::quadrature).
[[nodiscard]] inline double series_radial_integral(int n0, int k, const AtomicState& target,
                                                   const OverlapEngine& engine) {
  const double norm = std::exp(log_radial_norm(n0, 0));
  const auto radial_k = [&](double r) {
    const double x = 2.0 * r / n0;
    return norm * std::exp(-0.5 * x) * std::pow(x, k) * laguerre(n0 - 1, 1 + k, x);
  };
  return engine.radial_integral(
      [&](double r) { return radial_k(r) * radial_wavefunction(target, r) * r * r; },
      1.0 / n0 + 1.0 / target.n, n0 + target.n + k + target.l);
}

/// Power-series decomposition for an l0 = 0 source, truncated at k_max.
/// Coefficient(n, l) = sum_k S^k / k! * radial_k(n, l) * sqrt(2l+1) Theta_{k,l}.
/// Entries whose coefficient is exactly zero are omitted.
[[nodiscard]] inline SpectralDecomposition series_decomposition(
    const AtomicState& source, const Strain& strain, int k_max,
    SeriesRadialFactor radial = SeriesRadialFactor::factorial, const QuadratureSpec& quad = {},
    const BasisTruncation& basis = {}) {
  if (!source.valid() || source.m != 0) throw DomainError("series_decomposition: invalid source");
  if (source.l != 0) throw DomainError("series_decomposition: only l0 = 0 sources are supported");
  if (k_max < 1 || k_max > theta_component_max_k) {
    throw DomainError("series_decomposition: k_max must be in [1, 12]");
  }
  const int n0 = source.n;
  const double s = strain.s_p;

  SpectralDecomposition d;
  d.source = source;
  d.strain = strain;
  d.method = DecompositionMethod::power_series;
  d.k_max = k_max;

  // term k multiplies S^k / k!
  std::vector<double> power(static_cast<std::size_t>(k_max + 1));
  power[0] = 1.0;
  for (int k = 1; k <= k_max; ++k) power[static_cast<std::size_t>(k)] = power[static_cast<std::size_t>(k - 1)] * s / k;

  auto add = [&](const AtomicState& target, double c) {
    if (c != 0.0) d.entries.push_back({target, c});
  };

  if (radial == SeriesRadialFactor::factorial) {
    for (int l = 0; l <= std::min(2 * k_max, n0 - 1); l += 2) {
      CompensatedSum<double> c;
      for (int k = l / 2; k <= k_max; ++k) {
        const double term = power[static_cast<std::size_t>(k)] * factorial_radial_factor(n0, k, l) *
                            std::sqrt(2.0 * l + 1.0) * theta_component(k, l);
        c += term;
      }
      add(AtomicState{n0, l, 0}, c.value());
    }
  } else {
    const OverlapEngine engine(quad);
    for (const auto& target : basis.states(n0)) {
      if (target.l % 2 != 0 || target.l > 2 * k_max) continue;
      // k = 0 is R_{n0,0} itself: exactly the Kronecker delta.
      CompensatedSum<double> c(target == source ? 1.0 : 0.0);
      for (int k = std::max(1, target.l / 2); k <= k_max; ++k) {
        c += power[static_cast<std::size_t>(k)] * series_radial_integral(n0, k, target, engine) *
             std::sqrt(2.0 * target.l + 1.0) * theta_component(k, target.l);
      }
      add(target, c.value());
    }
  }
  detail::finalize(d);
  return d;
}

/// Closed-form decomposition: C_0 on the source and C_{+-2} on (n0, l0 +- 2)
/// where those states exist.
[[nodiscard]] inline SpectralDecomposition closed_form_decomposition(
    const AtomicState& source, const Strain& strain,
    ClosedFormFamily family = ClosedFormFamily::by_initial_l) {
  const auto cf = closed_form_coefficients(source, strain, family);
  SpectralDecomposition d;
  d.source = source;
  d.strain = strain;
  d.method = DecompositionMethod::closed_form;
  if (cf.minus2_in_range) d.entries.push_back({AtomicState{source.n, source.l - 2, 0}, cf.c_minus2.at(strain)});
  d.entries.push_back({source, cf.c0.at(strain)});
  if (cf.plus2_in_range) d.entries.push_back({AtomicState{source.n, source.l + 2, 0}, cf.c_plus2.at(strain)});
  if (cf.large_response_warning) {
    d.warnings.emplace_back("|slope| * S_p > 0.1: first-order coefficients are outside their validity range");
  }
  detail::finalize(d);
  return d;
}

/// Slope estimate from overlaps at several strains.
struct NumericLinearResponse {
  AtomicState target;
  AtomicState source;
  double zeroth_order{0.0};
  std::vector<double> strains;
  std::vector<double> ratios;  // (C(S) - zeroth_order) / S
  double fitted_slope{0.0};    // least squares through the origin
  double relative_spread{0.0}; // (max - min) / |mean| of the ratios

  [[nodiscard]] LinearResponseCoefficient coefficient() const { return {fitted_slope, zeroth_order}; }
};

[[nodiscard]] inline NumericLinearResponse numeric_linear_response(const AtomicState& target,
                                                                   const AtomicState& source,
                                                                   const std::vector<double>& strains,
                                                                   const QuadratureSpec& quad = {}) {
  if (strains.empty()) throw DomainError("numeric_linear_response: need at least one strain");
  const OverlapEngine engine(quad);
  NumericLinearResponse out;
  out.target = target;
  out.source = source;
  out.zeroth_order = (target == source) ? 1.0 : 0.0;
  out.strains = strains;
  CompensatedSum<double> sxy;
  CompensatedSum<double> sxx;
  for (const double s : strains) {
    if (s == 0.0) throw DomainError("numeric_linear_response: strains must be nonzero");
    const double delta = engine.overlap(target, source, Strain::make(s)) - out.zeroth_order;
    out.ratios.push_back(delta / s);
    sxy += s * delta;
    sxx += s * s;
  }
  out.fitted_slope = sxy.value() / sxx.value();
  const auto [lo, hi] = std::minmax_element(out.ratios.begin(), out.ratios.end());
  CompensatedSum<double> mean;
  for (const double r : out.ratios) mean += r / static_cast<double>(out.ratios.size());
  out.relative_spread = (*hi - *lo) / std::abs(mean.value());
  return out;
}

// ---------------------------------------------------------------------------
// Laguerre shift identity
// ---------------------------------------------------------------------------

struct ShiftIdentityEvaluation {
  double lhs{0.0};
  double rhs{0.0};
  int terms{0};

  [[nodiscard]] double relative_difference() const {
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::numeric_limits<double>::min());
  }
};

/// Both sides of
///   L^1_{n0-1}(A x) = e^{-(1-A) x} sum_k ((1-A) x)^k / k! L^{1+k}_{n0-1}(x),  x = 2r/n0.
/// The sum stops once a bound on the next term (after the k-th factor has
/// started shrinking) falls below truncation_tol relative to the running sum.
[[nodiscard]] inline ShiftIdentityEvaluation laguerre_shift_identity_check(int n0, double a_factor,
                                                                           double r,
                                                                           double truncation_tol = 1e-17) {
  if (n0 < 1) throw DomainError("laguerre_shift_identity_check: n0 must be >= 1");
  if (r < 0.0) throw DomainError("laguerre_shift_identity_check: r must be >= 0");
  const double x = 2.0 * r / n0;
  const double y = (1.0 - a_factor) * x;
  ShiftIdentityEvaluation out;
  out.lhs = laguerre(n0 - 1, 1, a_factor * x);

  CompensatedSum<double> sum;
  double factor = 1.0;  // y^k / k!
  constexpr int max_terms = 2000;
  for (int k = 0; k < max_terms; ++k) {
    if (k > 0) factor *= y / k;
    const double term = factor * laguerre(n0 - 1, 1 + k, x);
    sum += term;
    out.terms = k + 1;
    if (factor == 0.0) break;
    // |L_m^a(x)| <= C(m+a, m) e^{x/2} bounds every remaining term
    const double log_bound = std::log(std::abs(factor)) + std::lgamma(n0 + k + 1.0) - std::lgamma(n0) -
                             std::lgamma(k + 2.0) + 0.5 * x;
    if (k > std::abs(y) && std::exp(log_bound) <= truncation_tol * std::abs(sum.value())) break;
  }
  out.rhs = std::exp(-y) * sum.value();
  return out;
}

}  // namespace gravatom
