#pragma once

// Two-level Rabi dynamics with a small detuning.
//
// Everything is evaluated in terms of x = Δ/ω and the elapsed number of Rabi
// cycles tau = ω t / 2π. The integer part of tau is removed exactly before any
// trigonometric call, so completed cycles land on phase zero with no rounding.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gravatom/constants.hpp"
#include "gravatom/errors.hpp"
#include "gravatom/transitions.hpp"

namespace gravatom {

struct RabiConfig {
  double omega{1.0};     // rad/s, > 0
  double detuning{0.0};  // rad/s

  void validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("RabiConfig: omega must be > 0");
    if (!std::isfinite(detuning)) throw DomainError("RabiConfig: detuning must be finite");
  }

  [[nodiscard]] double ratio() const { return detuning / omega; }
  [[nodiscard]] double cycles_at(double t) const { return t * omega / (2.0 * constants::pi); }
};

/// |Δ| / ω above which the small-detuning form is flagged.
inline constexpr double small_detuning_limit = 0.1;

/// Crossover between the direct difference and the rearranged form in
/// deviation_exact_direct comparisons; both forms are exact algebra.
inline constexpr double cancellation_threshold = 1e-6;

namespace detail {

struct ReducedPhase {
  double sin_phase;   // sin(pi tau) up to a sign shared with cos_phase
  double cos_phase;
  double sin_double;  // sin(2 pi tau)
  double cos_double;
};

inline ReducedPhase reduce(double cycles) {
  const double frac = cycles - std::nearbyint(cycles);  // exact
  const double a = constants::pi * frac;
  return {std::sin(a), std::cos(a), std::sin(2.0 * a), std::cos(2.0 * a)};
}

inline void check_time(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
}

// phi (sqrt(1+x^2) - 1), written without cancellation. phi = pi tau.
inline double phase_excess(double x, double cycles) {
  const double s = std::sqrt(1.0 + x * x);
  return constants::pi * cycles * (x * x / (1.0 + s));
}

}  // namespace detail

/// P_e at `cycles` Rabi cycles: sin^2(phi sqrt(1+x^2)) / (1+x^2), phi = pi tau.
[[nodiscard]] inline double excited_probability_at_cycles(const RabiConfig& cfg, double cycles) {
  cfg.validate();
  detail::check_time(cycles);
  const double x = cfg.ratio();
  const auto p = detail::reduce(cycles);
  const double eps = detail::phase_excess(x, cycles);
  const double sn = p.sin_phase * std::cos(eps) + p.cos_phase * std::sin(eps);
  return sn * sn / (1.0 + x * x);
}

/// P_e(Δ, t) = ω^2/(Δ^2+ω^2) sin^2(sqrt(Δ^2+ω^2) t / 2).
[[nodiscard]] inline double excited_probability(const RabiConfig& cfg, double t) {
  detail::check_time(t);
  return excited_probability_at_cycles(cfg, cfg.cycles_at(t));
}

/// δP = P_e(0) - P_e(Δ) at `cycles` Rabi cycles, via
///   δP = -sin(ε) sin(2φ + ε) + sin^2(φ + ε) x^2/(1+x^2),  ε = φ (sqrt(1+x^2) - 1),
/// which has no cancellation for small x.
[[nodiscard]] inline double deviation_exact_at_cycles(const RabiConfig& cfg, double cycles) {
  cfg.validate();
  detail::check_time(cycles);
  const double x = cfg.ratio();
  if (x == 0.0) return 0.0;
  const auto p = detail::reduce(cycles);
  const double eps = detail::phase_excess(x, cycles);
  const double se = std::sin(eps);
  const double ce = std::cos(eps);
  const double sin_2phi_eps = p.sin_double * ce + p.cos_double * se;
  const double sin_phi_eps = p.sin_phase * ce + p.cos_phase * se;
  return -se * sin_2phi_eps + sin_phi_eps * sin_phi_eps * (x * x / (1.0 + x * x));
}

[[nodiscard]] inline double deviation_exact(const RabiConfig& cfg, double t) {
  detail::check_time(t);
  return deviation_exact_at_cycles(cfg, cfg.cycles_at(t));
}

/// Literal difference sin^2(ωt/2) - P_e(Δ,t); loses ~x^2 relative accuracy
/// for small x. Kept for cross-checks above cancellation_threshold.
[[nodiscard]] inline double deviation_exact_direct(const RabiConfig& cfg, double t) {
  cfg.validate();
  detail::check_time(t);
  const double x = cfg.ratio();
  const double s0 = std::sin(0.5 * cfg.omega * t);
  const double s1 = std::sin(0.5 * std::sqrt(cfg.detuning * cfg.detuning + cfg.omega * cfg.omega) * t);
  return s0 * s0 - s1 * s1 / (1.0 + x * x);
}

/// sin^2(ωt/2) [1 - ω^2/(Δ^2+ω^2) cos^2(Δ^2 t / 4ω)].
[[nodiscard]] inline double deviation_small_detuning_at_cycles(const RabiConfig& cfg, double cycles) {
  cfg.validate();
  detail::check_time(cycles);
  const double x = cfg.ratio();
  const auto p = detail::reduce(cycles);
  // Δ^2 t / 4ω = pi tau x^2 / 2, and 1 - cos^2(a)/(1+x^2) = (x^2 + sin^2(a)) / (1+x^2)
  const double slow = std::sin(0.5 * constants::pi * cycles * x * x);
  const double bracket = (x * x + slow * slow) / (1.0 + x * x);
  return p.sin_phase * p.sin_phase * bracket;
}

[[nodiscard]] inline double deviation_small_detuning(const RabiConfig& cfg, double t) {
  detail::check_time(t);
  return deviation_small_detuning_at_cycles(cfg, cfg.cycles_at(t));
}

/// True when |Δ| <= 0.1 ω, the range where the small-detuning form is meant to apply.
[[nodiscard]] inline bool small_detuning_regime(const RabiConfig& cfg) {
  return std::abs(cfg.ratio()) <= small_detuning_limit;
}

/// (Δ^2 t / 4ω)^2.
[[nodiscard]] inline double deviation_short_time(const RabiConfig& cfg, double t) {
  cfg.validate();
  detail::check_time(t);
  const double v = cfg.detuning * cfg.detuning * t / (4.0 * cfg.omega);
  return v * v;
}

/// (N pi Δ^2 / 2ω^2)^2.
[[nodiscard]] inline double deviation_at_cycles(const RabiConfig& cfg, double n_cycles) {
  cfg.validate();
  if (!(n_cycles >= 0.0)) throw DomainError("deviation_at_cycles: cycle count must be >= 0");
  const double x = cfg.ratio();
  const double v = n_cycles * constants::pi * x * x / 2.0;
  return v * v;
}

enum class RabiRegime { short_time, long_time };

inline const char* to_string(RabiRegime r) {
  return r == RabiRegime::short_time ? "short_time" : "long_time";
}

/// short_time when t < pi ω / Δ^2, i.e. tau < 1 / (2 x^2).
[[nodiscard]] inline RabiRegime regime_at_cycles(const RabiConfig& cfg, double cycles) {
  const double x = cfg.ratio();
  if (x == 0.0) return RabiRegime::short_time;
  return cycles < 0.5 / (x * x) ? RabiRegime::short_time : RabiRegime::long_time;
}

struct DeviationSeries {
  std::string abscissa_name{"N"};
  std::vector<double> abscissa;
  std::vector<double> exact;
  std::vector<double> small_detuning;
  std::vector<double> short_time;  // completed-cycle form when abscissa is N
  std::vector<RabiRegime> regime_flags;
  RabiConfig config;
};

/// Series over completed cycles N; `short_time` holds (N pi Δ^2 / 2ω^2)^2.
[[nodiscard]] inline DeviationSeries cycle_series(const RabiConfig& cfg, const std::vector<double>& cycles) {
  cfg.validate();
  DeviationSeries out;
  out.config = cfg;
  out.abscissa_name = "N";
  for (const double n : cycles) {
    out.abscissa.push_back(n);
    out.exact.push_back(deviation_exact_at_cycles(cfg, n));
    out.small_detuning.push_back(deviation_small_detuning_at_cycles(cfg, n));
    out.short_time.push_back(deviation_at_cycles(cfg, n));
    out.regime_flags.push_back(regime_at_cycles(cfg, n));
  }
  return out;
}

/// Series over times t (s).
[[nodiscard]] inline DeviationSeries time_series(const RabiConfig& cfg, const std::vector<double>& times) {
  cfg.validate();
  DeviationSeries out;
  out.config = cfg;
  out.abscissa_name = "t";
  for (const double t : times) {
    out.abscissa.push_back(t);
    out.exact.push_back(deviation_exact(cfg, t));
    out.small_detuning.push_back(deviation_small_detuning(cfg, t));
    out.short_time.push_back(deviation_short_time(cfg, t));
    out.regime_flags.push_back(regime_at_cycles(cfg, cfg.cycles_at(t)));
  }
  return out;
}

/// Completed-cycle deviation N = 1..n_cycles_max for a transition detuned by strain.
[[nodiscard]] inline DeviationSeries figure2_series(const TransitionSpec& transition, const Strain& strain,
                                                    double omega, int n_cycles_max) {
  if (n_cycles_max < 0) throw DomainError("figure2_series: cycle count must be >= 0");
  const auto det = transition_detuning(transition, strain);
  const RabiConfig cfg{omega, detuning_rad_per_s(det, strain)};
  std::vector<double> cycles;
  cycles.reserve(static_cast<std::size_t>(n_cycles_max));
  for (int n = 1; n <= n_cycles_max; ++n) cycles.push_back(n);
  return cycle_series(cfg, cycles);
}

/// Least-squares slope of log|y| against log x over points where both are positive.
[[nodiscard]] inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (!(x[i] > 0.0) || y[i] == 0.0) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return 0.0;
  const double denom = count * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (count * sxy - sx * sy) / denom;
}

}  // namespace gravatom
