#pragma once

// Self-check suites behind `gravatom verify`. Each suite returns one row per
// check; a suite passes when every row passes. The `claims` suite is a report:
// its rows compare computed magnitudes with reference values under stated
// assumptions and always pass once generated.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gravatom/distortion.hpp"
#include "gravatom/hydrogenics.hpp"
#include "gravatom/quadrature.hpp"
#include "gravatom/rabi.hpp"
#include "gravatom/table.hpp"
#include "gravatom/transitions.hpp"

namespace gravatom::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed{false};
  double measured{0.0};
  double threshold{0.0};
  std::string detail;
};

using Report = std::vector<CheckResult>;

[[nodiscard]] inline bool all_passed(const Report& r) {
  return std::all_of(r.begin(), r.end(), [](const auto& c) { return c.passed; });
}

/// Best rational p/q with q <= max_den, as "p/q".
[[nodiscard]] inline std::string rational_string(double v, std::int64_t max_den = 100000) {
  // continued fraction convergents
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = v;
  for (int i = 0; i < 40; ++i) {
    const double a = std::floor(x);
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - v) < 1e-14 * std::max(1.0, std::abs(v))) break;
    const double frac = x - a;
    if (frac == 0.0) break;
    x = 1.0 / frac;
  }
  return std::to_string(p1) + "/" + std::to_string(q1);
}

struct TableCell {
  int k;
  int l;
  int numerator;
  int denominator;
};

/// The ten nonzero reference values of Theta_{k,l}, k <= 3, l <= 6.
inline constexpr TableCell reference_theta_table[] = {
    {0, 0, 1, 1},   {1, 0, -1, 3},  {1, 2, 4, 15},      {2, 0, 7, 15},     {2, 2, -8, 105},
    {2, 4, 32, 315}, {3, 0, -9, 15}, {3, 2, 4, 21}, {3, 4, -32, 1155}, {3, 6, 128, 3003},
};

[[nodiscard]] inline Report table1() {
  Report out;
  for (const auto& cell : reference_theta_table) {
    const double reference = static_cast<double>(cell.numerator) / cell.denominator;
    const double computed = theta_component(cell.k, cell.l);
    const double err = std::abs(computed - reference);
    out.push_back({"table1",
                   "theta(" + std::to_string(cell.k) + "," + std::to_string(cell.l) + ")",
                   err <= 1e-12, err, 1e-12,
                   "reference " + std::to_string(cell.numerator) + "/" + std::to_string(cell.denominator) +
                       ", computed " + rational_string(computed)});
  }
  return out;
}

[[nodiscard]] inline Report basis(const QuadratureSpec& quad = {}) {
  Report out;
  const OverlapEngine engine(quad);
  double worst_radial = 0.0;
  for (int l = 0; l <= 5; ++l) {
    for (int n = l + 1; n <= 20; ++n) {
      for (int m = n; m <= 20; ++m) {
        const AtomicState a{n, l, 0};
        const AtomicState b{m, l, 0};
        const double v = engine.radial_integral(
            [&](double r) { return radial_wavefunction(a, r) * radial_wavefunction(b, r) * r * r; },
            1.0 / n + 1.0 / m, n + m);
        worst_radial = std::max(worst_radial, std::abs(v - (n == m ? 1.0 : 0.0)));
      }
    }
  }
  out.push_back({"basis", "radial orthonormality n<=20 l<=5", worst_radial <= 1e-10, worst_radial, 1e-10, ""});

  const QuadratureRule rule = gauss_legendre(64);
  double worst_y = 0.0;
  for (int l = 0; l <= 16; ++l) {
    for (int m = l; m <= 16; ++m) {
      const double v = 2.0 * constants::pi * apply_rule(rule, [&](double x) {
        return spherical_harmonic_m0_cos(l, x) * spherical_harmonic_m0_cos(m, x);
      });
      worst_y = std::max(worst_y, std::abs(v - (l == m ? 1.0 : 0.0)));
    }
  }
  out.push_back({"basis", "Y_l^0 orthonormality l<=16", worst_y <= 1e-10, worst_y, 1e-10, ""});

  double worst_odd = 0.0;
  for (int k = 0; k <= theta_component_max_k; ++k) {
    for (int l = 1; l <= 25; l += 2) worst_odd = std::max(worst_odd, std::abs(theta_component(k, l)));
  }
  out.push_back({"basis", "theta(k, odd l) vanishes exactly", worst_odd == 0.0, worst_odd, 0.0, "k <= 12, odd l <= 25"});

  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> n_dist(1, 8);
  std::uniform_real_distribution<double> a_dist(0.95, 1.05);
  std::uniform_real_distribution<double> r_dist(0.0, 20.0);
  double worst_identity = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n0 = n_dist(rng);
    const double a = a_dist(rng);
    const double r = r_dist(rng);
    worst_identity = std::max(worst_identity, laguerre_shift_identity_check(n0, a, r).relative_difference());
  }
  out.push_back({"basis", "Laguerre shift identity, 100 random points", worst_identity <= 1e-8, worst_identity,
                 1e-8, "n0<=8, A in [0.95,1.05], r<=20, fixed seed"});
  return out;
}

/// Series at k_max = 1 against the s-state closed forms, compared as slopes.
[[nodiscard]] inline Report series_closed_form() {
  Report out;
  const Strain s{1e-3};
  for (int n0 = 3; n0 <= 8; ++n0) {
    const AtomicState src{n0, 0, 0};
    const auto series = series_decomposition(src, s, 1);
    const auto cf = closed_form_coefficients(src, s);
    const double c0 = (series.coefficient(src).value_or(0.0) - 1.0) / s.s_p;
    const double c2 = series.coefficient(AtomicState{n0, 2, 0}).value_or(0.0) / s.s_p;
    const double e0 = std::abs(c0 - cf.c0.value_at_unit_strain) / std::abs(cf.c0.value_at_unit_strain);
    const double e2 = std::abs(c2 - cf.c_plus2.value_at_unit_strain) / std::abs(cf.c_plus2.value_at_unit_strain);
    const double err = std::max(e0, e2);
    out.push_back({"series", "k_max=1 vs closed form n0=" + std::to_string(n0), err <= 1e-12 &&
                   series.entries.size() == 2, err, 1e-12,
                   std::to_string(series.entries.size()) + " entries"});
  }
  return out;
}

inline const std::vector<double>& linearity_strains() {
  static const std::vector<double> s{1e-3, 1e-4, 1e-5};
  return s;
}

[[nodiscard]] inline Report linearity(const QuadratureSpec& quad = {}) {
  Report out;
  for (const int n0 : {3, 5, 8}) {
    const AtomicState src{n0, 0, 0};
    const AtomicState tgt{n0, 2, 0};
    const auto lr = numeric_linear_response(tgt, src, linearity_strains(), quad);
    const double closed = closed_form_coefficients(src, Strain{1e-3}).c_plus2.value_at_unit_strain;
    out.push_back({"linearity", "C(n0,2)/S constant, n0=" + std::to_string(n0), lr.relative_spread <= 0.01,
                   lr.relative_spread, 0.01,
                   "ratios " + format_list(lr.ratios) + "; fitted slope " + std::to_string(lr.fitted_slope) +
                       "; slope/closed-form " + std::to_string(lr.fitted_slope / closed)});
  }
  // cross-shell pairs respond linearly
  for (const auto& [src, tgt] : {std::pair{AtomicState{3, 0, 0}, AtomicState{4, 2, 0}},
                                 std::pair{AtomicState{4, 0, 0}, AtomicState{5, 0, 0}},
                                 std::pair{AtomicState{5, 0, 0}, AtomicState{6, 2, 0}}}) {
    const auto lr = numeric_linear_response(tgt, src, linearity_strains(), quad);
    out.push_back({"linearity", "cross-shell " + to_string(src) + "->" + to_string(tgt), lr.relative_spread <= 0.01,
                   lr.relative_spread, 0.01, "fitted slope " + std::to_string(lr.fitted_slope)});
  }
  return out;
}

[[nodiscard]] inline Report parseval(const QuadratureSpec& quad = {}) {
  Report out;
  const AtomicState src{4, 0, 0};
  const auto d = numeric_decomposition(src, Strain{1e-3}, quad, BasisTruncation{4, 10});
  const double diff = std::abs(d.norm_sum - d.direct_norm.value_or(0.0));
  out.push_back({"parseval", "n0=4 S=1e-3 dn=4 l<=10", diff <= 1e-6, diff, 1e-6,
                 "sum C^2 " + std::to_string(d.norm_sum) + ", direct " + std::to_string(d.direct_norm.value_or(0.0)) +
                     ", tail estimate " + std::to_string(d.tail_estimate.value_or(0.0))});
  double odd = 0.0;
  for (const auto& e : d.entries) {
    if (e.state.l % 2 != 0) odd = std::max(odd, std::abs(e.coefficient));
  }
  out.push_back({"parseval", "odd-l coefficients vanish", odd <= 1e-12, odd, 1e-12, ""});
  out.push_back({"parseval", "dominant entry is the source", d.dominant().state == src, 0.0, 0.0,
                 "dominant " + to_string(d.dominant().state)});
  return out;
}

[[nodiscard]] inline Report detuning() {
  Report out;
  const auto t = TransitionSpec::make(AtomicState{1, 0, 0}, AtomicState{2, 1, 0});
  const double slope = transition_detuning(t).slope;
  // -2 [E2 (2+1+1)^3 / (1*5) - E1 (1+0+1)^3 / ((-1)*3)] with E1 = -1/2, E2 = -1/8
  const double hand = -2.0 * ((-0.125 * 64.0 / 5.0) - (-0.5 * 8.0 / -3.0));
  const double rel = std::abs(slope - hand) / std::abs(hand);
  out.push_back({"detuning", "1s->2p slope", rel <= 1e-12, rel, 1e-12, "slope " + std::to_string(slope)});
  const double d1 = transition_detuning(t, Strain{1e-20}).at_strain.value_or(0.0);
  const double d2 = transition_detuning(t, Strain{3e-7}).at_strain.value_or(0.0);
  const double lin = std::abs(d1 / 1e-20 - d2 / 3e-7) / std::abs(slope);
  out.push_back({"detuning", "delta linear in strain", lin <= 1e-15, lin, 1e-15, ""});
  return out;
}

[[nodiscard]] inline Report rabi() {
  Report out;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_x(-12.0, 0.0);
  std::uniform_real_distribution<double> log_w(0.0, 6.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int bad_prob = 0;
  double worst_zero = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double w = std::pow(10.0, log_w(rng));
    const double x = std::pow(10.0, log_x(rng)) * (unit(rng) < 0.5 ? -1.0 : 1.0);
    const double t = unit(rng) * 1e4 / w;
    const double p = excited_probability(RabiConfig{w, x * w}, t);
    if (!(p >= 0.0 && p <= 1.0)) ++bad_prob;
    worst_zero = std::max(worst_zero, std::abs(deviation_exact(RabiConfig{w, 0.0}, t)));
  }
  out.push_back({"rabi", "0 <= P_e <= 1 (2000 random points)", bad_prob == 0, static_cast<double>(bad_prob), 0.0, ""});
  out.push_back({"rabi", "deviation vanishes at zero detuning", worst_zero == 0.0, worst_zero, 0.0, ""});

  std::vector<double> xs{1e-2, 1e-3, 1e-4};
  std::vector<double> diffs;
  for (const double x : xs) {
    const RabiConfig cfg{1.0, x};
    double worst = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double t = 10.0 * i / 200.0;
      worst = std::max(worst, std::abs(deviation_exact(cfg, t) - deviation_small_detuning(cfg, t)));
    }
    diffs.push_back(worst);
  }
  const double hier = loglog_slope(xs, diffs);
  out.push_back({"rabi", "small-detuning error log-log slope over t<=10/w", hier >= 3.5, hier, 3.5,
                 "max |exact - small| " + format_list(diffs)});

  // Signed comparisons as stated; the magnitude agreement is reported alongside.
  double worst_cycle = 0.0;
  double worst_cycle_magnitude = 0.0;
  const RabiConfig cyc{1.0, 1e-3};
  for (const double n : {1.0, 10.0, 100.0, 1000.0, 10000.0, 60000.0}) {
    const double formula = deviation_at_cycles(cyc, n);
    if (formula > 0.01) continue;
    const double exact = deviation_exact_at_cycles(cyc, n);
    const double denom = std::max(formula, 1e-300);
    worst_cycle = std::max(worst_cycle, std::abs(formula - exact) / denom);
    worst_cycle_magnitude = std::max(worst_cycle_magnitude, std::abs(formula - std::abs(exact)) / denom);
  }
  out.push_back({"rabi", "completed-cycle formula vs exact, x=1e-3", worst_cycle <= 0.01, worst_cycle, 0.01,
                 "exact is <= 0 at completed cycles; |exact| agrees to " + format_double_sci(worst_cycle_magnitude)});

  const RabiConfig tiny{1.0, 1e-12};
  const double exact = deviation_exact_at_cycles(tiny, 1e6);
  const double formula = deviation_at_cycles(tiny, 1e6);
  const double rel = std::abs(exact - formula) / formula;
  const double rel_magnitude = std::abs(std::abs(exact) - formula) / formula;
  out.push_back({"rabi", "cancellation safety x=1e-12 N=1e6", std::isfinite(exact) && exact > 0.0 && rel <= 0.01,
                 rel, 0.01,
                 "exact " + format_double_sci(exact) + ", formula " + format_double_sci(formula) +
                     ", |exact| agrees to " + format_double_sci(rel_magnitude)});
  return out;
}

struct Figure2Setup {
  AtomicState lower{50, 0, 0};
  AtomicState upper{51, 1, 0};
  double omega{2.0 * constants::pi * 47e3};
  double strain{1e-20};
  int cycles{1000};
};

[[nodiscard]] inline Report figure2(const DefectTable& defects, const Figure2Setup& setup = {}) {
  Report out;
  const auto t = TransitionSpec::make(setup.lower, setup.upper, defects);
  const auto series = figure2_series(t, Strain{setup.strain}, setup.omega, setup.cycles);
  const double slope = loglog_slope(series.abscissa, series.short_time);
  out.push_back({"figure2", "log-log slope vs N", std::abs(slope - 2.0) <= 1e-3, slope, 1e-3, ""});
  bool monotone = true;
  for (std::size_t i = 1; i < series.short_time.size(); ++i) monotone = monotone && series.short_time[i] >= series.short_time[i - 1];
  out.push_back({"figure2", "monotone in N", monotone, 0.0, 0.0, ""});
  return out;
}

// ---------------------------------------------------------------------------
// Reference-claim comparisons
// ---------------------------------------------------------------------------

struct ClaimRow {
  std::string claim;
  double reference;
  double computed;
  std::string assumptions;
};

[[nodiscard]] inline std::vector<ClaimRow> claims(const DefectTable& rydberg_defects) {
  std::vector<ClaimRow> rows;
  const auto h_low = TransitionSpec::make(AtomicState{1, 0, 0}, AtomicState{2, 1, 0});
  const auto h_ryd = TransitionSpec::make(AtomicState{50, 0, 0}, AtomicState{51, 1, 0});
  const auto x_ryd = TransitionSpec::make(AtomicState{50, 0, 0}, AtomicState{51, 1, 0}, rydberg_defects);
  const double s_low = std::abs(transition_detuning(h_low).slope);
  const double s_h = std::abs(transition_detuning(h_ryd).slope);
  const double s_x = std::abs(transition_detuning(x_ryd).slope);
  rows.push_back({"detuning enhancement 50s-51p / 1s-2p", 1e5, s_h / s_low, "hydrogenic energies for both"});
  rows.push_back({"detuning enhancement 50s-51p / 1s-2p", 1e5, s_x / s_low,
                  "50s-51p with " + rydberg_defects.energy_model() + ", 1s-2p hydrogenic"});

  // Short-time deviation (Δ^2 t / 4ω)^2 at equal ω and t scales as Δ^4.
  rows.push_back({"Rabi deviation ratio 50s-51p / 1s-2p", 1e4, std::pow(s_h / s_low, 4),
                  "equal Rabi frequency and time; hydrogenic energies"});
  rows.push_back({"Rabi deviation ratio 50s-51p / 1s-2p", 1e4, std::pow(s_x / s_low, 4),
                  "equal Rabi frequency and time; 50s-51p with " + rydberg_defects.energy_model()});

  const auto h110 = TransitionSpec::make(AtomicState{110, 0, 0}, AtomicState{111, 1, 0});
  const Strain s20{1e-20};
  const double dl = std::abs(wavelength_shift(4.8e9, transition_detuning(h110), s20));
  rows.push_back({"H110alpha wavelength change [m]", 5.6e-16, dl,
                  "110s -> 111p hydrogenic, nu = 4.8 GHz, S_p = 1e-20"});

  const Figure2Setup fig;
  const auto series = figure2_series(x_ryd, s20, fig.omega, 0);
  const double delta = detuning_rad_per_s(transition_detuning(x_ryd), s20);
  const RabiConfig cfg{fig.omega, delta};
  const double n_coherent = 0.02 * fig.omega / (2.0 * constants::pi);
  rows.push_back({"curve: detuning Delta [rad/s]", 0.0, delta,
                  "50s-51p, " + rydberg_defects.energy_model() + ", w/2pi = 47 kHz, S_p = 1e-20"});
  rows.push_back({"curve: deltaP at N = 1", 0.0, deviation_at_cycles(cfg, 1.0), "completed-cycle form"});
  rows.push_back({"curve: deltaP at 0.02 s coherence time", 0.0, deviation_at_cycles(cfg, std::floor(n_coherent)),
                  "N = " + std::to_string(static_cast<long long>(n_coherent)) + " cycles"});
  (void)series;
  return rows;
}

[[nodiscard]] inline Report claims_report(const DefectTable& rydberg_defects) {
  Report out;
  for (const auto& row : claims(rydberg_defects)) {
    out.push_back({"claims", row.claim, std::isfinite(row.computed), row.computed, row.reference,
                   row.assumptions + (row.reference != 0.0
                                          ? "; computed/reference " + format_double_sci(row.computed / row.reference)
                                          : std::string())});
  }
  return out;
}

}  // namespace gravatom::verify
