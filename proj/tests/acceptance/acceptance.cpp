// Acceptance suite: one PASS/FAIL line per criterion, followed by the
// individual checks behind it. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gravatom/config.hpp"
#include "gravatom/distortion.hpp"
#include "gravatom/transitions.hpp"
#include "gravatom/verification.hpp"

namespace {

using namespace gravatom;

struct Outcome {
  bool passed{true};
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    passed = passed && ok;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }

  void absorb(const verify::Report& report) {
    for (const auto& c : report) {
      check(c.passed, c.suite + " / " + c.name + ": measured " + format_double_sci(c.measured, 4) + ", limit " +
                          format_double_sci(c.threshold, 4) + (c.detail.empty() ? "" : " (" + c.detail + ")"));
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void runtime_check(Outcome& o, double elapsed, double limit) {
  o.check(elapsed < limit, "runtime " + format_double_sci(elapsed, 3) + " s, limit " + format_double(limit) + " s");
}

Outcome criterion_table() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = verify::table1();
  double worst_odd = 0.0;
  for (int k = 0; k <= theta_component_max_k; ++k) {
    for (int l = 1; l <= 25; l += 2) worst_odd = std::max(worst_odd, std::abs(theta_component(k, l)));
  }
  const double elapsed = seconds_since(t0);
  o.check(report.size() == 10, "ten reference cells evaluated");
  o.absorb(report);
  o.check(worst_odd == 0.0, "odd l returns exact 0 (max " + format_double_sci(worst_odd, 3) + ")");
  runtime_check(o, elapsed, 1.0);
  return o;
}

Outcome criterion_basis() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = verify::basis();
  const double elapsed = seconds_since(t0);
  o.absorb(report);
  runtime_check(o, elapsed, 30.0);
  return o;
}

Outcome criterion_series() {
  Outcome o;
  o.absorb(verify::series_closed_form());
  return o;
}

// Fitted slopes of C(n0,2)/S from the first build, n0 = 3, 5, 8.
constexpr double frozen_slopes[] = {0.00026498039455600338, 0.00094058612544561211, 0.002575894736288734};

Outcome criterion_linearity() {
  Outcome o;
  const int shells[] = {3, 5, 8};
  for (int i = 0; i < 3; ++i) {
    const int n0 = shells[i];
    const auto lr = numeric_linear_response({n0, 2, 0}, {n0, 0, 0}, verify::linearity_strains());
    const double closed = closed_form_coefficients({n0, 0, 0}, Strain{1e-3}).c_plus2.value_at_unit_strain;
    o.check(lr.relative_spread <= 0.01, "n0=" + std::to_string(n0) + ": C/S spread " +
                                            format_double_sci(lr.relative_spread, 4) + ", limit 1e-2, ratios " +
                                            format_list(lr.ratios, 5));
    const double drift = std::abs(lr.fitted_slope - frozen_slopes[i]) / std::abs(frozen_slopes[i]);
    o.check(drift <= 1e-6, "n0=" + std::to_string(n0) + ": fitted slope " + format_double_sci(lr.fitted_slope, 10) +
                               " vs frozen, relative drift " + format_double_sci(drift, 3));
    o.lines.push_back("info n0=" + std::to_string(n0) + ": slope / closed-form slope = " +
                      format_double_sci(lr.fitted_slope / closed, 6) + " (reported, not gated)");
  }
  return o;
}

Outcome criterion_parseval() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = verify::parseval();
  const double elapsed = seconds_since(t0);
  o.absorb(report);
  runtime_check(o, elapsed, 60.0);
  return o;
}

Outcome criterion_detuning() {
  Outcome o;
  // Independent recomputation: delta / S = -2 [E_2p w(2,1) - E_1s w(1,0)],
  // w(n,l) = (n+l+1)^3 / ((2l-1)(2l+3)).
  const double e1 = -1.0 / 2.0;
  const double e2 = -1.0 / 8.0;
  const double w1 = 8.0 / (-1.0 * 3.0);
  const double w2 = 64.0 / (1.0 * 5.0);
  const double hand = -2.0 * (e2 * w2 - e1 * w1);
  const auto t = TransitionSpec::make({1, 0, 0}, {2, 1, 0});
  const double slope = transition_detuning(t).slope;
  const double rel = std::abs(slope - hand) / std::abs(hand);
  o.check(rel <= 1e-12, "1s->2p slope " + format_double(slope) + " vs hand " + format_double(hand) +
                            ", relative " + format_double_sci(rel, 3));
  bool linear = true;
  for (const double s : {1e-20, 1e-15, 1e-10, 1e-5, 1e-3}) {
    linear = linear && transition_detuning(t, Strain{s}).at_strain.value() == slope * s;
  }
  o.check(linear, "delta = slope * S exactly for S in {1e-20 .. 1e-3}");
  o.absorb(verify::detuning());
  return o;
}

Outcome criterion_rabi() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = verify::rabi();
  const double elapsed = seconds_since(t0);
  o.absorb(report);
  runtime_check(o, elapsed, 10.0);
  const RabiConfig cfg{1.0, 1e-3};
  o.lines.push_back("info short-time form at x=1e-3, t=10/w: " + format_double_sci(deviation_short_time(cfg, 10.0), 4) +
                    " vs exact " + format_double_sci(deviation_exact(cfg, 10.0), 4));
  return o;
}

Outcome criterion_figure() {
  Outcome o;
  const DefectTable defects = config::resolve_species("rb-example");
  o.absorb(verify::figure2(defects));
  const auto claims = verify::claims(defects);
  bool finite = !claims.empty();
  for (const auto& c : claims) {
    finite = finite && std::isfinite(c.computed);
    o.lines.push_back("info " + c.claim + ": computed " + format_double_sci(c.computed, 5) +
                      (c.reference != 0.0 ? ", reference " + format_double_sci(c.reference, 3) : std::string()) +
                      " [" + c.assumptions + "]");
  }
  o.check(finite, "comparison report generated (" + std::to_string(claims.size()) + " rows)");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"theta table reproduction", criterion_table},
      {"basis integrity", criterion_basis},
      {"closed-form/series equivalence", criterion_series},
      {"oracle linearity", criterion_linearity},
      {"Parseval consistency", criterion_parseval},
      {"detuning arithmetic", criterion_detuning},
      {"Rabi formula suite", criterion_rabi},
      {"figure2 curve shape and comparison report", criterion_figure},
  };
  int failed = 0;
  std::vector<std::string> details;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome o = criteria[i].second();
    failed += o.passed ? 0 : 1;
    std::printf("%s criterion %zu: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const auto& line : o.lines) details.push_back("  [" + std::to_string(i + 1) + "] " + line);
  }
  std::printf("%d of %zu criteria passed\n\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  for (const auto& line : details) std::printf("%s\n", line.c_str());
  return failed;
}
