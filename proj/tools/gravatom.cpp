// gravatom: command-line front end.
//
//   gravatom decompose --n 3 --l 0 --strain 1e-3 --method closed-form
//   gravatom detuning --lower 1s --upper 2p --strain 1e-20 --species hydrogen
//   gravatom rabi --omega 47kHz --detuning-from 50s:51p --strain 1e-20 --cycles 1e6
//   gravatom figure2 --cycles 1000
//   gravatom verify --suite table1
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
// 3 numerical non-convergence.

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gravatom/config.hpp"
#include "gravatom/distortion.hpp"
#include "gravatom/errors.hpp"
#include "gravatom/rabi.hpp"
#include "gravatom/table.hpp"
#include "gravatom/transitions.hpp"
#include "gravatom/verification.hpp"

namespace {

using namespace gravatom;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_convergence = 3;

struct OutputOptions {
  std::string format{"csv"};
  std::string output;
  bool stamp{false};
};

struct SpeciesOptions {
  std::string species{"hydrogen"};
  std::string defects_file;

  [[nodiscard]] DefectTable resolve() const {
    return config::resolve_species(
        species, defects_file.empty() ? std::nullopt : std::optional<std::filesystem::path>(defects_file));
  }
};

struct QuadratureOptions {
  int radial_nodes{200};
  int angular_nodes{64};
  std::string scheme{"gauss-laguerre"};
  double tolerance{1e-12};

  [[nodiscard]] QuadratureSpec spec() const {
    QuadratureSpec q;
    q.radial_node_count = radial_nodes;
    q.angular_node_count = angular_nodes;
    q.radial_scheme = scheme == "adaptive" ? RadialScheme::adaptive_panel : RadialScheme::gauss_laguerre_transformed;
    q.target_abs_tolerance = tolerance;
    q.validate();
    return q;
  }
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", o.output, "Output file (default stdout)");
  cmd->add_flag("--stamp", o.stamp, "Add a timestamp to the metadata header");
}

void add_species_options(CLI::App* cmd, SpeciesOptions& s) {
  cmd->add_option("--species", s.species, "Species profile (hydrogen, rb-example, or one from a config file)");
  cmd->add_option("--defects", s.defects_file, "Config file with species profiles");
}

void add_quadrature_options(CLI::App* cmd, QuadratureOptions& q) {
  cmd->add_option("--radial-nodes", q.radial_nodes, "Radial Gauss-Laguerre nodes");
  cmd->add_option("--angular-nodes", q.angular_nodes, "Initial angular Gauss-Legendre nodes");
  cmd->add_option("--scheme", q.scheme, "Radial scheme")->check(CLI::IsMember({"gauss-laguerre", "adaptive"}));
  cmd->add_option("--tolerance", q.tolerance, "Absolute tolerance for convergence checks");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(Table table, const OutputOptions& o) {
  if (o.stamp) table.meta("timestamp", utc_timestamp());
  std::ostringstream ss;
  if (o.format == "json") {
    write_json(ss, table);
  } else {
    write_csv(ss, table);
  }
  if (o.output.empty()) {
    std::cout << ss.str();
    std::cout.flush();
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + o.output + "'");
  out << ss.str();
}

// ---------------------------------------------------------------------------

struct DecomposeArgs {
  int n{1};
  int l{0};
  double strain{0.0};
  std::string method{"closed-form"};
  int k_max{3};
  std::string radial_factor{"factorial"};
  std::string family{"by-initial-l"};
  int delta_n{4};
  int l_max{10};
  QuadratureOptions quad;
  OutputOptions out;
};

int cmd_decompose(const DecomposeArgs& a) {
  const AtomicState source = AtomicState::make(a.n, a.l);
  const Strain strain = Strain::make(a.strain);
  const BasisTruncation basis{a.delta_n, a.l_max};

  SpectralDecomposition d;
  std::optional<ClosedFormCoefficients> cf;
  Table t;
  if (a.method == "closed-form") {
    const auto family = a.family == "general" ? ClosedFormFamily::general : ClosedFormFamily::by_initial_l;
    d = closed_form_decomposition(source, strain, family);
    cf = closed_form_coefficients(source, strain, family);
    t.meta("closed_form_family", a.family);
  } else if (a.method == "series") {
    const auto radial = a.radial_factor == "quadrature" ? SeriesRadialFactor::quadrature : SeriesRadialFactor::factorial;
    d = series_decomposition(source, strain, a.k_max, radial, a.quad.spec(), basis);
    t.meta("radial_factor", to_string(radial));
  } else {
    d = numeric_decomposition(source, strain, a.quad.spec(), basis);
  }

  t.columns = {{"n", ""}, {"l", ""}, {"m", ""}, {"coefficient", ""}, {"response_slope", ""}};
  t.meta("method", a.method);
  t.meta("source", to_string(source));
  t.meta("strain", format_double(strain.s_p));
  if (a.method == "series") t.meta("k_max", std::to_string(d.k_max));
  if (a.method != "closed-form") {
    const auto q = a.quad.spec();
    t.meta("radial_scheme", a.quad.scheme);
    t.meta("radial_nodes", std::to_string(q.radial_node_count));
    t.meta("angular_nodes", std::to_string(q.angular_node_count));
    t.meta("tolerance", format_double(q.target_abs_tolerance));
    t.meta("basis", "n0-" + std::to_string(basis.delta_n) + "..n0+" + std::to_string(basis.delta_n) +
                        ", l<=" + std::to_string(basis.l_max));
  }
  t.meta("norm_sum", format_double(d.norm_sum));
  if (d.direct_norm) t.meta("direct_norm", format_double(*d.direct_norm));
  if (d.tail_estimate) t.meta("tail_estimate", format_double(*d.tail_estimate));
  for (const auto& w : d.warnings) t.meta("warning", w);

  for (const auto& e : d.entries) {
    Cell slope = std::string();
    if (cf) {
      if (e.state == source) {
        slope = cf->c0.value_at_unit_strain;
      } else if (e.state.l == source.l + 2) {
        slope = cf->c_plus2.value_at_unit_strain;
      } else {
        slope = cf->c_minus2.value_at_unit_strain;
      }
    } else if (strain.s_p != 0.0) {
      slope = (e.coefficient - (e.state == source ? 1.0 : 0.0)) / strain.s_p;
    }
    t.add_row({std::int64_t{e.state.n}, std::int64_t{e.state.l}, std::int64_t{e.state.m}, e.coefficient, slope});
  }
  emit(std::move(t), a.out);
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct DetuningArgs {
  std::string lower{"1s"};
  std::string upper{"2p"};
  double strain{0.0};
  std::optional<std::string> frequency;
  SpeciesOptions species;
  OutputOptions out;
};

int cmd_detuning(const DetuningArgs& a) {
  const DefectTable defects = a.species.resolve();
  const auto spec = TransitionSpec::make(config::parse_state(a.lower), config::parse_state(a.upper), defects);
  const Strain strain = Strain::make(a.strain);
  const auto det = transition_detuning(spec, strain);
  const double reference_slope =
      transition_detuning(TransitionSpec::make(AtomicState{1, 0, 0}, AtomicState{2, 1, 0})).slope;

  Table t;
  t.columns = {{"lower", ""},
               {"upper", ""},
               {"lower_energy", "Hartree"},
               {"upper_energy", "Hartree"},
               {"slope", "Hartree"},
               {"delta", "Hartree"},
               {"delta_angular", "rad/s"},
               {"lower_shift_slope", "Hartree"},
               {"upper_shift_slope", "Hartree"},
               {"ratio_to_1s2p_hydrogen", ""},
               {"reference_ratio", ""},
               {"energy_model", ""}};
  if (a.frequency) t.columns.push_back({"wavelength_change", "m"});
  t.meta("strain", format_double(strain.s_p));
  t.meta("species", defects.species);

  std::vector<Cell> row{to_string(spec.lower),
                        to_string(spec.upper),
                        spec.lower_energy,
                        spec.upper_energy,
                        det.slope,
                        det.at_strain.value_or(0.0),
                        detuning_rad_per_s(det, strain),
                        det.per_level_shift_slopes.first,
                        det.per_level_shift_slopes.second,
                        std::abs(det.slope / reference_slope),
                        1e5,
                        det.energy_model};
  if (a.frequency) {
    const double hz = config::parse_cyclic_frequency(*a.frequency);
    t.meta("transition_frequency_hz", format_double(hz));
    row.emplace_back(wavelength_shift(hz, det, strain));
  }
  t.add_row(std::move(row));
  emit(std::move(t), a.out);
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct RabiArgs {
  std::string omega{"47kHz"};
  std::optional<std::string> detuning;
  std::optional<std::string> detuning_from;
  double strain{0.0};
  double cycles{1000.0};
  std::optional<std::string> t_max;
  int points{200};
  SpeciesOptions species;
  OutputOptions out;
};

/// Distinct integers spread logarithmically over [1, n_max].
std::vector<double> log_spaced_cycles(double n_max, int points) {
  std::vector<double> out;
  if (n_max < 1.0) return out;
  const double top = std::floor(n_max);
  if (top <= points) {
    for (double n = 1.0; n <= top; n += 1.0) out.push_back(n);
    return out;
  }
  std::set<double> seen;
  for (int i = 0; i < points; ++i) {
    const double v = std::round(std::pow(top, static_cast<double>(i) / (points - 1)));
    seen.insert(std::min(v, top));
  }
  return {seen.begin(), seen.end()};
}

int cmd_rabi(const RabiArgs& a) {
  if (a.detuning.has_value() == a.detuning_from.has_value()) {
    throw DomainError("rabi: give exactly one of --detuning or --detuning-from");
  }
  if (a.points < 2) throw DomainError("rabi: --points must be >= 2");
  const double omega = config::parse_angular_frequency(a.omega);
  Table t;
  double delta = 0.0;
  if (a.detuning) {
    delta = config::parse_detuning(*a.detuning);
  } else {
    const auto colon = a.detuning_from->find(':');
    if (colon == std::string::npos) throw DomainError("rabi: --detuning-from expects lower:upper, e.g. 50s:51p");
    const DefectTable defects = a.species.resolve();
    const auto spec = TransitionSpec::make(config::parse_state(a.detuning_from->substr(0, colon)),
                                           config::parse_state(a.detuning_from->substr(colon + 1)), defects);
    const Strain strain = Strain::make(a.strain);
    delta = detuning_rad_per_s(transition_detuning(spec, strain), strain);
    t.meta("transition", to_string(spec.lower) + "->" + to_string(spec.upper));
    t.meta("strain", format_double(strain.s_p));
    t.meta("energy_model", spec.energy_model);
  }
  const RabiConfig cfg{omega, delta};
  cfg.validate();
  t.meta("omega_rad_per_s", format_double(omega));
  t.meta("detuning_rad_per_s", format_double(delta));
  t.meta("detuning_ratio", format_double(cfg.ratio()));
  if (!small_detuning_regime(cfg)) t.meta("warning", "|detuning| > 0.1 omega: small-detuning column is outside its range");

  DeviationSeries series;
  if (a.t_max) {
    const double t_max = config::parse_time(*a.t_max);
    if (!(t_max > 0.0)) throw DomainError("rabi: --t-max must be > 0");
    std::vector<double> times;
    for (int i = 1; i <= a.points; ++i) times.push_back(t_max * i / a.points);
    series = time_series(cfg, times);
    t.columns = {{"t", "s"}, {"deltaP_exact", ""}, {"deltaP_small_detuning", ""}, {"deltaP_short_time", ""},
                 {"regime", ""}};
  } else {
    if (!(a.cycles >= 0.0)) throw DomainError("rabi: --cycles must be >= 0");
    series = cycle_series(cfg, log_spaced_cycles(a.cycles, a.points));
    t.columns = {{"N", ""}, {"deltaP_exact", ""}, {"deltaP_small_detuning", ""}, {"deltaP_cycles", ""},
                 {"regime", ""}};
  }
  t.meta("loglog_slope", format_double(loglog_slope(series.abscissa, series.exact)));
  for (std::size_t i = 0; i < series.abscissa.size(); ++i) {
    t.add_row({series.abscissa[i], series.exact[i], series.small_detuning[i], series.short_time[i],
               std::string(to_string(series.regime_flags[i]))});
  }
  emit(std::move(t), a.out);
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct Figure2Args {
  int cycles{1000};
  std::string omega{"47kHz"};
  double strain{1e-20};
  std::string lower{"50s"};
  std::string upper{"51p"};
  SpeciesOptions species{"rb-example", ""};
  OutputOptions out;
};

int cmd_figure2(const Figure2Args& a) {
  const DefectTable defects = a.species.resolve();
  const auto spec = TransitionSpec::make(config::parse_state(a.lower), config::parse_state(a.upper), defects);
  const Strain strain = Strain::make(a.strain);
  const double omega = config::parse_angular_frequency(a.omega);
  const auto series = figure2_series(spec, strain, omega, a.cycles);

  Table t;
  t.columns = {{"N", ""}, {"deltaP", ""}, {"regime", ""}};
  t.meta("transition", to_string(spec.lower) + "->" + to_string(spec.upper));
  t.meta("energy_model", spec.energy_model);
  t.meta("strain", format_double(strain.s_p));
  t.meta("omega_rad_per_s", format_double(omega));
  t.meta("detuning_rad_per_s", format_double(detuning_rad_per_s(transition_detuning(spec, strain), strain)));
  for (std::size_t i = 0; i < series.abscissa.size(); ++i) {
    t.add_row({static_cast<std::int64_t>(series.abscissa[i]), series.short_time[i],
               std::string(to_string(series.regime_flags[i]))});
  }
  emit(std::move(t), a.out);
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite{"all"};
  QuadratureOptions quad;
  SpeciesOptions species{"rb-example", ""};
  OutputOptions out;
};

int cmd_verify(const VerifyArgs& a) {
  const auto q = a.quad.spec();
  const DefectTable defects = a.species.resolve();
  const std::vector<std::pair<std::string, std::function<verify::Report()>>> suites{
      {"table1", [] { return verify::table1(); }},
      {"basis", [&] { return verify::basis(q); }},
      {"series", [] { return verify::series_closed_form(); }},
      {"linearity", [&] { return verify::linearity(q); }},
      {"parseval", [&] { return verify::parseval(q); }},
      {"detuning", [] { return verify::detuning(); }},
      {"rabi", [] { return verify::rabi(); }},
      {"figure2", [&] { return verify::figure2(defects); }},
      {"claims", [&] { return verify::claims_report(defects); }},
  };
  verify::Report report;
  for (const auto& [name, run] : suites) {
    if (a.suite != "all" && a.suite != name) continue;
    auto part = run();
    report.insert(report.end(), part.begin(), part.end());
  }

  Table t;
  t.columns = {{"suite", ""}, {"check", ""}, {"status", ""}, {"measured", ""}, {"threshold", ""}, {"detail", ""}};
  t.meta("suite", a.suite);
  for (const auto& c : report) {
    std::string detail = c.detail;
    for (auto& ch : detail) {
      if (ch == ',') ch = ';';
    }
    t.add_row({c.suite, c.name, std::string(c.passed ? "PASS" : "FAIL"), c.measured, c.threshold, detail});
  }
  emit(std::move(t), a.out);
  return verify::all_passed(report) ? exit_ok : exit_verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gravatom: strain-distorted hydrogenic atoms"};
  app.require_subcommand(1);

  DecomposeArgs dec;
  auto* c_dec = app.add_subcommand("decompose", "Spectral decomposition of a distorted state");
  c_dec->add_option("--n", dec.n, "Principal quantum number")->required();
  c_dec->add_option("--l", dec.l, "Orbital quantum number")->required();
  c_dec->add_option("--strain", dec.strain, "Strain amplitude S_p");
  c_dec->add_option("--method", dec.method, "Decomposition route")
      ->check(CLI::IsMember({"closed-form", "series", "numeric"}));
  c_dec->add_option("--k-max", dec.k_max, "Series truncation order");
  c_dec->add_option("--radial-factor", dec.radial_factor, "Series radial factor")
      ->check(CLI::IsMember({"factorial", "quadrature"}));
  c_dec->add_option("--family", dec.family, "Closed-form family")
      ->check(CLI::IsMember({"by-initial-l", "general"}));
  c_dec->add_option("--delta-n", dec.delta_n, "Basis shells either side of n0");
  c_dec->add_option("--l-max", dec.l_max, "Basis l cutoff");
  add_quadrature_options(c_dec, dec.quad);
  add_output_options(c_dec, dec.out);

  DetuningArgs det;
  auto* c_det = app.add_subcommand("detuning", "Strain-induced transition detuning");
  c_det->add_option("--lower", det.lower, "Lower state, e.g. 1s");
  c_det->add_option("--upper", det.upper, "Upper state, e.g. 2p");
  c_det->add_option("--strain", det.strain, "Strain amplitude S_p");
  c_det->add_option("--frequency", det.frequency, "Transition frequency with unit, for the wavelength change");
  add_species_options(c_det, det.species);
  add_output_options(c_det, det.out);

  RabiArgs rabi;
  auto* c_rabi = app.add_subcommand("rabi", "Rabi-cycle deviation series");
  c_rabi->add_option("--omega", rabi.omega, "Rabi frequency with unit (47kHz is cyclic, rad/s is angular)");
  c_rabi->add_option("--detuning", rabi.detuning, "Detuning with unit (Hz, kHz, rad/s, eV, Hartree)");
  c_rabi->add_option("--detuning-from", rabi.detuning_from, "Transition lower:upper, e.g. 50s:51p");
  c_rabi->add_option("--strain", rabi.strain, "Strain amplitude for --detuning-from");
  c_rabi->add_option("--cycles", rabi.cycles, "Largest completed-cycle count");
  c_rabi->add_option("--t-max", rabi.t_max, "Emit a time series up to this time instead");
  c_rabi->add_option("--points", rabi.points, "Number of samples");
  add_species_options(c_rabi, rabi.species);
  add_output_options(c_rabi, rabi.out);

  Figure2Args fig;
  auto* c_fig = app.add_subcommand("figure2", "Completed-cycle deviation curve N = 1..cycles");
  c_fig->add_option("--cycles", fig.cycles, "Largest cycle count");
  c_fig->add_option("--omega", fig.omega, "Rabi frequency with unit");
  c_fig->add_option("--strain", fig.strain, "Strain amplitude S_p");
  c_fig->add_option("--lower", fig.lower, "Lower state");
  c_fig->add_option("--upper", fig.upper, "Upper state");
  add_species_options(c_fig, fig.species);
  add_output_options(c_fig, fig.out);

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Run self-check suites");
  c_ver->add_option("--suite", ver.suite, "Suite to run")
      ->check(CLI::IsMember({"all", "table1", "basis", "series", "linearity", "parseval", "detuning", "rabi",
                             "figure2", "claims"}));
  add_quadrature_options(c_ver, ver.quad);
  add_species_options(c_ver, ver.species);
  add_output_options(c_ver, ver.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  try {
    if (c_dec->parsed()) return cmd_decompose(dec);
    if (c_det->parsed()) return cmd_detuning(det);
    if (c_rabi->parsed()) return cmd_rabi(rabi);
    if (c_fig->parsed()) return cmd_figure2(fig);
    if (c_ver->parsed()) return cmd_verify(ver);
  } catch (const ConvergenceError& e) {
    std::cerr << "gravatom: no convergence: " << e.what() << '\n';
    return exit_convergence;
  } catch (const DomainError& e) {
    std::cerr << "gravatom: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "gravatom: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
