#pragma once

// Parsing for the command-line layer: state shorthand ("50s"), quantities with
// unit suffixes, and species profiles from `key = value` files.
//
// Profile file layout:
//
//   # comment
//   [rb-example]
//   label = Rubidium (example defects)
//   defect.s = 3.1311804
//   defect.p = 2.6548849
//
// Keys before any section header belong to the section named by the caller.
// GRAVATOM_CONFIG holds a ':'-separated list of files or directories (a
// directory contributes its gravatom.cfg) searched before the built-in profiles.

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gravatom/atomic_state.hpp"
#include "gravatom/constants.hpp"
#include "gravatom/errors.hpp"
#include "gravatom/transitions.hpp"

namespace gravatom::config {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

/// Strict double parse of the whole string.
inline double parse_number(std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    throw DomainError("not a number: '" + s + "'");
  }
  return v;
}

inline int orbital_from_letter(char c) {
  constexpr std::string_view letters = "spdfghiklmnoqrtuv";
  const auto pos = letters.find(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (pos == std::string_view::npos) throw DomainError(std::string("unknown orbital letter '") + c + "'");
  return static_cast<int>(pos);
}

/// "50s" -> (50, 0, 0), "110g" -> (110, 4, 0). Unknown letters are errors.
inline AtomicState parse_state(std::string_view token) {
  const std::string s = trim(token);
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == 0 || i + 1 != s.size()) throw DomainError("bad state token '" + s + "' (expected e.g. 50s)");
  const int n = std::stoi(s.substr(0, i));
  return AtomicState::make(n, orbital_from_letter(s[i]));
}

namespace detail {

inline std::pair<double, std::string> split_quantity(std::string_view text) {
  const std::string s = trim(text);
  std::size_t i = 0;
  // longest numeric prefix accepted by from_chars
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc()) throw DomainError("bad quantity '" + s + "'");
  i = static_cast<std::size_t>(res.ptr - s.data());
  return {v, lower(trim(s.substr(i)))};
}

}  // namespace detail

/// Angular frequency in rad/s. Hz/kHz/MHz/GHz are cyclic; rad/s is angular.
/// A unit is required.
inline double parse_angular_frequency(std::string_view text) {
  const auto [v, unit] = detail::split_quantity(text);
  const double two_pi = 2.0 * constants::pi;
  if (unit == "hz") return two_pi * v;
  if (unit == "khz") return two_pi * v * 1e3;
  if (unit == "mhz") return two_pi * v * 1e6;
  if (unit == "ghz") return two_pi * v * 1e9;
  if (unit == "rad/s") return v;
  if (unit == "krad/s") return v * 1e3;
  throw DomainError("frequency '" + std::string(text) + "' needs a unit: Hz, kHz, MHz, GHz or rad/s");
}

/// Cyclic frequency in Hz.
inline double parse_cyclic_frequency(std::string_view text) {
  return parse_angular_frequency(text) / (2.0 * constants::pi);
}

/// Detuning as an angular frequency (rad/s). Accepts frequency units and the
/// energy units eV and Hartree (converted through hbar).
inline double parse_detuning(std::string_view text) {
  const auto [v, unit] = detail::split_quantity(text);
  if (unit == "ev") return v / constants::hartree_ev * constants::hartree_rad_per_s;
  if (unit == "hartree" || unit == "ha") return v * constants::hartree_rad_per_s;
  return parse_angular_frequency(text);
}

/// Energy in Hartree from eV or Hartree.
inline double parse_energy(std::string_view text) {
  const auto [v, unit] = detail::split_quantity(text);
  if (unit == "ev") return v / constants::hartree_ev;
  if (unit == "hartree" || unit == "ha" || unit.empty()) return v;
  throw DomainError("energy '" + std::string(text) + "' needs a unit: eV or Hartree");
}

/// Time in seconds; bare numbers are seconds.
inline double parse_time(std::string_view text) {
  const auto [v, unit] = detail::split_quantity(text);
  if (unit.empty() || unit == "s") return v;
  if (unit == "ms") return v * 1e-3;
  if (unit == "us") return v * 1e-6;
  if (unit == "ns") return v * 1e-9;
  throw DomainError("time '" + std::string(text) + "' needs a unit: s, ms, us or ns");
}

/// Parsed profile file: section name -> (key -> value).
using Profiles = std::map<std::string, std::map<std::string, std::string>>;

inline Profiles parse_profiles(std::istream& in, const std::string& default_section = "default") {
  Profiles out;
  std::string section = default_section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw DomainError("config line " + std::to_string(lineno) + ": unterminated section");
      section = lower(trim(std::string_view(t).substr(1, t.size() - 2)));
      out[section];
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    out[section][lower(trim(std::string_view(t).substr(0, eq)))] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

inline Profiles load_profiles(const std::filesystem::path& path, const std::string& default_section) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path.string() + "'");
  return parse_profiles(in, default_section);
}

/// Bundled profiles. The rubidium values are the n-independent leading terms of
/// the s, p1/2, d3/2 and f quantum defects, supplied as example data.
inline const char* builtin_profiles_text() {
  return "[hydrogen]\n"
         "label = Hydrogen (no quantum defects)\n"
         "[rb-example]\n"
         "label = Rubidium (example quantum defects)\n"
         "defect.s = 3.1311804\n"
         "defect.p = 2.6548849\n"
         "defect.d = 1.3480917\n"
         "defect.f = 0.0165192\n";
}

inline DefectTable defect_table_from_section(const std::string& species,
                                             const std::map<std::string, std::string>& kv) {
  DefectTable table;
  table.species = species;
  for (const auto& [key, value] : kv) {
    if (key.rfind("defect.", 0) != 0) continue;
    const std::string which = key.substr(7);
    int l = 0;
    if (which.size() == 1 && std::isalpha(static_cast<unsigned char>(which[0]))) {
      l = orbital_from_letter(which[0]);
    } else {
      l = static_cast<int>(parse_number(which));
    }
    const double d = parse_number(value);
    if (d < 0.0) throw DomainError("quantum defect for " + key + " must be >= 0");
    table.defects[l] = d;
  }
  return table;
}

/// Files named by GRAVATOM_CONFIG, in order.
inline std::vector<std::filesystem::path> env_search_path() {
  std::vector<std::filesystem::path> out;
  const char* env = std::getenv("GRAVATOM_CONFIG");
  if (env == nullptr) return out;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ':')) {
    if (item.empty()) continue;
    std::filesystem::path p(item);
    if (std::filesystem::is_directory(p)) p /= "gravatom.cfg";
    if (std::filesystem::exists(p)) out.push_back(p);
  }
  return out;
}

/// Resolves a species: explicit file, then GRAVATOM_CONFIG entries, then the
/// built-in profiles. "rb" is an alias for the bundled "rb-example".
inline DefectTable resolve_species(const std::string& species_in,
                                   const std::optional<std::filesystem::path>& file = std::nullopt) {
  const std::string species = lower(species_in);
  std::vector<Profiles> sources;
  if (file) sources.push_back(load_profiles(*file, species));
  for (const auto& p : env_search_path()) sources.push_back(load_profiles(p, species));
  {
    std::istringstream builtin(builtin_profiles_text());
    sources.push_back(parse_profiles(builtin));
  }
  for (const auto& profiles : sources) {
    if (const auto it = profiles.find(species); it != profiles.end()) {
      return defect_table_from_section(species, it->second);
    }
  }
  if (species == "rb") return resolve_species("rb-example", std::nullopt);
  throw DomainError("unknown species '" + species_in + "'");
}

}  // namespace gravatom::config
