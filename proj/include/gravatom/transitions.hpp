#pragma once

// Level energies with quantum defects, strain-shifted energies, and the
// transition detuning they induce. Energies are in Hartree.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "gravatom/atomic_state.hpp"
#include "gravatom/constants.hpp"
#include "gravatom/distortion.hpp"
#include "gravatom/errors.hpp"

namespace gravatom {

/// Quantum defects delta_l per orbital angular momentum. Empty means hydrogen.
struct DefectTable {
  std::string species{"hydrogen"};
  std::map<int, double> defects;

  [[nodiscard]] double defect(int l) const {
    const auto it = defects.find(l);
    return it == defects.end() ? 0.0 : it->second;
  }

  [[nodiscard]] bool hydrogenic() const { return defects.empty(); }

  /// "hydrogenic" or "quantum_defect(<species>)"; recorded alongside results.
  [[nodiscard]] std::string energy_model() const {
    return hydrogenic() ? std::string("hydrogenic") : "quantum_defect(" + species + ")";
  }
};

/// E = -1 / (2 (n - delta_l)^2).
[[nodiscard]] inline double level_energy(const AtomicState& state, const DefectTable& defects = {}) {
  if (!state.valid()) throw DomainError("level_energy: invalid state " + to_string(state));
  const double n_eff = state.n - defects.defect(state.l);
  if (!(n_eff > 0.0)) {
    throw DomainError("level_energy: quantum defect too large for " + to_string(state));
  }
  return -0.5 / (n_eff * n_eff);
}

/// (n+l+1)^3 / ((2l-1)(2l+3)); the level-shift weight. Negative for l = 0.
[[nodiscard]] inline double level_shift_weight(const AtomicState& s) {
  const double a = s.n + s.l + 1.0;
  return a * a * a / ((2.0 * s.l - 1.0) * (2.0 * s.l + 3.0));
}

struct ShiftedEnergy {
  double unperturbed{0.0};
  /// C0^2 E_{n,l} + C+2^2 E_{n,l+2} + C-2^2 E_{n,l-2}
  double full{0.0};
  /// dE'/dS to leading order: -2 E (n+l+1)^3 / ((2l-1)(2l+3))
  double leading_slope{0.0};
  /// full - E - leading_slope * S, the second-order remainder
  double kappa{0.0};
};

/// Uses the general-l0 closed-form family for every l, which is the family the
/// leading-order slope is derived from.
[[nodiscard]] inline ShiftedEnergy shifted_energy(const AtomicState& state, const Strain& strain,
                                                  const DefectTable& defects = {}) {
  const auto cf = closed_form_coefficients(state, strain, ClosedFormFamily::general);
  ShiftedEnergy out;
  out.unperturbed = level_energy(state, defects);
  const double c0 = cf.c0.at(strain);
  double full = c0 * c0 * out.unperturbed;
  if (cf.plus2_in_range) {
    const double c = cf.c_plus2.at(strain);
    full += c * c * level_energy(AtomicState{state.n, state.l + 2, 0}, defects);
  }
  if (cf.minus2_in_range) {
    const double c = cf.c_minus2.at(strain);
    full += c * c * level_energy(AtomicState{state.n, state.l - 2, 0}, defects);
  }
  out.full = full;
  out.leading_slope = -2.0 * out.unperturbed * level_shift_weight(state);
  out.kappa = out.full - out.unperturbed - out.leading_slope * strain.s_p;
  return out;
}

/// Lower/upper level pair with their energies.
struct TransitionSpec {
  AtomicState lower;
  AtomicState upper;
  double lower_energy{0.0};
  double upper_energy{0.0};
  double delta_e{0.0};
  std::string energy_model{"hydrogenic"};

  static TransitionSpec make(const AtomicState& lower, const AtomicState& upper,
                             const DefectTable& defects = {}) {
    TransitionSpec t;
    t.lower = lower;
    t.upper = upper;
    t.lower_energy = level_energy(lower, defects);
    t.upper_energy = level_energy(upper, defects);
    t.delta_e = t.upper_energy - t.lower_energy;
    t.energy_model = defects.energy_model();
    if (!(t.upper_energy > t.lower_energy)) {
      throw DomainError("transition " + to_string(lower) + " -> " + to_string(upper) +
                        ": upper level must lie above lower level");
    }
    return t;
  }
};

struct DetuningResult {
  double slope{0.0};               // d(delta)/dS, Hartree
  std::optional<double> at_strain; // slope * S
  std::pair<double, double> per_level_shift_slopes{0.0, 0.0};  // (lower, upper)
  std::string energy_model;
};

/// delta = -2 S [E2 w(n2,l2) - E1 w(n1,l1)], w = level_shift_weight.
[[nodiscard]] inline DetuningResult transition_detuning(const TransitionSpec& t,
                                                        std::optional<Strain> strain = std::nullopt) {
  DetuningResult out;
  const double lower = -2.0 * t.lower_energy * level_shift_weight(t.lower);
  const double upper = -2.0 * t.upper_energy * level_shift_weight(t.upper);
  out.per_level_shift_slopes = {lower, upper};
  out.slope = upper - lower;
  if (strain) out.at_strain = out.slope * strain->s_p;
  out.energy_model = t.energy_model;
  return out;
}

/// Δλ = (c / ν^2) (δ / h), with δ = slope * S converted from Hartree. The
/// sign follows δ.
[[nodiscard]] inline double wavelength_shift(double transition_frequency_hz, const DetuningResult& detuning,
                                             const Strain& strain) {
  if (!(transition_frequency_hz > 0.0)) throw DomainError("wavelength_shift: frequency must be > 0");
  const double delta_hz = detuning.slope * strain.s_p * constants::hartree_hz;
  return constants::speed_of_light / (transition_frequency_hz * transition_frequency_hz) * delta_hz;
}

/// Angular detuning Δ = δ / hbar in rad/s for a given strain.
[[nodiscard]] inline double detuning_rad_per_s(const DetuningResult& detuning, const Strain& strain) {
  return detuning.slope * strain.s_p * constants::hartree_rad_per_s;
}

}  // namespace gravatom
