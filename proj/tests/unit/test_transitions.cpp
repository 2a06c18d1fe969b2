#include <gtest/gtest.h>

#include <cmath>

#include "gravatom/transitions.hpp"

namespace {

using namespace gravatom;

TEST(LevelEnergy, HydrogenAndDefects) {
  EXPECT_DOUBLE_EQ(level_energy({1, 0, 0}), -0.5);
  EXPECT_DOUBLE_EQ(level_energy({2, 1, 0}), -0.125);
  DefectTable t;
  t.species = "x";
  t.defects[0] = 0.5;
  EXPECT_DOUBLE_EQ(level_energy({3, 0, 0}, t), -0.5 / 6.25);
  EXPECT_DOUBLE_EQ(level_energy({3, 1, 0}, t), -0.5 / 9.0);
  t.defects[0] = 3.2;
  EXPECT_THROW((void)level_energy({3, 0, 0}, t), DomainError);
  EXPECT_EQ(t.energy_model(), "quantum_defect(x)");
  EXPECT_EQ(DefectTable{}.energy_model(), "hydrogenic");
}

TEST(Detuning, HydrogenLymanAlphaSlope) {
  const auto t = TransitionSpec::make({1, 0, 0}, {2, 1, 0});
  const auto d = transition_detuning(t, Strain{1e-20});
  EXPECT_NEAR(d.slope, 88.0 / 15.0, 1e-14);
  EXPECT_NEAR(d.per_level_shift_slopes.first, -8.0 / 3.0, 1e-15);
  EXPECT_NEAR(d.per_level_shift_slopes.second, 3.2, 1e-15);
  EXPECT_NEAR(*d.at_strain, 88.0 / 15.0 * 1e-20, 1e-34);
  EXPECT_EQ(transition_detuning(t, Strain{0.0}).at_strain.value(), 0.0);
  EXPECT_FALSE(transition_detuning(t).at_strain.has_value());
}

TEST(Detuning, RejectsInvertedTransition) {
  EXPECT_THROW((void)TransitionSpec::make({2, 1, 0}, {1, 0, 0}), DomainError);
}

TEST(Detuning, UnitConversions) {
  const auto t = TransitionSpec::make({1, 0, 0}, {2, 1, 0});
  const auto d = transition_detuning(t);
  const Strain s{1e-20};
  const double want = 88.0 / 15.0 * 1e-20 * constants::hartree_joule / constants::hbar;
  EXPECT_NEAR(detuning_rad_per_s(d, s) / want, 1.0, 1e-15);
  const double nu = 2.466e15;
  const double dl = wavelength_shift(nu, d, s);
  EXPECT_NEAR(dl / (constants::speed_of_light / (nu * nu) * 88.0 / 15.0 * 1e-20 * constants::hartree_hz), 1.0, 1e-15);
  EXPECT_THROW((void)wavelength_shift(0.0, d, s), DomainError);
}

TEST(ShiftedEnergy, RemainderIsSecondOrder) {
  for (const AtomicState st : {AtomicState{3, 0, 0}, AtomicState{4, 1, 0}, AtomicState{5, 2, 0}}) {
    const auto a = shifted_energy(st, Strain{1e-3});
    const auto b = shifted_energy(st, Strain{1e-4});
    EXPECT_NEAR(a.leading_slope, -2.0 * a.unperturbed * level_shift_weight(st), 1e-15);
    EXPECT_NEAR((a.kappa / 1e-6) / (b.kappa / 1e-8), 1.0, 1e-6) << to_string(st);
  }
}

TEST(LevelShiftWeight, Values) {
  EXPECT_DOUBLE_EQ(level_shift_weight({1, 0, 0}), -8.0 / 3.0);
  EXPECT_DOUBLE_EQ(level_shift_weight({2, 1, 0}), 64.0 / 5.0);
}

}  // namespace
