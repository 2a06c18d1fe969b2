#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <vector>

#include "gravatom/rabi.hpp"

namespace {

using namespace gravatom;
using Big = boost::multiprecision::cpp_bin_float_100;

// Literal P_e(0) - P_e(Δ) in 100-digit arithmetic.
double deviation_oracle(double x, double cycles) {
  const Big pi = boost::multiprecision::default_ops::get_constant_pi<Big::backend_type>();
  const Big phi = pi * Big(cycles);
  const Big xx = Big(x) * Big(x);
  const Big s0 = sin(phi);
  const Big s1 = sin(phi * sqrt(1 + xx));
  return static_cast<double>(s0 * s0 - s1 * s1 / (1 + xx));
}

TEST(Rabi, SingleCycleGolden) {
  // x = 0.1, one Rabi period
  EXPECT_NEAR(deviation_exact_at_cycles({1.0, 0.1}, 1.0), -2.43063341390975e-4, 1e-17);
}

TEST(Rabi, RearrangedFormMatchesOracle) {
  for (const double x : {0.5, 1e-1, 1e-3, 1e-6, 1e-9, 1e-12}) {
    for (const double cycles : {0.25, 1.0, 3.7, 10.0, 1234.5, 1e6}) {
      const double ref = deviation_oracle(x, cycles);
      const double got = deviation_exact_at_cycles({1.0, x}, cycles);
      // The phase excess eps is itself only known to a few ulp; its rounding
      // sets an absolute floor once eps is large.
      const double eps = constants::pi * cycles * x * x / (1.0 + std::sqrt(1.0 + x * x));
      EXPECT_NEAR(got, ref, 1e-10 * std::abs(ref) + 1e-15 * eps + 1e-300) << "x=" << x << " cycles=" << cycles;
    }
  }
}

TEST(Rabi, BothSidesOfCancellationThreshold) {
  // Above the threshold the literal difference is still accurate and agrees.
  for (const double x : {1e-1, 3e-2, 1e-2}) {
    ASSERT_GT(x, cancellation_threshold);
    for (const double t : {0.3, 2.0, 7.5}) {
      const RabiConfig cfg{1.0, x};
      EXPECT_NEAR(deviation_exact(cfg, t), deviation_exact_direct(cfg, t),
                  1e-10 * std::abs(deviation_exact(cfg, t)));
    }
  }
  // Below it the literal form has lost all digits while the rearranged one matches the oracle.
  const double x = 1e-8;
  ASSERT_LT(x, cancellation_threshold);
  const double ref = deviation_oracle(x, 2.3);
  EXPECT_NEAR(deviation_exact({2.0 * constants::pi, x * 2.0 * constants::pi}, 2.3), ref, 1e-10 * std::abs(ref));
}

TEST(Rabi, ProbabilityBoundsAndZeroDetuning) {
  for (const double x : {0.0, 1e-9, 1e-3, 0.3, 2.0}) {
    for (double t = 0.0; t < 40.0; t += 0.37) {
      const RabiConfig cfg{1.0, x};
      const double p = excited_probability(cfg, t);
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
      if (x == 0.0) EXPECT_EQ(deviation_exact(cfg, t), 0.0);
    }
  }
}

TEST(Rabi, CompletedCyclesFollowQuadraticLaw) {
  const RabiConfig cfg{1.0, 1e-3};
  for (const double n : {1.0, 100.0, 10000.0}) {
    const double approx = deviation_at_cycles(cfg, n);
    EXPECT_NEAR(-deviation_exact_at_cycles(cfg, n) / approx, 1.0, 0.01);
  }
  EXPECT_NEAR(deviation_at_cycles(cfg, 2.0), std::pow(constants::pi * 1e-6, 2), 1e-25);
}

TEST(Rabi, ShortTimeFormula) {
  const RabiConfig cfg{2.0, 0.01};
  EXPECT_DOUBLE_EQ(deviation_short_time(cfg, 3.0), std::pow(1e-4 * 3.0 / 8.0, 2));
}

TEST(Rabi, RegimeFlags) {
  const RabiConfig cfg{1.0, 1e-2};
  EXPECT_EQ(regime_at_cycles(cfg, 4999.0), RabiRegime::short_time);
  EXPECT_EQ(regime_at_cycles(cfg, 5001.0), RabiRegime::long_time);
  EXPECT_TRUE(small_detuning_regime(cfg));
  EXPECT_FALSE(small_detuning_regime({1.0, 0.2}));
}

TEST(Rabi, InvalidInput) {
  EXPECT_THROW((void)deviation_exact({0.0, 1.0}, 1.0), DomainError);
  EXPECT_THROW((void)deviation_exact({1.0, 1.0}, -1.0), DomainError);
  EXPECT_THROW((void)deviation_at_cycles({1.0, 1.0}, -1.0), DomainError);
}

TEST(Rabi, SeriesAndSlope) {
  const auto s = cycle_series({1.0, 1e-5}, {1, 2, 4, 8, 16});
  ASSERT_EQ(s.abscissa.size(), 5u);
  EXPECT_NEAR(loglog_slope(s.abscissa, s.short_time), 2.0, 1e-12);
  EXPECT_NEAR(loglog_slope(s.abscissa, s.exact), 2.0, 1e-6);
  const auto ts = time_series({1.0, 1e-2}, {1.0, 2.0});
  EXPECT_EQ(ts.abscissa_name, "t");
  EXPECT_EQ(loglog_slope({1.0}, {1.0}), 0.0);
}

TEST(Rabi, Figure2SeriesLength) {
  const auto t = TransitionSpec::make({1, 0, 0}, {2, 1, 0});
  EXPECT_EQ(figure2_series(t, Strain{1e-20}, 1e5, 0).abscissa.size(), 0u);
  const auto s = figure2_series(t, Strain{1e-20}, 1e5, 50);
  ASSERT_EQ(s.abscissa.size(), 50u);
  EXPECT_EQ(s.abscissa.front(), 1.0);
  EXPECT_EQ(s.abscissa.back(), 50.0);
}

}  // namespace
