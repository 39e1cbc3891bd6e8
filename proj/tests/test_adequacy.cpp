/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#include "heatmargin/adequacy.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "support/oracles.hpp"

using heatmargin::CapacityDistribution;
using heatmargin::eeu;
using heatmargin::lole;
using heatmargin::margin_distribution;
using heatmargin::peak_distribution;
using heatmargin::peak_summary;
using heatmargin::Rng;

namespace {

CapacityDistribution two_point(double lo, double hi, double p_lo,
                               double step) {
  return CapacityDistribution::from_points(step, {{lo, p_lo},
                                                  {hi, 1.0 - p_lo}});
}

TEST(Margin, PointMassDifference) {
  const auto z = margin_distribution(
      CapacityDistribution::point_mass(100.0, 10.0),
      CapacityDistribution::point_mass(90.0, 10.0));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_DOUBLE_EQ(z.value_at(0), 10.0);
}

TEST(Margin, SpreadGenerationFixedDemand) {
  const auto z = margin_distribution(
      two_point(0.0, 100.0, 0.1, 10.0),
      CapacityDistribution::point_mass(50.0, 10.0));
  ASSERT_EQ(z.size(), 11u);
  EXPECT_DOUBLE_EQ(z.value_at(0), -50.0);
  EXPECT_DOUBLE_EQ(z.probability_at(0), 0.1);
  EXPECT_DOUBLE_EQ(z.value_at(10), 50.0);
  EXPECT_DOUBLE_EQ(z.probability_at(10), 0.9);
}

TEST(Margin, ZeroDemandIsIdentity) {
  Rng rng(7);
  const auto gen = testsupport::random_distribution(rng, 10.0);
  const auto z = margin_distribution(
      gen, CapacityDistribution::point_mass(0.0, 10.0));
  EXPECT_TRUE(z == gen);
}

TEST(Lole, AlwaysPositiveMarginGivesZero) {
  EXPECT_DOUBLE_EQ(lole(CapacityDistribution::point_mass(10.0, 10.0), 3360),
                   0.0);
}

TEST(Lole, ScalesShortfallProbability) {
  EXPECT_DOUBLE_EQ(lole(two_point(-100.0, 100.0, 0.25, 10.0), 4), 1.0);
  EXPECT_NEAR(lole(two_point(-10.0, 10.0, 0.001, 10.0), 3360), 3.36, 1e-12);
}

TEST(Lole, ZeroMarginCountsAsAdequate) {
  EXPECT_DOUBLE_EQ(lole(CapacityDistribution::point_mass(0.0, 10.0), 100),
                   0.0);
  EXPECT_DOUBLE_EQ(lole(two_point(-10.0, 0.0, 0.5, 10.0), 100), 50.0);
}

TEST(Eeu, WeightsShortfallDepth) {
  EXPECT_DOUBLE_EQ(eeu(CapacityDistribution::point_mass(-10.0, 10.0), 1),
                   10.0);
  EXPECT_DOUBLE_EQ(eeu(two_point(-100.0, 100.0, 0.25, 10.0), 4), 100.0);
  EXPECT_DOUBLE_EQ(eeu(CapacityDistribution::point_mass(50.0, 10.0), 9000),
                   0.0);
}

TEST(Eeu, MatchesBruteForceExpectation) {
  Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = testsupport::random_distribution(rng, 10.0, 20, 40.0);
    long double want = 0.0L;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d.value_at(i) < 0.0) {
        want += -d.value_at(i) * static_cast<long double>(
                                     d.probability_at(i));
      }
    }
    EXPECT_NEAR(eeu(d, 3360), static_cast<double>(want) * 3360.0,
                1e-9 * (static_cast<double>(want) * 3360.0 + 1.0));
  }
}

TEST(LoleEeu, HomogeneousInPeriodCount) {
  Rng rng(61);
  const auto z = testsupport::random_distribution(rng, 10.0, 16, 30.0);
  EXPECT_DOUBLE_EQ(lole(z, 3360), 2.0 * lole(z, 1680));
  EXPECT_DOUBLE_EQ(eeu(z, 3360), 2.0 * eeu(z, 1680));
  EXPECT_GE(lole(z, 3360), 0.0);
  EXPECT_GE(eeu(z, 3360), 0.0);
}

TEST(LoleEeu, RequirePositivePeriods) {
  const auto z = CapacityDistribution::point_mass(0.0, 10.0);
  EXPECT_THROW(lole(z, 0), heatmargin::InvalidParams);
  EXPECT_THROW(eeu(z, -5), heatmargin::InvalidParams);
  EXPECT_THROW(peak_distribution(z, 0), heatmargin::InvalidParams);
}

TEST(Peak, SinglePeriodIsIdentity) {
  Rng rng(67);
  const auto d = testsupport::random_distribution(rng, 10.0);
  const auto p = peak_distribution(d, 1);
  ASSERT_EQ(p.size(), d.size());
  ASSERT_EQ(p.origin_index(), d.origin_index());
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_NEAR(p.probability_at(i), d.probability_at(i), 1e-12);
  }
}

TEST(Peak, UniformPairSquares) {
  const auto d = two_point(1.0, 2.0, 0.5, 1.0);
  const auto p = peak_distribution(d, 2);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p.probability_at(0), 0.25, 1e-15);
  EXPECT_NEAR(p.probability_at(1), 0.75, 1e-15);
}

TEST(Peak, DegeneratePointMass) {
  const auto d = CapacityDistribution::point_mass(700.0, 10.0);
  for (const int n : {1, 24, 3360}) {
    const auto p = peak_distribution(d, n);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_DOUBLE_EQ(p.value_at(0), 700.0);
    EXPECT_DOUBLE_EQ(p.probability_at(0), 1.0);
  }
}

TEST(Peak, PointwisePowerLaw) {
  Rng rng(71);
  for (const int n : {2, 24, 336}) {
    const auto d = testsupport::random_distribution(rng, 10.0, 15, 100.0);
    const auto p = peak_distribution(d, n);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double x = d.value_at(i);
      EXPECT_NEAR(p.cdf(x), std::pow(d.cdf(x), n), 1e-12);
    }
  }
}

TEST(Peak, StochasticDominanceInHorizon) {
  Rng rng(73);
  const auto d = testsupport::random_distribution(rng, 10.0, 20, 80.0);
  double prev_q95 = -1e300;
  const std::vector<int> horizons = {1, 24, 336, 3360};
  for (std::size_t k = 0; k < horizons.size(); ++k) {
    const auto p = peak_distribution(d, horizons[k]);
    if (k > 0) {
      const auto prev = peak_distribution(d, horizons[k - 1]);
      for (std::size_t i = 0; i < d.size(); ++i) {
        const double x = d.value_at(i);
        EXPECT_LE(p.cdf(x), prev.cdf(x) + 1e-12);
      }
    }
    const double q95 = p.quantile(0.95);
    EXPECT_GE(q95, prev_q95);
    prev_q95 = q95;
  }
}

TEST(Peak, MassStaysNormalized) {
  Rng rng(79);
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = testsupport::random_distribution(rng, 10.0);
    const auto p = peak_distribution(d, 3360);
    EXPECT_NEAR(static_cast<double>(p.mass()), 1.0, 1e-9);
  }
}

TEST(PeakSummary, PointMassHasZeroSpread) {
  const auto s = peak_summary(CapacityDistribution::point_mass(900.0, 10.0));
  EXPECT_DOUBLE_EQ(s.q95_mw, 900.0);
  EXPECT_DOUBLE_EQ(s.iqr_mw, 0.0);
}

TEST(PeakSummary, UniformHundredPoints) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 100; ++i) pts.emplace_back(10.0 * i, 0.01);
  const auto s =
      peak_summary(CapacityDistribution::from_points(10.0, pts));
  EXPECT_DOUBLE_EQ(s.q95_mw, 940.0);
  EXPECT_DOUBLE_EQ(s.iqr_mw, 500.0);
}

TEST(PeakSummary, IqrNeverNegative) {
  Rng rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = testsupport::random_distribution(rng, 10.0);
    EXPECT_GE(peak_summary(d).iqr_mw, 0.0);
  }
}

TEST(MonteCarlo, MarginTailAndDepthAgree) {
  Rng rng(97);
  for (int trial = 0; trial < 3; ++trial) {
    const auto gen = testsupport::random_distribution(rng, 10.0, 25, 60.0);
    const auto dem = testsupport::random_distribution(rng, 10.0, 25, 60.0);
    const auto z = margin_distribution(gen, dem);

    const double p_short = lole(z, 1);
    const double depth = eeu(z, 1);

    const int n = 200000;
    Rng sampler(1000 + static_cast<std::uint64_t>(trial));
    int shortfalls = 0;
    long double depth_sum = 0.0L, depth_sq = 0.0L;
    for (int i = 0; i < n; ++i) {
      const double margin = testsupport::sample_value(gen, sampler) -
                            testsupport::sample_value(dem, sampler);
      if (margin < 0.0) ++shortfalls;
      const double v = margin < 0.0 ? -margin : 0.0;
      depth_sum += v;
      depth_sq += static_cast<long double>(v) * v;
    }
    const double p_hat = static_cast<double>(shortfalls) / n;
    const double se_p = std::sqrt(std::max(p_hat * (1.0 - p_hat), 1e-12) / n);
    EXPECT_NEAR(p_hat, p_short, 3.0 * se_p + 1e-9);

    const double mean_hat = static_cast<double>(depth_sum) / n;
    const double var_hat =
        static_cast<double>(depth_sq) / n - mean_hat * mean_hat;
    const double se_mean = std::sqrt(std::max(var_hat, 1e-12) / n);
    EXPECT_NEAR(mean_hat, depth, 3.0 * se_mean + 1e-9);
  }
}

}  // namespace
