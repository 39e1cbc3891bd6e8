/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#include "heatmargin/weather.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "support/oracles.hpp"

using heatmargin::composite_temperature;
using heatmargin::DailySeries;
using heatmargin::fit_temperature_regression;
using heatmargin::RegressionFit;
using heatmargin::TemperatureZone;
using heatmargin::ZonalTemperatures;
using testsupport::make_daily;

namespace {

constexpr heatmargin::Date kD0 = std::chrono::sys_days{
    std::chrono::year{2018} / std::chrono::November / 1};

TEST(Composite, EqualWeightsAverage) {
  const ZonalTemperatures z({{"A", 1.0, make_daily(kD0, {0.0, 0.0})},
                             {"B", 1.0, make_daily(kD0, {10.0, 10.0})}});
  const auto t = composite_temperature(z);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_DOUBLE_EQ(t[0].value, 5.0);
  EXPECT_DOUBLE_EQ(t[1].value, 5.0);
}

TEST(Composite, SingleZoneIdentity) {
  const auto series = make_daily(kD0, {3.5, -2.0, 7.25});
  const ZonalTemperatures z({{"A", 42.0, series}});
  const auto t = composite_temperature(z);
  ASSERT_EQ(t.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(t[i].value, series[i].value);
    EXPECT_EQ(t[i].date, series[i].date);
  }
}

TEST(Composite, PeakDemandWeights) {
  // Peaks 30 GW and 10 GW normalize to weights 0.75 and 0.25.
  const ZonalTemperatures z({{"N", 30000.0, make_daily(kD0, {4.0})},
                             {"S", 10000.0, make_daily(kD0, {8.0})}});
  const auto t = composite_temperature(z);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_DOUBLE_EQ(t[0].value, 5.0);
}

TEST(Composite, IntersectsDates) {
  const ZonalTemperatures z(
      {{"A", 1.0, make_daily(kD0, {1.0, 2.0, 3.0, 4.0})},
       {"B", 1.0, make_daily(kD0 + std::chrono::days{2}, {30.0, 40.0})}});
  const auto t = composite_temperature(z);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].date, kD0 + std::chrono::days{2});
  EXPECT_DOUBLE_EQ(t[0].value, 16.5);
  EXPECT_DOUBLE_EQ(t[1].value, 22.0);
}

TEST(Composite, NoOverlapRejected) {
  const ZonalTemperatures z(
      {{"A", 1.0, make_daily(kD0, {1.0})},
       {"B", 1.0, make_daily(kD0 + std::chrono::days{10}, {2.0})}});
  EXPECT_THROW(composite_temperature(z), heatmargin::AlignmentError);
}

TEST(Composite, ZoneValidation) {
  EXPECT_THROW(ZonalTemperatures(std::vector<TemperatureZone>{}),
               heatmargin::EmptyData);
  EXPECT_THROW(ZonalTemperatures({{"A", 1.0, make_daily(kD0, {1.0})},
                                  {"A", 2.0, make_daily(kD0, {2.0})}}),
               heatmargin::InvalidValue);
  EXPECT_THROW(ZonalTemperatures({{"A", -1.0, make_daily(kD0, {1.0})}}),
               heatmargin::InvalidValue);
  EXPECT_THROW(ZonalTemperatures({{"A", 0.0, make_daily(kD0, {1.0})}}),
               heatmargin::InvalidValue);
}

TEST(Regression, NoiselessLineRecoveredExactly) {
  std::vector<double> temps, demands;
  for (int i = 0; i <= 5; ++i) {
    temps.push_back(2.0 * i);
    demands.push_back(50000.0 - 500.0 * (2.0 * i));
  }
  const auto fit = fit_temperature_regression(make_daily(kD0, demands),
                                              make_daily(kD0, temps));
  EXPECT_NEAR(fit.k_t, -500.0, 1e-9);
  EXPECT_NEAR(fit.d0, 50000.0, 1e-9);
  EXPECT_NEAR(fit.se_kt, 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(fit.r_squared, 1.0);
  EXPECT_EQ(fit.n_points, 6);
}

TEST(Regression, HandComputedSmallCase) {
  // T = {0,1,2}, D = {10,10,13}: slope 3/2, intercept 9.5, SSR = 1.5,
  // Sxx = 2, SST = 6, so se = sqrt(0.75) and R^2 = 0.75.
  const auto fit = fit_temperature_regression(
      make_daily(kD0, {10.0, 10.0, 13.0}), make_daily(kD0, {0.0, 1.0, 2.0}));
  EXPECT_NEAR(fit.k_t, 1.5, 1e-12);
  EXPECT_NEAR(fit.d0, 9.5, 1e-12);
  EXPECT_NEAR(fit.se_kt, std::sqrt(0.75), 1e-12);
  EXPECT_NEAR(fit.r_squared, 0.75, 1e-12);
  EXPECT_EQ(fit.n_points, 3);
}

TEST(Regression, Errors) {
  EXPECT_THROW(
      fit_temperature_regression(
          make_daily(kD0, {1.0, 2.0}),
          make_daily(kD0 + std::chrono::days{30}, {1.0, 2.0})),
      heatmargin::AlignmentError);
  EXPECT_THROW(fit_temperature_regression(make_daily(kD0, {1.0, 2.0}),
                                          make_daily(kD0, {3.0, 4.0})),
               heatmargin::InvalidSeries);
  EXPECT_THROW(
      fit_temperature_regression(make_daily(kD0, {1.0, 2.0, 3.0}),
                                 make_daily(kD0, {5.0, 5.0, 5.0})),
      heatmargin::DegenerateRegressor);
}

TEST(Regression, RefittingOwnPredictionsIsStable) {
  heatmargin::Rng rng(83);
  std::vector<double> temps, demands;
  for (int i = 0; i < 120; ++i) {
    const double t = rng.uniform(-5.0, 12.0);
    temps.push_back(t);
    demands.push_back(47000.0 - 430.0 * t + rng.normal(0.0, 800.0));
  }
  const auto fit = fit_temperature_regression(make_daily(kD0, demands),
                                              make_daily(kD0, temps));
  std::vector<double> predicted;
  for (const double t : temps) predicted.push_back(fit.d0 + fit.k_t * t);
  const auto refit = fit_temperature_regression(make_daily(kD0, predicted),
                                                make_daily(kD0, temps));
  EXPECT_NEAR(refit.k_t, fit.k_t, 1e-9 * std::fabs(fit.k_t));
  EXPECT_NEAR(refit.d0, fit.d0, 1e-9 * std::fabs(fit.d0));
  EXPECT_DOUBLE_EQ(refit.r_squared, 1.0);
}

TEST(Regression, DemandShiftMovesInterceptOnly) {
  heatmargin::Rng rng(89);
  std::vector<double> temps, demands, shifted;
  for (int i = 0; i < 90; ++i) {
    const double t = rng.uniform(-4.0, 10.0);
    temps.push_back(t);
    const double d = 52000.0 - 510.0 * t + rng.normal(0.0, 600.0);
    demands.push_back(d);
    shifted.push_back(d + 7777.0);
  }
  const auto a = fit_temperature_regression(make_daily(kD0, demands),
                                            make_daily(kD0, temps));
  const auto b = fit_temperature_regression(make_daily(kD0, shifted),
                                            make_daily(kD0, temps));
  EXPECT_NEAR(b.k_t, a.k_t, 1e-9 * std::fabs(a.k_t));
  EXPECT_NEAR(b.d0, a.d0 + 7777.0, 1e-9 * b.d0);
}

TEST(Regression, PlantedSlopeWithinThreeStandardErrors) {
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    heatmargin::Rng rng(heatmargin::derive_seed(17, seed));
    std::vector<double> temps, demands;
    for (int i = 0; i < 1000; ++i) {
      const double t = rng.uniform(-6.0, 14.0);
      temps.push_back(t);
      demands.push_back(48000.0 - 500.0 * t + rng.normal(0.0, 200.0));
    }
    const auto fit = fit_temperature_regression(make_daily(kD0, demands),
                                                make_daily(kD0, temps));
    EXPECT_LT(fit.k_t, 0.0);
    if (std::fabs(fit.k_t + 500.0) <= 3.0 * fit.se_kt) ++hits;
  }
  EXPECT_GE(hits, 99);
}

}  // namespace
