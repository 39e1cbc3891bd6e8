/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#include "heatmargin/demand.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "support/oracles.hpp"

using heatmargin::detrend_and_rescale;
using heatmargin::effective_demand_series;
using heatmargin::heat_sensitivity_coefficient;
using heatmargin::heat_series;
using heatmargin::HeatModel;
using heatmargin::HeatParams;
using heatmargin::HourlySeries;
using heatmargin::spread_daily_to_hourly;
using testsupport::make_daily;
using testsupport::make_hourly;

namespace {

constexpr heatmargin::HourPoint kT0 =
    heatmargin::HourPoint{std::chrono::sys_days{
        std::chrono::year{2018} / std::chrono::January / 1}};
constexpr heatmargin::Date kD0 = std::chrono::sys_days{
    std::chrono::year{2018} / std::chrono::January / 1};

HeatParams params(HeatModel model, int years, double eps_dh, double eps_e,
                  double eps_g, double k_dsr, double k_cop) {
  HeatParams p;
  p.model = model;
  p.years_of_growth = years;
  p.eps_delta_h_twh = eps_dh;
  p.eps_e_twh = eps_e;
  p.eps_g_twh = eps_g;
  p.k_dsr = k_dsr;
  p.k_cop = k_cop;
  return p;
}

TEST(DetrendRescale, TrendlessSeriesUnchanged) {
  // Palindromic values make the least-squares slope exactly zero.
  const auto e = make_hourly(kT0, {10.0, 20.0, 20.0, 10.0});
  const auto out = detrend_and_rescale(e, 20.0);
  ASSERT_EQ(out.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(out[i].value, e[i].value, 1e-9);
    EXPECT_EQ(out[i].t, e[i].t);
  }
}

TEST(DetrendRescale, PureRampCollapsesToConstant) {
  std::vector<double> ramp;
  for (int t = 0; t < 10; ++t) ramp.push_back(static_cast<double>(t));
  const auto out = detrend_and_rescale(make_hourly(kT0, ramp), 4.5);
  for (const auto& r : out.records()) EXPECT_NEAR(r.value, 4.5, 1e-9);
}

TEST(DetrendRescale, PeakHitsTargetExactly) {
  heatmargin::Rng rng(61);
  std::vector<double> vals;
  for (int t = 0; t < 500; ++t) {
    vals.push_back(40000.0 + 3.0 * t + rng.normal(0.0, 900.0));
  }
  const auto out = detrend_and_rescale(make_hourly(kT0, vals), 57321.0);
  double peak = 0.0;
  for (const auto& r : out.records()) peak = std::max(peak, r.value);
  EXPECT_EQ(peak, 57321.0);
}

TEST(DetrendRescale, IdempotentAtSameTarget) {
  heatmargin::Rng rng(67);
  std::vector<double> vals;
  for (int t = 0; t < 300; ++t) {
    vals.push_back(52000.0 - 2.0 * t + rng.normal(0.0, 400.0));
  }
  const auto once = detrend_and_rescale(make_hourly(kT0, vals), 60000.0);
  const auto twice = detrend_and_rescale(once, 60000.0);
  ASSERT_EQ(once.size(), twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) {
    EXPECT_NEAR(once[i].value, twice[i].value, 1e-9 * once[i].value);
  }
}

TEST(DetrendRescale, Errors) {
  EXPECT_THROW(detrend_and_rescale(make_hourly(kT0, {1.0}), 10.0),
               heatmargin::InvalidSeries);
  EXPECT_THROW(detrend_and_rescale(make_hourly(kT0, {1.0, 2.0}), -4.0),
               heatmargin::InvalidValue);
  EXPECT_THROW(detrend_and_rescale(make_hourly(kT0, {-5.0, -6.0}), 10.0),
               heatmargin::InvalidValue);
}

TEST(SpreadDaily, EvenSplitExamples) {
  const auto h = spread_daily_to_hourly(make_daily(kD0, {24.0, 0.0, 12.0}));
  ASSERT_EQ(h.size(), 72u);
  for (int i = 0; i < 24; ++i) EXPECT_DOUBLE_EQ(h[i].value, 1000.0);
  for (int i = 24; i < 48; ++i) EXPECT_DOUBLE_EQ(h[i].value, 0.0);
  for (int i = 48; i < 72; ++i) EXPECT_DOUBLE_EQ(h[i].value, 500.0);
  EXPECT_EQ(h[0].t, kT0);
  EXPECT_EQ(h[25].t, kT0 + heatmargin::kHour * 25);
}

TEST(SpreadDaily, ConservesDailyEnergy) {
  heatmargin::Rng rng(71);
  std::vector<double> days;
  for (int i = 0; i < 40; ++i) days.push_back(rng.uniform(0.0, 4000.0));
  const auto h = spread_daily_to_hourly(make_daily(kD0, days));
  for (int d = 0; d < 40; ++d) {
    long double mwh = 0.0L;
    for (int k = 0; k < 24; ++k) mwh += h[d * 24 + k].value;
    EXPECT_NEAR(static_cast<double>(mwh) / 1000.0, days[d],
                1e-12 * (days[d] + 1.0));
  }
}

TEST(SpreadDaily, NegativeEnergyRejected) {
  EXPECT_THROW(spread_daily_to_hourly(make_daily(kD0, {5.0, -1.0})),
               heatmargin::InvalidValue);
}

TEST(Coefficient, CentralParameterValues) {
  const double k_g = heat_sensitivity_coefficient(
      params(HeatModel::from_gas, 1, 12.5, 285.0, 440.0, 1.0, 1.9));
  EXPECT_NEAR(k_g, 12.5 / (440.0 * 1.9), 1e-12 * k_g);

  const double k_e = heat_sensitivity_coefficient(
      params(HeatModel::from_electricity, 1, 12.5, 285.0, 440.0, 1.0, 1.9));
  EXPECT_NEAR(k_e, 12.5 / (285.0 * 1.9), 1e-12 * k_e);
}

TEST(Coefficient, EqualEnergiesGiveUnity) {
  const double k = heat_sensitivity_coefficient(
      params(HeatModel::from_electricity, 1, 285.0, 285.0, 440.0, 1.0, 1.0));
  EXPECT_DOUBLE_EQ(k, 1.0);
}

TEST(Coefficient, GrowsLinearlyWithYears) {
  const auto base =
      params(HeatModel::from_gas, 1, 12.5, 285.0, 440.0, 1.0, 1.9);
  auto five = base;
  five.years_of_growth = 5;
  EXPECT_DOUBLE_EQ(heat_sensitivity_coefficient(five),
                   5.0 * heat_sensitivity_coefficient(base));
}

TEST(Coefficient, Errors) {
  EXPECT_THROW(heat_sensitivity_coefficient(
                   params(HeatModel::none, 1, 12.5, 285.0, 440.0, 1.0, 1.9)),
               heatmargin::NotApplicable);
  EXPECT_THROW(heat_sensitivity_coefficient(params(
                   HeatModel::from_electricity, 1, 12.5, 0.0, 440.0, 1.0,
                   1.9)),
               heatmargin::InvalidParams);
}

TEST(HeatSeries, BaseModelIsZero) {
  const auto e = make_hourly(kT0, {50000.0, 51000.0, 49000.0});
  const auto g = make_hourly(kT0, {2000.0, 2000.0, 2000.0});
  const auto h = heat_series(
      params(HeatModel::none, 3, 12.5, 285.0, 440.0, 1.0, 1.9), e, g);
  ASSERT_EQ(h.size(), e.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(h[i].t, e[i].t);
    EXPECT_DOUBLE_EQ(h[i].value, 0.0);
  }
}

TEST(HeatSeries, ElectricityScaledPointwise) {
  // eps ratio 2/100 with unit k factors gives k = 0.02 exactly.
  const auto e = make_hourly(kT0, {50000.0, 10000.0});
  const auto h = heat_series(
      params(HeatModel::from_electricity, 1, 2.0, 100.0, 440.0, 1.0, 1.0), e,
      HourlySeries());
  EXPECT_DOUBLE_EQ(h[0].value, 1000.0);
  EXPECT_DOUBLE_EQ(h[1].value, 200.0);
}

TEST(HeatSeries, ZeroGrowthYearsGiveZero) {
  const auto g = make_hourly(kT0, {1500.0, 1800.0});
  const auto h = heat_series(
      params(HeatModel::from_gas, 0, 12.5, 285.0, 440.0, 1.0, 1.9),
      HourlySeries(), g);
  for (const auto& r : h.records()) EXPECT_DOUBLE_EQ(r.value, 0.0);
}

TEST(HeatSeries, EmptyDriverRejected) {
  EXPECT_THROW(
      heat_series(params(HeatModel::from_gas, 1, 12.5, 285.0, 440.0, 1.0,
                         1.9),
                  HourlySeries(), HourlySeries()),
      heatmargin::AlignmentError);
}

TEST(HeatSeries, HalvingCopDsrProductDoublesHeat) {
  heatmargin::Rng rng(73);
  std::vector<double> gas;
  for (int i = 0; i < 200; ++i) gas.push_back(rng.uniform(500.0, 3000.0));
  const auto g = make_hourly(kT0, gas);

  const auto full =
      params(HeatModel::from_gas, 3, 12.5, 285.0, 440.0, 1.0, 1.9);
  auto halved = full;
  halved.k_cop = full.k_cop / 2.0;

  const auto h1 = heat_series(full, HourlySeries(), g);
  const auto h2 = heat_series(halved, HourlySeries(), g);
  ASSERT_EQ(h1.size(), h2.size());
  for (std::size_t i = 0; i < h1.size(); ++i) {
    EXPECT_EQ(h2[i].value, 2.0 * h1[i].value);
  }
}

TEST(HeatSeries, DoublingCopDsrProductHalvesHeat) {
  const auto g = make_hourly(kT0, {1234.5, 987.6, 1500.0});
  const auto base =
      params(HeatModel::from_gas, 2, 12.5, 285.0, 440.0, 1.25, 1.6);
  auto doubled = base;
  doubled.k_dsr = base.k_dsr * 2.0;
  const auto h1 = heat_series(base, HourlySeries(), g);
  const auto h2 = heat_series(doubled, HourlySeries(), g);
  for (std::size_t i = 0; i < h1.size(); ++i) {
    EXPECT_NEAR(h2[i].value, h1[i].value / 2.0,
                1e-12 * std::fabs(h1[i].value));
  }
}

TEST(HeatSeries, AnnualEnergyIdentity) {
  // One year of gas at 24 GWh/day sums to 8.76 TWh; with eps_g equal to
  // that, total heat energy must equal years*eps_dh/(k_dsr*k_cop).
  std::vector<double> days(365, 24.0);
  const auto g_hourly = spread_daily_to_hourly(make_daily(kD0, days));
  const auto p =
      params(HeatModel::from_gas, 1, 2.0, 285.0, 8.76, 2.0, 1.0);
  const auto h = heat_series(p, HourlySeries(), g_hourly);
  long double mwh = 0.0L;
  for (const auto& r : h.records()) mwh += r.value;
  const double twh = static_cast<double>(mwh) / 1e6;
  EXPECT_NEAR(twh, 1.0, 1e-6);
}

TEST(EffectiveDemand, SumsComponentsAndReserve) {
  const auto e = make_hourly(kT0, {50000.0});
  const auto h = make_hourly(kT0, {5000.0});
  const auto d = effective_demand_series(e, h, 1320.0);
  EXPECT_DOUBLE_EQ(d[0].value, 56320.0);
}

TEST(EffectiveDemand, ZeroHeatZeroReserveIsIdentity) {
  const auto e = make_hourly(kT0, {41000.0, 42000.0, 40000.0});
  const auto h = make_hourly(kT0, {0.0, 0.0, 0.0});
  const auto d = effective_demand_series(e, h, 0.0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    EXPECT_DOUBLE_EQ(d[i].value, e[i].value);
  }
}

TEST(EffectiveDemand, ReserveAloneGivesConstant) {
  const auto e = make_hourly(kT0, {0.0, 0.0});
  const auto h = make_hourly(kT0, {0.0, 0.0});
  const auto d = effective_demand_series(e, h, 1320.0);
  for (const auto& r : d.records()) EXPECT_DOUBLE_EQ(r.value, 1320.0);
}

TEST(EffectiveDemand, MisalignedSeriesRejected) {
  const auto e = make_hourly(kT0, {1.0, 2.0});
  const auto h = make_hourly(kT0 + heatmargin::kHour, {1.0, 2.0});
  EXPECT_THROW(effective_demand_series(e, h, 0.0),
               heatmargin::AlignmentError);
  const auto short_h = make_hourly(kT0, {1.0});
  EXPECT_THROW(effective_demand_series(e, short_h, 0.0),
               heatmargin::AlignmentError);
}

TEST(HeatParams, Validation) {
  EXPECT_THROW(heatmargin::validate_heat_params(
                   params(HeatModel::from_gas, 1, 12.5, 285.0, 440.0, 0.0,
                          1.9)),
               heatmargin::InvalidParams);
  EXPECT_THROW(heatmargin::validate_heat_params(
                   params(HeatModel::from_gas, 1, 12.5, 285.0, 440.0, 1.0,
                          -1.9)),
               heatmargin::InvalidParams);
  EXPECT_THROW(heatmargin::validate_heat_params(
                   params(HeatModel::from_gas, -1, 12.5, 285.0, 440.0, 1.0,
                          1.9)),
               heatmargin::InvalidParams);
  EXPECT_THROW(heatmargin::validate_heat_params(
                   params(HeatModel::from_gas, 1, 12.5, 285.0, 0.0, 1.0,
                          1.9)),
               heatmargin::InvalidParams);
  EXPECT_NO_THROW(heatmargin::validate_heat_params(
      params(HeatModel::from_gas, 1, 12.5, 285.0, 440.0, 1.0, 1.9)));
}

}  // namespace
