/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "heatmargin/csv.hpp"
#include "heatmargin/errors.hpp"
#include "heatmargin/ingest.hpp"
#include "heatmargin/rng.hpp"
#include "heatmargin/scenario.hpp"
#include "heatmargin/series.hpp"
#include "heatmargin/timeutil.hpp"

namespace heatmargin {

// Knobs of the synthetic GB-like dataset. Electricity and gas are driven by
// a shared composite temperature with planted linear slopes; gas seasonality
// is calibrated so its winter peak-to-mean ratio hits the configured target.
struct SynthParams {
  int n_winters{5};
  int n_zones{4};
  int first_winter_year{2013};
  double elec_slope_mw_per_c{-500.0};
  double gas_slope_gwh_per_c{-150.0};
  double gas_winter_peak_to_mean{1.9};
  double elec_base_mw{40000.0};
  double elec_diurnal_amp_mw{5500.0};
  double elec_weekend_dip_mw{1500.0};
  double elec_noise_mw{400.0};
  double gas_base_gwh{1800.0};
  double gas_floor_gwh{150.0};
  double gas_annual_twh{440.0};
  double gas_noise_gwh{35.0};
  double temp_mean_c{9.0};
  double temp_seasonal_amp_c{8.0};
  double temp_noise_c{1.8};
  double temp_ar1{0.8};
  double wind_temp_coupling{0.012};
  std::uint64_t seed{1};
};

inline void validate_synth_params(const SynthParams& p) {
  if (p.n_winters < 1) {
    throw InvalidParams("synth: n_winters must be >= 1");
  }
  if (p.n_zones < 1) {
    throw InvalidParams("synth: n_zones must be >= 1");
  }
  if (!std::isfinite(p.elec_slope_mw_per_c) || p.elec_slope_mw_per_c > 0) {
    throw InvalidParams("synth: electricity slope must be <= 0 "
                        "(demand rises as temperature falls)");
  }
  if (!std::isfinite(p.gas_slope_gwh_per_c) || p.gas_slope_gwh_per_c > 0) {
    throw InvalidParams("synth: gas slope must be <= 0");
  }
  if (!std::isfinite(p.gas_winter_peak_to_mean) ||
      p.gas_winter_peak_to_mean < 1) {
    throw InvalidParams("synth: gas winter peak-to-mean must be >= 1");
  }
  if (!std::isfinite(p.elec_base_mw) || p.elec_base_mw <= 0) {
    throw InvalidParams("synth: electricity base must be > 0");
  }
  if (!std::isfinite(p.gas_base_gwh) || p.gas_base_gwh <= 0) {
    throw InvalidParams("synth: gas base must be > 0");
  }
  if (!std::isfinite(p.gas_annual_twh) || p.gas_annual_twh <= 0) {
    throw InvalidParams("synth: gas annual energy must be > 0");
  }
  for (const double nn :
       {p.elec_diurnal_amp_mw, p.elec_weekend_dip_mw, p.elec_noise_mw,
        p.gas_floor_gwh, p.gas_noise_gwh, p.temp_noise_c,
        p.temp_seasonal_amp_c}) {
    if (!std::isfinite(nn) || nn < 0) {
      throw InvalidParams("synth: amplitudes and noise levels must be >= 0");
    }
  }
  if (!std::isfinite(p.temp_ar1) || p.temp_ar1 < 0 || p.temp_ar1 >= 1) {
    throw InvalidParams("synth: temperature AR(1) must be in [0,1)");
  }
  if (!std::isfinite(p.wind_temp_coupling)) {
    throw InvalidParams("synth: wind temperature coupling must be finite");
  }
}

namespace detail {

inline double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

inline int day_of_year(Date d) {
  using namespace std::chrono;
  const year_month_day ymd{d};
  const Date jan1{ymd.year() / January / 1};
  return static_cast<int>((d - jan1).count()) + 1;
}

inline double seasonal_shape(Date d) {
  constexpr double two_pi = 2.0 * 3.14159265358979323846;
  // Coldest around Jan 15, warmest mid-July.
  return -std::cos(two_pi * (day_of_year(d) - 15) / 365.25);
}

}  // namespace detail

inline Dataset generate_synthetic(const SynthParams& p) {
  validate_synth_params(p);
  using namespace std::chrono;

  const Date span_start{year{p.first_winter_year} / July / 1};
  const Date span_end{year{p.first_winter_year + p.n_winters} / July / 1};
  const auto n_days = static_cast<std::size_t>((span_end - span_start).count());

  std::vector<Date> dates(n_days);
  for (std::size_t i = 0; i < n_days; ++i) {
    dates[i] = span_start + days{static_cast<int>(i)};
  }

  // Zone temperatures: seasonal sinusoid + per-zone offset + AR(1) noise.
  std::vector<TemperatureZone> zones(static_cast<std::size_t>(p.n_zones));
  const double innovation_sd =
      p.temp_noise_c * std::sqrt(1.0 - p.temp_ar1 * p.temp_ar1);
  for (int z = 0; z < p.n_zones; ++z) {
    Rng rng(derive_seed(p.seed, hash_label("temp#" + std::to_string(z))));
    const double offset =
        0.9 * (z - (static_cast<double>(p.n_zones) - 1.0) / 2.0);
    std::vector<DailyRecord> recs(n_days);
    double x = rng.normal(0.0, p.temp_noise_c);
    for (std::size_t i = 0; i < n_days; ++i) {
      if (i > 0) {
        x = p.temp_ar1 * x + rng.normal(0.0, innovation_sd);
      }
      recs[i] = {dates[i], p.temp_mean_c + offset +
                               p.temp_seasonal_amp_c *
                                   detail::seasonal_shape(dates[i]) +
                               x};
    }
    auto& zone = zones[static_cast<std::size_t>(z)];
    zone.zone_id = "Z" + std::to_string(z + 1);
    zone.weight = 10000.0 * static_cast<double>(p.n_zones - z);
    zone.tmin_c = DailySeries(std::move(recs));
  }
  ZonalTemperatures temperatures(std::move(zones));
  const DailySeries t_comp = composite_temperature(temperatures);

  // Electricity: base + planted slope * T + diurnal/weekday shape + noise.
  HourlySeries electricity = [&] {
    Rng rng(derive_seed(p.seed, hash_label("elec")));
    constexpr double two_pi = 2.0 * 3.14159265358979323846;
    std::vector<HourlyRecord> recs;
    recs.reserve(n_days * 24);
    for (std::size_t i = 0; i < n_days; ++i) {
      const double t_day = t_comp[i].value;
      const weekday wd{dates[i]};
      const bool weekend = wd == Saturday || wd == Sunday;
      const HourPoint midnight{dates[i]};
      for (int h = 0; h < 24; ++h) {
        double v = p.elec_base_mw + p.elec_slope_mw_per_c * t_day +
                   0.5 * p.elec_diurnal_amp_mw *
                       (-std::cos(two_pi * (h - 6) / 24.0)) +
                   (weekend ? -p.elec_weekend_dip_mw : 0.0) +
                   rng.normal(0.0, p.elec_noise_mw);
        recs.push_back({midnight + kHour * h, v});
      }
    }
    return HourlySeries(std::move(recs));
  }();

  // Gas: linear-in-T daily energy, floored, then shaped by a power
  // transform R^theta so the pooled winter peak-to-mean ratio matches the
  // target (the transform is monotone and preserves positivity), and
  // finally scaled to the annual energy target (scaling keeps the ratio).
  DailySeries gas = [&] {
    Rng rng(derive_seed(p.seed, hash_label("gas")));
    std::vector<double> raw(n_days);
    for (std::size_t i = 0; i < n_days; ++i) {
      raw[i] = std::max(p.gas_floor_gwh,
                        p.gas_base_gwh +
                            p.gas_slope_gwh_per_c * t_comp[i].value +
                            rng.normal(0.0, p.gas_noise_gwh));
    }

    std::vector<std::size_t> winter_idx;
    for (int wy = p.first_winter_year; wy < p.first_winter_year + p.n_winters;
         ++wy) {
      const SeasonWindow w = season_window(wy);
      const Date lo = date_of(w.start), hi = date_of(w.end);
      for (std::size_t i = 0; i < n_days; ++i) {
        if (dates[i] >= lo && dates[i] < hi) winter_idx.push_back(i);
      }
    }
    const auto winter_ratio = [&](double theta) {
      double peak = 0.0;
      long double sum = 0.0L;
      for (const std::size_t i : winter_idx) {
        const double v = std::pow(raw[i], theta);
        peak = std::max(peak, v);
        sum += v;
      }
      const double mean =
          static_cast<double>(sum / static_cast<long double>(winter_idx.size()));
      return peak / mean;
    };

    double theta = 1.0;
    const double target = p.gas_winter_peak_to_mean;
    if (winter_ratio(1e-9) >= target) {
      // Raw winter data is flat; only a ratio of ~1 is achievable.
      if (target > 1.0 + 1e-9) {
        throw InvalidParams(
            "synth: winter gas is constant; cannot calibrate "
            "peak-to-mean above 1");
      }
      theta = 1e-9;
    } else {
      double lo = 1e-9, hi = 1.0;
      while (winter_ratio(hi) < target) {
        hi *= 2.0;
        if (hi > 64.0) {
          throw InvalidParams("synth: peak-to-mean target unreachable");
        }
      }
      for (int it = 0; it < 200; ++it) {
        theta = 0.5 * (lo + hi);
        if (winter_ratio(theta) < target) {
          lo = theta;
        } else {
          hi = theta;
        }
      }
      theta = hi;  // ratio(theta) >= target, within bisection tolerance
    }

    std::vector<DailyRecord> recs(n_days);
    long double total = 0.0L;
    for (std::size_t i = 0; i < n_days; ++i) {
      recs[i] = {dates[i], std::pow(raw[i], theta)};
      total += recs[i].value;
    }
    if (!(total > 0.0L)) {
      throw InvalidParams("synth: gas energy collapsed to zero");
    }
    const double target_total =
        p.gas_annual_twh * 1000.0 * static_cast<double>(n_days) / 365.25;
    const double scale = target_total / static_cast<double>(total);
    for (auto& r : recs) r.value *= scale;
    return DailySeries(std::move(recs));
  }();

  // Wind: logistic of AR(1) states shared between on/offshore, with a weak
  // temperature coupling.
  WindSeries wind = [&] {
    Rng rng(derive_seed(p.seed, hash_label("wind")));
    const double ar = 0.97;
    const double marginal_sd = 0.85;
    const double inn_sd = marginal_sd * std::sqrt(1.0 - ar * ar);
    std::vector<WindRecord> recs;
    recs.reserve(n_days * 24);
    double x_on = rng.normal(0.0, marginal_sd);
    double x_mix = rng.normal(0.0, marginal_sd);
    for (std::size_t i = 0; i < n_days; ++i) {
      const double chill =
          p.wind_temp_coupling * (t_comp[i].value - p.temp_mean_c);
      const HourPoint midnight{dates[i]};
      for (int h = 0; h < 24; ++h) {
        if (!(i == 0 && h == 0)) {
          x_on = ar * x_on + rng.normal(0.0, inn_sd);
          x_mix = ar * x_mix + rng.normal(0.0, inn_sd);
        }
        recs.push_back({midnight + kHour * h,
                        detail::logistic(-0.71 + x_on - chill),
                        detail::logistic(-0.32 + 0.8 * x_on + 0.6 * x_mix -
                                         chill)});
      }
    }
    return WindSeries(std::move(recs));
  }();

  Dataset data;
  data.electricity = std::move(electricity);
  data.gas_gwh = std::move(gas);
  data.wind = std::move(wind);
  data.temperatures = std::move(temperatures);
  data.unit_pool = UnitPool{{
      {"U-NUC-1", "nuclear", 1190.0, 0.90},
      {"U-NUC-2", "nuclear", 600.0, 0.88},
      {"U-CCGT-1", "ccgt", 800.0, 0.92},
      {"U-CCGT-2", "ccgt", 450.0, 0.93},
      {"U-CCGT-3", "ccgt", 400.0, 0.91},
      {"U-COAL-1", "coal", 660.0, 0.88},
      {"U-COAL-2", "coal", 500.0, 0.85},
      {"U-BIO-1", "biomass", 630.0, 0.89},
      {"U-HYD-1", "hydro", 300.0, 0.95},
      {"U-HYD-2", "hydro", 100.0, 0.96},
      {"U-OCGT-1", "ocgt", 140.0, 0.94},
      {"U-OCGT-2", "ocgt", 50.0, 0.97},
      {"U-CHP-1", "chp", 400.0, 0.87},
      {"U-IC-1", "interconnector", 1000.0, 0.80},
      {"U-IC-2", "interconnector", 500.0, 0.80},
  }};
  return data;
}

// Writes the six dataset files with their exact schemas.
inline void write_dataset_csv(const Dataset& data,
                              const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const DatasetPaths paths = DatasetPaths::in_dir(dir);

  std::vector<std::string> rows;
  rows.reserve(data.electricity.size());
  for (const auto& r : data.electricity.records()) {
    rows.push_back(format_timestamp(r.t) + "," + format_double(r.value));
  }
  write_csv(paths.electricity, "timestamp,demand_mw", rows);

  rows.clear();
  for (const auto& r : data.gas_gwh.records()) {
    rows.push_back(format_date(r.date) + "," + format_double(r.value));
  }
  write_csv(paths.gas, "date,energy_gwh", rows);

  rows.clear();
  for (const auto& r : data.wind.records()) {
    rows.push_back(format_timestamp(r.t) + "," + format_double(r.cf_onshore) +
                   "," + format_double(r.cf_offshore));
  }
  write_csv(paths.wind, "timestamp,cf_onshore,cf_offshore", rows);

  rows.clear();
  for (const auto& z : data.temperatures.zones()) {
    for (const auto& r : z.tmin_c.records()) {
      rows.push_back(format_date(r.date) + "," + z.zone_id + "," +
                     format_double(r.value));
    }
  }
  write_csv(paths.temperature, "date,zone_id,tmin_c", rows);

  rows.clear();
  for (const auto& z : data.temperatures.zones()) {
    rows.push_back(z.zone_id + "," + format_double(z.weight));
  }
  write_csv(paths.zones, "zone_id,peak_demand_mw", rows);

  rows.clear();
  for (const auto& u : data.unit_pool.prototypes) {
    rows.push_back(u.unit_id + "," + u.technology + "," +
                   format_double(u.capacity_mw) + "," +
                   format_double(u.availability));
  }
  write_csv(paths.unit_pool, "unit_id,technology,capacity_mw,availability",
            rows);
}

// A runnable scenario matching the synthetic dataset: six forecast years
// with modest fleet evolution, GB-flavoured quotas, and the three named
// parameter sets (medium first; the run command defaults to the first).
inline ScenarioConfig default_scenario_config(const SynthParams& p) {
  ScenarioConfig cfg;
  cfg.base_year = p.first_winter_year;
  cfg.horizon_years = 5;
  cfg.target_peak_mw = 60000.0;
  cfg.grid_step_mw = 10.0;
  cfg.demand_mode = DemandMode::empirical;
  cfg.regression_daily_stat = DailyStat::mean;
  cfg.rng_seed = 42;
  cfg.models = {HeatModel::none, HeatModel::from_electricity,
                HeatModel::from_gas};
  cfg.n_periods = 3360;
  cfg.eps_delta_h_twh = 12.5;
  cfg.eps_e_twh = 285.0;
  cfg.eps_g_twh = 440.0;
  cfg.reserve_mw = 1320.0;
  cfg.param_sets = {{"medium", 1.9, 1.0}, {"low", 1.5, 0.75},
                    {"high", 2.5, 1.25}};
  for (int i = 0; i <= 5; ++i) {
    FleetYear fy;
    fy.year = cfg.base_year + i;
    fy.c_on_mw = 13000.0 + 400.0 * i;
    fy.c_off_mw = 7900.0 + 900.0 * i;
    fy.quotas_mw = {
        {"nuclear", 8000.0},
        {"ccgt", 30000.0 + 800.0 * i},
        {"coal", 10000.0 - 1200.0 * i},
        {"biomass", 3000.0},
        {"hydro", 1500.0},
        {"ocgt", 1500.0},
        {"chp", 2500.0},
        {"interconnector", 9500.0 + 440.0 * i},
    };
    cfg.years.push_back(std::move(fy));
  }
  return cfg;
}

}  // namespace heatmargin
