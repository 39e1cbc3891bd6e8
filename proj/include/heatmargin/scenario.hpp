/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "heatmargin/adequacy.hpp"
#include "heatmargin/demand.hpp"
#include "heatmargin/errors.hpp"
#include "heatmargin/generation.hpp"
#include "heatmargin/ingest.hpp"
#include "heatmargin/probdist.hpp"
#include "heatmargin/rng.hpp"
#include "heatmargin/series.hpp"
#include "heatmargin/timeutil.hpp"
#include "heatmargin/weather.hpp"

namespace heatmargin {

// How demand randomness enters the margin: the empirical distribution of
// hourly effective demand, or the fitted temperature relation applied to the
// empirical temperature distribution (no residual spread).
enum class DemandMode { empirical, temperature_driven };

inline std::string_view demand_mode_tag(DemandMode m) {
  return m == DemandMode::empirical ? "empirical" : "temperature-driven";
}

inline std::optional<DemandMode> demand_mode_from_tag(std::string_view tag) {
  if (tag == "empirical") return DemandMode::empirical;
  if (tag == "temperature" || tag == "temperature-driven") {
    return DemandMode::temperature_driven;
  }
  return std::nullopt;
}

// A named (k_cop, k_dsr) pair, e.g. low / medium / high.
struct HeatParamSet {
  std::string name;
  double k_cop{};
  double k_dsr{};
};

// Installed capacity for one scenario year: conventional quotas by
// technology plus installed wind.
struct FleetYear {
  int year{};
  double c_on_mw{};
  double c_off_mw{};
  std::map<std::string, double> quotas_mw;
};

struct ScenarioConfig {
  int base_year{};
  int horizon_years{};
  double target_peak_mw{};
  double grid_step_mw{10.0};
  DemandMode demand_mode{DemandMode::empirical};
  DailyStat regression_daily_stat{DailyStat::mean};
  std::uint64_t rng_seed{0};
  std::vector<HeatModel> models{HeatModel::none, HeatModel::from_electricity,
                                HeatModel::from_gas};
  std::int64_t n_periods{3360};
  double eps_delta_h_twh{12.5};
  double eps_e_twh{285.0};
  double eps_g_twh{440.0};
  double reserve_mw{1320.0};
  std::vector<HeatParamSet> param_sets;
  std::vector<FleetYear> years;

  const FleetYear& year_entry(int y) const {
    for (const auto& fy : years) {
      if (fy.year == y) return fy;
    }
    throw ConfigError("config: no fleet entry for year " + std::to_string(y));
  }
};

inline void validate_config(const ScenarioConfig& cfg) {
  if (cfg.base_year < 1800 || cfg.base_year > 2200) {
    throw ConfigError("config: base_year out of range");
  }
  if (cfg.horizon_years < 0) {
    throw ConfigError("config: horizon_years must be >= 0");
  }
  if (!std::isfinite(cfg.target_peak_mw) || cfg.target_peak_mw <= 0) {
    throw ConfigError("config: target_peak_mw must be > 0");
  }
  if (!std::isfinite(cfg.grid_step_mw) || cfg.grid_step_mw <= 0) {
    throw ConfigError("config: grid_step_mw must be > 0");
  }
  if (cfg.n_periods < 1) {
    throw ConfigError("config: n_periods must be >= 1");
  }
  if (!std::isfinite(cfg.eps_delta_h_twh) || cfg.eps_delta_h_twh < 0) {
    throw ConfigError("config: eps_delta_h_twh must be >= 0");
  }
  if (!std::isfinite(cfg.eps_e_twh) || cfg.eps_e_twh <= 0) {
    throw ConfigError("config: eps_e_twh must be > 0");
  }
  if (!std::isfinite(cfg.eps_g_twh) || cfg.eps_g_twh <= 0) {
    throw ConfigError("config: eps_g_twh must be > 0");
  }
  if (!std::isfinite(cfg.reserve_mw) || cfg.reserve_mw < 0) {
    throw ConfigError("config: reserve_mw must be >= 0");
  }
  if (cfg.models.empty()) {
    throw ConfigError("config: models must be non-empty");
  }
  {
    std::set<HeatModel> seen(cfg.models.begin(), cfg.models.end());
    if (seen.size() != cfg.models.size()) {
      throw ConfigError("config: duplicate model tags");
    }
  }
  if (cfg.param_sets.empty()) {
    throw ConfigError("config: param_sets must be non-empty");
  }
  {
    std::set<std::string> names;
    for (const auto& s : cfg.param_sets) {
      if (s.name.empty()) {
        throw ConfigError("config: parameter set with empty name");
      }
      if (!names.insert(s.name).second) {
        throw ConfigError("config: duplicate parameter set '" + s.name + "'");
      }
      if (!std::isfinite(s.k_cop) || s.k_cop <= 0 || !std::isfinite(s.k_dsr) ||
          s.k_dsr <= 0) {
        throw ConfigError("config: parameter set '" + s.name +
                          "': k_cop and k_dsr must be > 0");
      }
    }
  }
  std::set<int> listed;
  for (const auto& fy : cfg.years) {
    if (!listed.insert(fy.year).second) {
      throw ConfigError("config: duplicate fleet entry for year " +
                        std::to_string(fy.year));
    }
    if (!std::isfinite(fy.c_on_mw) || fy.c_on_mw < 0 ||
        !std::isfinite(fy.c_off_mw) || fy.c_off_mw < 0) {
      throw ConfigError("config: year " + std::to_string(fy.year) +
                        ": wind capacities must be >= 0");
    }
    for (const auto& [tech, quota] : fy.quotas_mw) {
      if (tech.empty()) {
        throw ConfigError("config: year " + std::to_string(fy.year) +
                          ": empty technology name");
      }
      if (!std::isfinite(quota) || quota < 0) {
        throw ConfigError("config: year " + std::to_string(fy.year) + ": '" +
                          tech + "' quota must be >= 0");
      }
    }
  }
  for (int y = cfg.base_year; y <= cfg.base_year + cfg.horizon_years; ++y) {
    if (listed.find(y) == listed.end()) {
      throw ConfigError("config: no fleet entry for year " +
                        std::to_string(y));
    }
  }
}

// Draws units per technology from the pool, uniformly with replacement,
// until each quota is met; the final unit is resized so the technology total
// equals the quota exactly. Deterministic: technologies are visited in
// sorted order and each gets its own stream derived from (seed, technology).
inline Fleet synthesize_fleet(const UnitPool& pool,
                              const std::map<std::string, double>& quotas_mw,
                              double c_on_mw, double c_off_mw,
                              std::uint64_t seed) {
  std::map<std::string, std::vector<const GeneratingUnit*>> by_tech;
  for (const auto& proto : pool.prototypes) {
    by_tech[proto.technology].push_back(&proto);
  }
  std::vector<GeneratingUnit> units;
  for (const auto& [tech, quota] : quotas_mw) {
    if (quota < 0 || !std::isfinite(quota)) {
      throw InvalidParams("fleet synthesis: quota for '" + tech +
                          "' must be >= 0");
    }
    if (quota == 0.0) continue;
    const auto it = by_tech.find(tech);
    if (it == by_tech.end()) {
      throw MissingTechnology("fleet synthesis: technology '" + tech +
                              "' not in unit pool");
    }
    const auto& protos = it->second;
    Rng rng(derive_seed(seed, hash_label(tech)));
    double total = 0.0;
    std::size_t k = 0;
    while (total < quota) {
      if (++k > 1000000) {
        throw InvalidParams("fleet synthesis: quota for '" + tech +
                            "' needs more than 1e6 units");
      }
      const GeneratingUnit& proto = *protos[rng.uniform_index(protos.size())];
      GeneratingUnit u = proto;
      u.unit_id = proto.unit_id + "#" + std::to_string(k);
      if (total + u.capacity_mw >= quota) {
        u.capacity_mw = quota - total;  // exact-quota resize
        if (u.capacity_mw > 0) units.push_back(std::move(u));
        total = quota;
      } else {
        total += u.capacity_mw;
        units.push_back(std::move(u));
      }
    }
  }
  return Fleet(std::move(units), c_on_mw, c_off_mw);
}

// Distributions backing one report row, for optional dumping.
struct RunArtifacts {
  const CapacityDistribution& generation;
  const MarginDistribution& margin;
  const CapacityDistribution& peak;
};

using RowSink =
    std::function<void(const AdequacyReport&, const RunArtifacts&)>;

// Evaluates the full (year x model x parameter-set) matrix over all covered
// season windows. Rows are ordered year, then model, then parameter set.
// Fleets depend only on (seed, year, technology), so every model and
// parameter set sees identical generation within a year.
inline std::vector<AdequacyReport> run_scenario(const ScenarioConfig& cfg,
                                                const Dataset& data,
                                                const RowSink& sink = {}) {
  validate_config(cfg);
  const CoverageReport cov = coverage_report(data);
  if (cov.covered.empty()) {
    std::string msg = "no complete season window in the dataset";
    for (const auto& note : cov.notes) msg += "\n  " + note;
    throw DataCoverageError(msg);
  }

  const double step = cfg.grid_step_mw;
  const HourlySeries e_full =
      detrend_and_rescale(data.electricity, cfg.target_peak_mw);
  const HourlySeries g_full = spread_daily_to_hourly(data.gas_gwh);
  const DailySeries t_full = composite_temperature(data.temperatures);

  std::vector<HourlySeries> e_parts, g_parts;
  std::vector<DailySeries> t_parts;
  for (const auto& w : cov.covered) {
    e_parts.push_back(slice(e_full, w.start, w.end));
    g_parts.push_back(slice(g_full, w.start, w.end));
    t_parts.push_back(slice(t_full, date_of(w.start), date_of(w.end)));
  }
  const HourlySeries e_pool = concat(e_parts);
  const HourlySeries g_pool = concat(g_parts);
  const DailySeries t_pool = concat(t_parts);

  std::vector<HeatModel> models = cfg.models;
  std::sort(models.begin(), models.end());

  std::vector<AdequacyReport> rows;
  for (int y = cfg.base_year; y <= cfg.base_year + cfg.horizon_years; ++y) {
    const FleetYear& fy = cfg.year_entry(y);
    const Fleet fleet =
        synthesize_fleet(data.unit_pool, fy.quotas_mw, fy.c_on_mw,
                         fy.c_off_mw,
                         derive_seed(cfg.rng_seed,
                                     static_cast<std::uint64_t>(y)));
    const CapacityDistribution copt = build_copt(fleet, step);
    std::vector<HourlySeries> wind_parts;
    const HourlySeries wind_full =
        wind_output_series(data.wind, fy.c_on_mw, fy.c_off_mw);
    for (const auto& w : cov.covered) {
      wind_parts.push_back(slice(wind_full, w.start, w.end));
    }
    const CapacityDistribution gen =
        total_generation_distribution(copt, concat(wind_parts), step);

    for (const HeatModel model : models) {
      for (const auto& set : cfg.param_sets) {
        HeatParams hp;
        hp.eps_delta_h_twh = cfg.eps_delta_h_twh;
        hp.eps_e_twh = cfg.eps_e_twh;
        hp.eps_g_twh = cfg.eps_g_twh;
        hp.k_cop = set.k_cop;
        hp.k_dsr = set.k_dsr;
        hp.model = model;
        hp.years_of_growth = y - cfg.base_year;
        hp.reserve_mw = cfg.reserve_mw;

        const HourlySeries h = heat_series(hp, e_pool, g_pool);
        const HourlySeries d =
            effective_demand_series(e_pool, h, cfg.reserve_mw);
        const DailySeries d_daily =
            aggregate_daily(d, cfg.regression_daily_stat);
        const RegressionFit fit = fit_temperature_regression(d_daily, t_pool);

        CapacityDistribution demand_dist = [&] {
          if (cfg.demand_mode == DemandMode::empirical) {
            return CapacityDistribution::from_samples(d.values(), step);
          }
          std::vector<double> fitted;
          fitted.reserve(t_pool.size());
          for (const auto& r : t_pool.records()) {
            fitted.push_back(fit.d0 + fit.k_t * r.value);
          }
          return CapacityDistribution::from_samples(fitted, step);
        }();

        const MarginDistribution margin = margin_distribution(gen,
                                                              demand_dist);
        const CapacityDistribution peak =
            peak_distribution(demand_dist, cfg.n_periods);
        const PeakSummary ps = peak_summary(peak);

        AdequacyReport row;
        row.year = y;
        row.model = model;
        row.param_set = set.name;
        row.lole_hrs_yr = lole(margin, cfg.n_periods);
        row.eeu_mwh_yr = eeu(margin, cfg.n_periods);
        row.peak_q95_mw = ps.q95_mw;
        row.peak_iqr_mw = ps.iqr_mw;
        row.regression = fit;
        row.n_periods = cfg.n_periods;
        rows.push_back(row);
        if (sink) sink(row, RunArtifacts{gen, margin, peak});
      }
    }
  }
  return rows;
}

}  // namespace heatmargin
