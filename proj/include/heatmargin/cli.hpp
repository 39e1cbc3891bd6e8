/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "heatmargin/adequacy.hpp"
#include "heatmargin/csv.hpp"
#include "heatmargin/errors.hpp"
#include "heatmargin/ingest.hpp"
#include "heatmargin/scenario.hpp"
#include "heatmargin/synth.hpp"

namespace heatmargin {

// Exit codes: 0 success, 1 data error, 2 config error, 3 internal failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitInternalError = 3;

inline int classify_error(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) != nullptr ||
      dynamic_cast<const InvalidParams*>(&e) != nullptr ||
      dynamic_cast<const MissingTechnology*>(&e) != nullptr) {
    return kExitConfigError;
  }
  if (dynamic_cast<const ParseError*>(&e) != nullptr ||
      dynamic_cast<const DataCoverageError*>(&e) != nullptr ||
      dynamic_cast<const EmptyData*>(&e) != nullptr ||
      dynamic_cast<const InvalidSeries*>(&e) != nullptr ||
      dynamic_cast<const InvalidValue*>(&e) != nullptr ||
      dynamic_cast<const AlignmentError*>(&e) != nullptr ||
      dynamic_cast<const DegenerateRegressor*>(&e) != nullptr ||
      dynamic_cast<const EmptyFleet*>(&e) != nullptr) {
    return kExitDataError;
  }
  return kExitInternalError;
}

// ---------------------------------------------------------------------------
// Scenario configuration file (JSON, exactly the ScenarioConfig fields).
// ---------------------------------------------------------------------------

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj,
                                const std::set<std::string>& allowed,
                                const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (allowed.find(key) == allowed.end()) {
      throw ConfigError("config: unknown key '" + key + "' in " + context);
    }
  }
}

inline double config_number(const nlohmann::json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError("config: '" + std::string(key) + "' must be a number");
  }
  return v.get<double>();
}

inline int config_int(const nlohmann::json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError("config: '" + std::string(key) +
                      "' must be an integer");
  }
  return v.get<int>();
}

inline std::string config_string(const nlohmann::json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_string()) {
    throw ConfigError("config: '" + std::string(key) + "' must be a string");
  }
  return v.get<std::string>();
}

inline void require_key(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key)) {
    throw ConfigError("config: missing required key '" + std::string(key) +
                      "'");
  }
}

}  // namespace detail

inline ScenarioConfig parse_scenario_config(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path.string() + ": cannot open config file");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError(path.string() + ": top level must be an object");
  }
  detail::reject_unknown_keys(
      j,
      {"base_year", "horizon_years", "target_peak_mw", "grid_step_mw",
       "demand_mode", "daily_stat", "rng_seed", "models", "n_periods", "heat",
       "param_sets", "years"},
      "top level");
  for (const char* key :
       {"base_year", "horizon_years", "target_peak_mw", "rng_seed",
        "param_sets", "years"}) {
    detail::require_key(j, key);
  }

  ScenarioConfig cfg;
  cfg.base_year = detail::config_int(j, "base_year");
  cfg.horizon_years = detail::config_int(j, "horizon_years");
  cfg.target_peak_mw = detail::config_number(j, "target_peak_mw");
  if (j.contains("grid_step_mw")) {
    cfg.grid_step_mw = detail::config_number(j, "grid_step_mw");
  }
  if (j.contains("demand_mode")) {
    const std::string tag = detail::config_string(j, "demand_mode");
    const auto mode = demand_mode_from_tag(tag);
    if (!mode) {
      throw ConfigError("config: unknown demand_mode '" + tag + "'");
    }
    cfg.demand_mode = *mode;
  }
  if (j.contains("daily_stat")) {
    const std::string tag = detail::config_string(j, "daily_stat");
    if (tag == "mean") {
      cfg.regression_daily_stat = DailyStat::mean;
    } else if (tag == "max") {
      cfg.regression_daily_stat = DailyStat::max;
    } else {
      throw ConfigError("config: daily_stat must be 'mean' or 'max'");
    }
  }
  {
    const auto& v = j.at("rng_seed");
    if (!v.is_number_integer() ||
        (v.is_number_integer() && !v.is_number_unsigned() &&
         v.get<std::int64_t>() < 0)) {
      throw ConfigError("config: rng_seed must be a non-negative integer");
    }
    cfg.rng_seed = v.get<std::uint64_t>();
  }
  if (j.contains("models")) {
    const auto& arr = j.at("models");
    if (!arr.is_array() || arr.empty()) {
      throw ConfigError("config: models must be a non-empty array");
    }
    cfg.models.clear();
    for (const auto& m : arr) {
      if (!m.is_string()) {
        throw ConfigError("config: models entries must be strings");
      }
      const auto model = model_from_tag(m.get<std::string>());
      if (!model) {
        throw ConfigError("config: unknown model tag '" +
                          m.get<std::string>() + "'");
      }
      cfg.models.push_back(*model);
    }
  }
  if (j.contains("n_periods")) {
    cfg.n_periods = detail::config_int(j, "n_periods");
  }
  if (j.contains("heat")) {
    const auto& h = j.at("heat");
    if (!h.is_object()) {
      throw ConfigError("config: heat must be an object");
    }
    detail::reject_unknown_keys(h,
                                {"eps_delta_h_twh_per_yr", "eps_e_twh_per_yr",
                                 "eps_g_twh_per_yr", "reserve_mw"},
                                "heat");
    if (h.contains("eps_delta_h_twh_per_yr")) {
      cfg.eps_delta_h_twh = detail::config_number(h, "eps_delta_h_twh_per_yr");
    }
    if (h.contains("eps_e_twh_per_yr")) {
      cfg.eps_e_twh = detail::config_number(h, "eps_e_twh_per_yr");
    }
    if (h.contains("eps_g_twh_per_yr")) {
      cfg.eps_g_twh = detail::config_number(h, "eps_g_twh_per_yr");
    }
    if (h.contains("reserve_mw")) {
      cfg.reserve_mw = detail::config_number(h, "reserve_mw");
    }
  }
  {
    const auto& arr = j.at("param_sets");
    if (!arr.is_array() || arr.empty()) {
      throw ConfigError("config: param_sets must be a non-empty array");
    }
    for (const auto& s : arr) {
      if (!s.is_object()) {
        throw ConfigError("config: param_sets entries must be objects");
      }
      detail::reject_unknown_keys(s, {"name", "k_cop", "k_dsr"}, "param_sets");
      for (const char* key : {"name", "k_cop", "k_dsr"}) {
        detail::require_key(s, key);
      }
      cfg.param_sets.push_back({detail::config_string(s, "name"),
                                detail::config_number(s, "k_cop"),
                                detail::config_number(s, "k_dsr")});
    }
  }
  {
    const auto& arr = j.at("years");
    if (!arr.is_array() || arr.empty()) {
      throw ConfigError("config: years must be a non-empty array");
    }
    for (const auto& y : arr) {
      if (!y.is_object()) {
        throw ConfigError("config: years entries must be objects");
      }
      detail::reject_unknown_keys(
          y, {"year", "c_on_mw", "c_off_mw", "quotas_mw"}, "years");
      for (const char* key : {"year", "c_on_mw", "c_off_mw", "quotas_mw"}) {
        detail::require_key(y, key);
      }
      FleetYear fy;
      fy.year = detail::config_int(y, "year");
      fy.c_on_mw = detail::config_number(y, "c_on_mw");
      fy.c_off_mw = detail::config_number(y, "c_off_mw");
      const auto& q = y.at("quotas_mw");
      if (!q.is_object()) {
        throw ConfigError("config: quotas_mw must be an object");
      }
      for (const auto& [tech, quota] : q.items()) {
        if (!quota.is_number()) {
          throw ConfigError("config: quota for '" + tech +
                            "' must be a number");
        }
        fy.quotas_mw[tech] = quota.get<double>();
      }
      cfg.years.push_back(std::move(fy));
    }
  }
  return cfg;
}

inline void write_scenario_json(const ScenarioConfig& cfg,
                                const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["base_year"] = cfg.base_year;
  j["horizon_years"] = cfg.horizon_years;
  j["target_peak_mw"] = cfg.target_peak_mw;
  j["grid_step_mw"] = cfg.grid_step_mw;
  j["demand_mode"] = std::string(demand_mode_tag(cfg.demand_mode));
  j["daily_stat"] =
      cfg.regression_daily_stat == DailyStat::mean ? "mean" : "max";
  j["rng_seed"] = cfg.rng_seed;
  nlohmann::ordered_json models = nlohmann::ordered_json::array();
  for (const HeatModel m : cfg.models) {
    models.push_back(std::string(model_tag(m)));
  }
  j["models"] = std::move(models);
  j["n_periods"] = cfg.n_periods;
  j["heat"] = {{"eps_delta_h_twh_per_yr", cfg.eps_delta_h_twh},
               {"eps_e_twh_per_yr", cfg.eps_e_twh},
               {"eps_g_twh_per_yr", cfg.eps_g_twh},
               {"reserve_mw", cfg.reserve_mw}};
  nlohmann::ordered_json sets = nlohmann::ordered_json::array();
  for (const auto& s : cfg.param_sets) {
    sets.push_back({{"name", s.name}, {"k_cop", s.k_cop},
                    {"k_dsr", s.k_dsr}});
  }
  j["param_sets"] = std::move(sets);
  nlohmann::ordered_json years = nlohmann::ordered_json::array();
  for (const auto& fy : cfg.years) {
    nlohmann::ordered_json quotas;
    for (const auto& [tech, quota] : fy.quotas_mw) {
      quotas[tech] = quota;
    }
    years.push_back({{"year", fy.year},
                     {"c_on_mw", fy.c_on_mw},
                     {"c_off_mw", fy.c_off_mw},
                     {"quotas_mw", std::move(quotas)}});
  }
  j["years"] = std::move(years);

  std::ofstream out(path);
  if (!out) {
    throw ParseError(path.string() + ": cannot open for writing");
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw ParseError(path.string() + ": write failed");
  }
}

// ---------------------------------------------------------------------------
// Report emission.
// ---------------------------------------------------------------------------

inline const char* kReportCsvHeader =
    "year,model,param_set,lole_hrs_yr,eeu_mwh_yr,peak_q95_mw,peak_iqr_mw,"
    "k_t_mw_per_c,d0_mw,se_kt,r_squared,n_periods,seed";

inline std::string report_csv_row(const AdequacyReport& r,
                                  std::uint64_t seed) {
  std::string row;
  row += std::to_string(r.year);
  row += ',';
  row += model_tag(r.model);
  row += ',';
  row += r.param_set;
  row += ',';
  row += format_double(r.lole_hrs_yr);
  row += ',';
  row += format_double(r.eeu_mwh_yr);
  row += ',';
  row += format_double(r.peak_q95_mw);
  row += ',';
  row += format_double(r.peak_iqr_mw);
  row += ',';
  row += format_double(r.regression.k_t);
  row += ',';
  row += format_double(r.regression.d0);
  row += ',';
  row += format_double(r.regression.se_kt);
  row += ',';
  row += format_double(r.regression.r_squared);
  row += ',';
  row += std::to_string(r.n_periods);
  row += ',';
  row += std::to_string(seed);
  return row;
}

inline void write_report_csv(const std::vector<AdequacyReport>& rows,
                             std::uint64_t seed,
                             const std::filesystem::path& path) {
  std::vector<std::string> lines;
  lines.reserve(rows.size());
  for (const auto& r : rows) lines.push_back(report_csv_row(r, seed));
  write_csv(path, kReportCsvHeader, lines);
}

inline void write_report_text(const std::vector<AdequacyReport>& rows,
                              const ScenarioConfig& cfg,
                              const std::vector<SeasonWindow>& windows,
                              const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError(path.string() + ": cannot open for writing");
  }
  out << "generation adequacy report\n";
  out << "==========================\n";
  out << "seed:            " << cfg.rng_seed << "\n";
  out << "grid step:       " << format_double(cfg.grid_step_mw) << " MW\n";
  out << "demand mode:     " << demand_mode_tag(cfg.demand_mode) << "\n";
  out << "periods/year:    " << cfg.n_periods << "\n";
  out << "target peak:     " << format_double(cfg.target_peak_mw) << " MW\n";
  out << "season windows:  ";
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (i > 0) out << ", ";
    out << windows[i].year;
  }
  out << "\n\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-5s %-5s %-10s %12s %14s %12s %12s %10s %12s %8s %8s %6s\n",
                "year", "model", "param_set", "lole_h_yr", "eeu_mwh_yr",
                "peak_q95_mw", "peak_iqr_mw", "k_t_mw_c", "d0_mw", "se_kt",
                "r2", "n");
  out << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%-5d %-5s %-10s %12.6f %14.3f %12.1f %12.1f %10.2f %12.1f "
                  "%8.2f %8.5f %6lld\n",
                  r.year, std::string(model_tag(r.model)).c_str(),
                  r.param_set.c_str(), r.lole_hrs_yr, r.eeu_mwh_yr,
                  r.peak_q95_mw, r.peak_iqr_mw, r.regression.k_t,
                  r.regression.d0, r.regression.se_kt, r.regression.r_squared,
                  static_cast<long long>(r.n_periods));
    out << buf;
  }
  if (!out) {
    throw ParseError(path.string() + ": write failed");
  }
}

// ---------------------------------------------------------------------------
// Commands.
// ---------------------------------------------------------------------------

inline int cmd_validate(const std::filesystem::path& data_dir,
                        std::ostream& out, std::ostream& err) {
  try {
    const Dataset data = load_dataset(DatasetPaths::in_dir(data_dir));
    out << "electricity: " << data.electricity.size() << " hourly records\n";
    out << "gas:         " << data.gas_gwh.size() << " daily records\n";
    out << "wind:        " << data.wind.size() << " hourly records\n";
    out << "zones:       " << data.temperatures.zones().size() << "\n";
    out << "unit pool:   " << data.unit_pool.prototypes.size()
        << " prototypes\n";
    const auto windows = covered_season_windows(data);
    out << "season windows covered: ";
    for (std::size_t i = 0; i < windows.size(); ++i) {
      if (i > 0) out << ", ";
      out << windows[i].year;
    }
    out << "\n";
    for (const auto& w : data.warnings) out << "warning: " << w << "\n";
    for (const auto& g : data.gap_notes) out << "gap: " << g << "\n";
    out << "ok\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return classify_error(e);
  }
}

inline int cmd_synth(const SynthParams& params,
                     const std::filesystem::path& out_dir, std::ostream& out,
                     std::ostream& err) {
  try {
    const Dataset data = generate_synthetic(params);
    write_dataset_csv(data, out_dir);
    write_scenario_json(default_scenario_config(params),
                        out_dir / "scenario.json");
    out << "wrote dataset (" << data.electricity.size()
        << " hourly records, " << data.gas_gwh.size() << " days, "
        << data.temperatures.zones().size() << " zones) and scenario.json to "
        << out_dir.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return classify_error(e);
  }
}

struct RunOptions {
  std::optional<std::string> models;       // m0|m1|m2|all
  std::optional<std::string> param_set;    // set name or "all"
  std::optional<std::string> demand_mode;  // empirical|temperature
  std::optional<double> grid_step_mw;
  std::optional<std::uint64_t> seed;
  std::optional<int> years;                // horizon override
  bool dump_distributions{false};
};

namespace detail {

inline void apply_overrides(ScenarioConfig& cfg, const RunOptions& opts) {
  if (opts.models) {
    if (*opts.models == "all") {
      cfg.models = {HeatModel::none, HeatModel::from_electricity,
                    HeatModel::from_gas};
    } else {
      const auto model = model_from_tag(*opts.models);
      if (!model) {
        throw ConfigError("--models must be m0, m1, m2 or all, got '" +
                          *opts.models + "'");
      }
      cfg.models = {*model};
    }
  }
  if (opts.param_set) {
    if (*opts.param_set != "all") {
      for (const auto& s : cfg.param_sets) {
        if (s.name == *opts.param_set) {
          cfg.param_sets = {s};
          break;
        }
      }
      if (cfg.param_sets.size() != 1 ||
          cfg.param_sets[0].name != *opts.param_set) {
        throw ConfigError("--param-set '" + *opts.param_set +
                          "' not found in config");
      }
    }
  } else if (!cfg.param_sets.empty()) {
    // Default: the first parameter set in the config.
    cfg.param_sets.resize(1);
  }
  if (opts.demand_mode) {
    const auto mode = demand_mode_from_tag(*opts.demand_mode);
    if (!mode) {
      throw ConfigError("--demand-mode must be empirical or temperature, "
                        "got '" + *opts.demand_mode + "'");
    }
    cfg.demand_mode = *mode;
  }
  if (opts.grid_step_mw) cfg.grid_step_mw = *opts.grid_step_mw;
  if (opts.seed) cfg.rng_seed = *opts.seed;
  if (opts.years) cfg.horizon_years = *opts.years;
}

inline std::string dump_stem(const AdequacyReport& r) {
  return std::to_string(r.year) + "_" + std::string(model_tag(r.model)) +
         "_" + r.param_set;
}

}  // namespace detail

inline int cmd_run(const std::filesystem::path& config_path,
                   const std::filesystem::path& data_dir,
                   const std::filesystem::path& out_dir,
                   const RunOptions& opts, std::ostream& out,
                   std::ostream& err) {
  try {
    ScenarioConfig cfg = parse_scenario_config(config_path);
    detail::apply_overrides(cfg, opts);
    validate_config(cfg);
    const Dataset data = load_dataset(DatasetPaths::in_dir(data_dir));
    std::filesystem::create_directories(out_dir);

    std::set<int> dumped_years;
    RowSink sink;
    if (opts.dump_distributions) {
      sink = [&](const AdequacyReport& r, const RunArtifacts& a) {
        const std::string stem = detail::dump_stem(r);
        {
          std::vector<std::string> rows;
          rows.reserve(a.margin.size());
          for (std::size_t i = 0; i < a.margin.size(); ++i) {
            rows.push_back(format_double(a.margin.value_at(i)) + "," +
                           format_double(a.margin.probability_at(i)));
          }
          write_csv(out_dir / ("margin_pmf_" + stem + ".csv"),
                    "value_mw,probability", rows);
        }
        {
          std::vector<std::string> rows;
          rows.reserve(a.peak.size());
          long double cum = 0.0L;
          for (std::size_t i = 0; i < a.peak.size(); ++i) {
            cum += a.peak.probability_at(i);
            const double sf =
                std::max(0.0, static_cast<double>(1.0L - cum));
            rows.push_back(format_double(a.peak.value_at(i)) + "," +
                           format_double(sf));
          }
          write_csv(out_dir / ("peak_sf_" + stem + ".csv"),
                    "value_mw,survival", rows);
        }
        if (dumped_years.insert(r.year).second) {
          std::vector<std::string> rows;
          rows.reserve(a.generation.size());
          long double cum = 0.0L;
          for (std::size_t i = 0; i < a.generation.size(); ++i) {
            cum += a.generation.probability_at(i);
            rows.push_back(format_double(a.generation.value_at(i)) + "," +
                           format_double(static_cast<double>(cum)));
          }
          write_csv(out_dir / ("generation_cdf_" + std::to_string(r.year) +
                               ".csv"),
                    "value_mw,cdf", rows);
        }
      };
    }

    const std::vector<AdequacyReport> rows = run_scenario(cfg, data, sink);
    write_report_csv(rows, cfg.rng_seed, out_dir / "report.csv");
    write_report_text(rows, cfg, covered_season_windows(data),
                      out_dir / "report.txt");
    out << "wrote " << rows.size() << " report rows to " << out_dir.string()
        << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return classify_error(e);
  }
}

}  // namespace heatmargin
