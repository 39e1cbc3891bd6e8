/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "heatmargin/csv.hpp"
#include "heatmargin/errors.hpp"
#include "heatmargin/generation.hpp"
#include "heatmargin/series.hpp"
#include "heatmargin/timeutil.hpp"
#include "heatmargin/weather.hpp"

namespace heatmargin {

// Everything a scenario run consumes, validated and gap-policied at load.
struct Dataset {
  HourlySeries electricity;    // MW
  DailySeries gas_gwh;         // GWh/day
  WindSeries wind;             // capacity factors
  ZonalTemperatures temperatures;
  UnitPool unit_pool;
  std::vector<std::string> warnings;   // non-fatal validation notes
  std::vector<std::string> gap_notes;  // gaps too long to interpolate
};

struct DatasetPaths {
  std::filesystem::path electricity;
  std::filesystem::path gas;
  std::filesystem::path wind;
  std::filesystem::path temperature;
  std::filesystem::path zones;
  std::filesystem::path unit_pool;

  static DatasetPaths in_dir(const std::filesystem::path& dir) {
    return {dir / "electricity.csv", dir / "gas_ndm.csv", dir / "wind_cf.csv",
            dir / "temperature.csv", dir / "zones.csv", dir / "unit_pool.csv"};
  }
};

namespace detail {

// Gap policy for hourly files: runs of 1..3 missing hours are filled by
// linear interpolation per column; longer runs stay as gaps and are noted.
inline void note_gap(std::vector<std::string>* notes, const std::string& file,
                     HourPoint after, HourPoint before,
                     std::int64_t missing_hours) {
  if (notes == nullptr) return;
  notes->push_back(file + ": gap of " + std::to_string(missing_hours) +
                   " h between " + format_timestamp(after) + " and " +
                   format_timestamp(before) + " left unfilled");
}

}  // namespace detail

inline HourlySeries load_electricity(const std::filesystem::path& path,
                                     std::vector<std::string>* gap_notes =
                                         nullptr) {
  CsvReader csv(path, {"timestamp", "demand_mw"});
  std::vector<HourlyRecord> rows;
  std::vector<std::string> fields;
  while (csv.next(fields)) {
    const auto t = parse_timestamp(fields[0]);
    if (!t) {
      throw ParseError(csv.where(0) + ": bad timestamp '" + fields[0] + "'");
    }
    if (t->time_since_epoch() % kHour != std::chrono::seconds{0}) {
      throw ParseError(csv.where(0) + ": timestamp not on the hour");
    }
    if (!rows.empty() && *t <= rows.back().t) {
      throw ParseError(csv.where(0) + ": timestamps must strictly increase");
    }
    const double v = csv.parse_double(fields, 1);
    if (!std::isfinite(v)) {
      throw ParseError(csv.where(1) + ": non-finite value");
    }
    rows.push_back({*t, v});
  }
  // Interpolate short gaps.
  std::vector<HourlyRecord> filled;
  filled.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) {
      const std::int64_t missing =
          (rows[i].t - rows[i - 1].t) / kHour - 1;
      if (missing >= 1 && missing <= 3) {
        for (std::int64_t k = 1; k <= missing; ++k) {
          const double f = static_cast<double>(k) /
                           static_cast<double>(missing + 1);
          filled.push_back({rows[i - 1].t + kHour * k,
                            rows[i - 1].value +
                                f * (rows[i].value - rows[i - 1].value)});
        }
      } else if (missing > 3) {
        detail::note_gap(gap_notes, path.filename().string(), rows[i - 1].t,
                         rows[i].t, missing);
      }
    }
    filled.push_back(rows[i]);
  }
  return HourlySeries(std::move(filled));
}

inline DailySeries load_gas(const std::filesystem::path& path) {
  CsvReader csv(path, {"date", "energy_gwh"});
  std::vector<DailyRecord> rows;
  std::vector<std::string> fields;
  while (csv.next(fields)) {
    const auto d = parse_date(fields[0]);
    if (!d) {
      throw ParseError(csv.where(0) + ": bad date '" + fields[0] + "'");
    }
    if (!rows.empty() && *d <= rows.back().date) {
      throw ParseError(csv.where(0) + ": dates must strictly increase");
    }
    const double v = csv.parse_double(fields, 1);
    if (!std::isfinite(v) || v < 0) {
      throw ParseError(csv.where(1) + ": energy must be >= 0, got '" +
                       fields[1] + "'");
    }
    rows.push_back({*d, v});
  }
  return DailySeries(std::move(rows));
}

inline WindSeries load_wind(const std::filesystem::path& path,
                            std::vector<std::string>* gap_notes = nullptr) {
  CsvReader csv(path, {"timestamp", "cf_onshore", "cf_offshore"});
  std::vector<WindRecord> rows;
  std::vector<std::string> fields;
  while (csv.next(fields)) {
    const auto t = parse_timestamp(fields[0]);
    if (!t) {
      throw ParseError(csv.where(0) + ": bad timestamp '" + fields[0] + "'");
    }
    if (t->time_since_epoch() % kHour != std::chrono::seconds{0}) {
      throw ParseError(csv.where(0) + ": timestamp not on the hour");
    }
    if (!rows.empty() && *t <= rows.back().t) {
      throw ParseError(csv.where(0) + ": timestamps must strictly increase");
    }
    double cf[2];
    for (std::size_t c = 0; c < 2; ++c) {
      cf[c] = csv.parse_double(fields, c + 1);
      if (!std::isfinite(cf[c]) || cf[c] < 0 || cf[c] > 1) {
        throw ParseError(csv.where(c + 1) + ": value " + fields[c + 1] +
                         " outside [0,1]");
      }
    }
    rows.push_back({*t, cf[0], cf[1]});
  }
  std::vector<WindRecord> filled;
  filled.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) {
      const std::int64_t missing = (rows[i].t - rows[i - 1].t) / kHour - 1;
      if (missing >= 1 && missing <= 3) {
        for (std::int64_t k = 1; k <= missing; ++k) {
          const double f = static_cast<double>(k) /
                           static_cast<double>(missing + 1);
          filled.push_back(
              {rows[i - 1].t + kHour * k,
               rows[i - 1].cf_onshore +
                   f * (rows[i].cf_onshore - rows[i - 1].cf_onshore),
               rows[i - 1].cf_offshore +
                   f * (rows[i].cf_offshore - rows[i - 1].cf_offshore)});
        }
      } else if (missing > 3) {
        detail::note_gap(gap_notes, path.filename().string(), rows[i - 1].t,
                         rows[i].t, missing);
      }
    }
    filled.push_back(rows[i]);
  }
  return WindSeries(std::move(filled));
}

inline ZonalTemperatures load_temperatures(
    const std::filesystem::path& temperature_path,
    const std::filesystem::path& zones_path) {
  // Zone weights come from zonal peak demand; file order fixes zone order.
  std::vector<std::pair<std::string, double>> zone_weights;
  {
    CsvReader csv(zones_path, {"zone_id", "peak_demand_mw"});
    std::vector<std::string> fields;
    std::set<std::string> seen;
    while (csv.next(fields)) {
      if (fields[0].empty()) {
        throw ParseError(csv.where(0) + ": empty zone_id");
      }
      if (!seen.insert(fields[0]).second) {
        throw ParseError(csv.where(0) + ": duplicate zone '" + fields[0] +
                         "'");
      }
      const double w = csv.parse_double(fields, 1);
      if (!std::isfinite(w) || w <= 0) {
        throw ParseError(csv.where(1) + ": peak demand must be > 0");
      }
      zone_weights.emplace_back(fields[0], w);
    }
    if (zone_weights.empty()) {
      throw ParseError(zones_path.string() + ": no zones defined");
    }
  }

  std::map<std::string, std::vector<DailyRecord>> per_zone;
  {
    CsvReader csv(temperature_path, {"date", "zone_id", "tmin_c"});
    std::vector<std::string> fields;
    std::set<std::string> known;
    for (const auto& [id, w] : zone_weights) {
      (void)w;
      known.insert(id);
    }
    while (csv.next(fields)) {
      const auto d = parse_date(fields[0]);
      if (!d) {
        throw ParseError(csv.where(0) + ": bad date '" + fields[0] + "'");
      }
      if (known.find(fields[1]) == known.end()) {
        throw ParseError(csv.where(1) + ": zone '" + fields[1] +
                         "' not present in zones file");
      }
      const double v = csv.parse_double(fields, 2);
      if (!std::isfinite(v)) {
        throw ParseError(csv.where(2) + ": non-finite temperature");
      }
      auto& recs = per_zone[fields[1]];
      if (!recs.empty() && *d <= recs.back().date) {
        throw ParseError(csv.where(0) + ": dates must strictly increase "
                         "within zone '" + fields[1] + "'");
      }
      recs.push_back({*d, v});
    }
  }

  std::vector<TemperatureZone> zones;
  for (const auto& [id, w] : zone_weights) {
    const auto it = per_zone.find(id);
    if (it == per_zone.end()) {
      throw ParseError(temperature_path.string() + ": zone '" + id +
                       "' has no temperature records");
    }
    zones.push_back({id, w, DailySeries(it->second)});
  }
  return ZonalTemperatures(std::move(zones));
}

// Availability outside this band is legal but unusual for conventional
// plant, so it is surfaced as a warning (interconnectors sit below it by
// design and are exempt).
inline constexpr double kAvailabilityWarnLow = 0.81;
inline constexpr double kAvailabilityWarnHigh = 0.97;

inline UnitPool load_unit_pool(const std::filesystem::path& path,
                               std::vector<std::string>* warnings = nullptr) {
  CsvReader csv(path, {"unit_id", "technology", "capacity_mw",
                       "availability"});
  UnitPool pool;
  std::vector<std::string> fields;
  std::set<std::string> ids;
  while (csv.next(fields)) {
    if (fields[0].empty()) {
      throw ParseError(csv.where(0) + ": empty unit_id");
    }
    if (!ids.insert(fields[0]).second) {
      throw ParseError(csv.where(0) + ": duplicate unit_id '" + fields[0] +
                       "'");
    }
    if (fields[1].empty()) {
      throw ParseError(csv.where(1) + ": empty technology");
    }
    const double cap = csv.parse_double(fields, 2);
    if (!std::isfinite(cap) || cap <= 0) {
      throw ParseError(csv.where(2) + ": capacity must be > 0, got '" +
                       fields[2] + "'");
    }
    const double avail = csv.parse_double(fields, 3);
    if (!std::isfinite(avail) || avail <= 0 || avail > 1) {
      throw ParseError(csv.where(3) + ": availability must be in (0,1], "
                       "got '" + fields[3] + "'");
    }
    if (warnings != nullptr && fields[1] != "interconnector" &&
        (avail < kAvailabilityWarnLow || avail > kAvailabilityWarnHigh)) {
      warnings->push_back(csv.where(3) + ": availability " + fields[3] +
                          " outside the usual band [" +
                          format_double(kAvailabilityWarnLow) + ", " +
                          format_double(kAvailabilityWarnHigh) + "]");
    }
    pool.prototypes.push_back({fields[0], fields[1], cap, avail});
  }
  if (pool.prototypes.empty()) {
    throw ParseError(path.string() + ": unit pool is empty");
  }
  return pool;
}

// Coverage of one candidate winter window by every series in the dataset.
struct CoverageReport {
  std::vector<SeasonWindow> covered;
  std::vector<std::string> notes;  // why candidate windows were rejected
};

inline CoverageReport coverage_report(const Dataset& data) {
  CoverageReport report;
  if (data.electricity.empty()) {
    report.notes.emplace_back("electricity series is empty");
    return report;
  }
  const int y_first = year_of(date_of(data.electricity[0].t)) - 1;
  const int y_last =
      year_of(date_of(data.electricity[data.electricity.size() - 1].t));

  const auto hourly_count = [](const auto& records, HourPoint lo,
                               HourPoint hi) {
    const auto cmp = [](const auto& r, HourPoint t) { return r.t < t; };
    const auto a = std::lower_bound(records.begin(), records.end(), lo, cmp);
    const auto b = std::lower_bound(records.begin(), records.end(), hi, cmp);
    return static_cast<std::int64_t>(b - a);
  };
  const auto daily_count = [](const DailySeries& s, Date lo, Date hi) {
    const auto cmp = [](const DailyRecord& r, Date d) { return r.date < d; };
    const auto& records = s.records();
    const auto a = std::lower_bound(records.begin(), records.end(), lo, cmp);
    const auto b = std::lower_bound(records.begin(), records.end(), hi, cmp);
    return static_cast<std::int64_t>(b - a);
  };

  for (int y = y_first; y <= y_last; ++y) {
    const SeasonWindow w = season_window(y);
    const Date d_lo = date_of(w.start), d_hi = date_of(w.end);
    const std::int64_t n_days = (d_hi - d_lo).count();
    const std::string label = "season window " + std::to_string(y) + " (" +
                              format_date(d_lo) + ".." + format_date(d_hi) +
                              ")";
    // Skip candidates wholly outside the data span quietly.
    if (HourPoint{w.end} <= data.electricity[0].t ||
        w.start > data.electricity[data.electricity.size() - 1].t) {
      continue;
    }
    bool ok = true;
    const std::int64_t ne =
        hourly_count(data.electricity.records(), w.start, w.end);
    if (ne != w.n_hours) {
      report.notes.push_back(label + ": electricity has " +
                             std::to_string(ne) + " of " +
                             std::to_string(w.n_hours) + " hours");
      ok = false;
    }
    const std::int64_t nw = hourly_count(data.wind.records(), w.start, w.end);
    if (nw != w.n_hours) {
      report.notes.push_back(label + ": wind has " + std::to_string(nw) +
                             " of " + std::to_string(w.n_hours) + " hours");
      ok = false;
    }
    const std::int64_t ng = daily_count(data.gas_gwh, d_lo, d_hi);
    if (ng != n_days) {
      report.notes.push_back(label + ": gas has " + std::to_string(ng) +
                             " of " + std::to_string(n_days) + " days");
      ok = false;
    }
    for (const auto& z : data.temperatures.zones()) {
      const std::int64_t nt = daily_count(z.tmin_c, d_lo, d_hi);
      if (nt != n_days) {
        report.notes.push_back(label + ": temperature zone '" + z.zone_id +
                               "' has " + std::to_string(nt) + " of " +
                               std::to_string(n_days) + " days");
        ok = false;
      }
    }
    if (ok) report.covered.push_back(w);
  }
  return report;
}

inline std::vector<SeasonWindow> covered_season_windows(const Dataset& data) {
  return coverage_report(data).covered;
}

inline Dataset load_dataset(const DatasetPaths& paths) {
  Dataset data;
  data.electricity = load_electricity(paths.electricity, &data.gap_notes);
  data.gas_gwh = load_gas(paths.gas);
  data.wind = load_wind(paths.wind, &data.gap_notes);
  data.temperatures = load_temperatures(paths.temperature, paths.zones);
  data.unit_pool = load_unit_pool(paths.unit_pool, &data.warnings);

  const CoverageReport cov = coverage_report(data);
  if (cov.covered.empty()) {
    std::string msg = "no complete season window in the dataset";
    for (const auto& note : cov.notes) msg += "\n  " + note;
    throw DataCoverageError(msg);
  }
  return data;
}

}  // namespace heatmargin
