/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "heatmargin/errors.hpp"
#include "heatmargin/series.hpp"

namespace heatmargin {

// One weather zone: its minimum-daily-temperature series and a raw weight
// (proportional to zonal peak demand); weights are normalized on use.
struct TemperatureZone {
  std::string zone_id;
  double weight{};
  DailySeries tmin_c;

  friend bool operator==(const TemperatureZone&,
                         const TemperatureZone&) = default;
};

class ZonalTemperatures {
 public:
  ZonalTemperatures() = default;

  explicit ZonalTemperatures(std::vector<TemperatureZone> zones)
      : zones_(std::move(zones)) {
    if (zones_.empty()) {
      throw EmptyData("zonal temperatures: need at least one zone");
    }
    std::set<std::string> ids;
    double total = 0.0;
    for (const auto& z : zones_) {
      if (!ids.insert(z.zone_id).second) {
        throw InvalidValue("zonal temperatures: duplicate zone '" + z.zone_id +
                           "'");
      }
      if (!std::isfinite(z.weight) || z.weight < 0) {
        throw InvalidValue("zonal temperatures: zone '" + z.zone_id +
                           "' weight must be >= 0");
      }
      total += z.weight;
    }
    if (!(total > 0)) {
      throw InvalidValue("zonal temperatures: weights sum to zero");
    }
  }

  const std::vector<TemperatureZone>& zones() const { return zones_; }

  friend bool operator==(const ZonalTemperatures&,
                         const ZonalTemperatures&) = default;

 private:
  std::vector<TemperatureZone> zones_;
};

// Weighted sum of zonal temperatures on the dates every zone covers.
inline DailySeries composite_temperature(const ZonalTemperatures& z) {
  const auto& zones = z.zones();
  double total = 0.0;
  for (const auto& zone : zones) total += zone.weight;

  // Start from the first zone's dates and keep only dates all zones share.
  std::vector<DailyRecord> acc;
  for (const auto& r : zones[0].tmin_c.records()) {
    acc.push_back({r.date, (zones[0].weight / total) * r.value});
  }
  for (std::size_t zi = 1; zi < zones.size(); ++zi) {
    const double w = zones[zi].weight / total;
    const auto& recs = zones[zi].tmin_c.records();
    std::vector<DailyRecord> merged;
    std::size_t i = 0, j = 0;
    while (i < acc.size() && j < recs.size()) {
      if (acc[i].date < recs[j].date) {
        ++i;
      } else if (recs[j].date < acc[i].date) {
        ++j;
      } else {
        merged.push_back({acc[i].date, acc[i].value + w * recs[j].value});
        ++i;
        ++j;
      }
    }
    acc = std::move(merged);
  }
  if (acc.empty()) {
    throw AlignmentError("composite temperature: zones share no dates");
  }
  return DailySeries(std::move(acc));
}

// Ordinary least squares of daily demand on daily temperature.
struct RegressionFit {
  double k_t{};        // slope, MW/degC
  double d0{};         // intercept, MW
  double se_kt{};      // classical homoskedastic slope standard error
  double r_squared{};  // coefficient of determination, clamped to [0,1]
  int n_points{};

  friend bool operator==(const RegressionFit&, const RegressionFit&) = default;
};

inline RegressionFit fit_temperature_regression(const DailySeries& d_daily,
                                                const DailySeries& t_daily) {
  const auto pairs = join_on_dates(d_daily, t_daily);  // (demand, temp)
  const std::size_t n = pairs.size();
  if (n == 0) {
    throw AlignmentError("regression: series share no dates");
  }
  if (n < 3) {
    throw InvalidSeries("regression: need at least 3 overlapping dates, got " +
                        std::to_string(n));
  }
  long double sd = 0.0L, st = 0.0L;
  for (const auto& [dv, tv] : pairs) {
    sd += dv;
    st += tv;
  }
  const long double md = sd / static_cast<long double>(n);
  const long double mt = st / static_cast<long double>(n);
  long double stt = 0.0L, std_ = 0.0L;
  for (const auto& [dv, tv] : pairs) {
    const long double dt = tv - mt;
    stt += dt * dt;
    std_ += dt * (dv - md);
  }
  if (stt == 0.0L) {
    throw DegenerateRegressor("regression: temperature has no variation");
  }
  const long double slope = std_ / stt;
  const long double intercept = md - slope * mt;
  long double ssr = 0.0L, sst = 0.0L;
  for (const auto& [dv, tv] : pairs) {
    const long double resid = dv - (intercept + slope * tv);
    ssr += resid * resid;
    const long double dev = dv - md;
    sst += dev * dev;
  }
  const long double se =
      std::sqrt((ssr / static_cast<long double>(n - 2)) / stt);
  double r2 = sst > 0.0L ? static_cast<double>(1.0L - ssr / sst) : 1.0;
  r2 = std::clamp(r2, 0.0, 1.0);
  return {static_cast<double>(slope), static_cast<double>(intercept),
          static_cast<double>(se), r2, static_cast<int>(n)};
}

}  // namespace heatmargin
