/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "heatmargin/errors.hpp"
#include "heatmargin/probdist.hpp"
#include "heatmargin/series.hpp"
#include "heatmargin/timeutil.hpp"

namespace heatmargin {

// A two-state generating unit: fully available with the given probability,
// otherwise out.
struct GeneratingUnit {
  std::string unit_id;
  std::string technology;
  double capacity_mw{};
  double availability{};

  friend bool operator==(const GeneratingUnit&,
                         const GeneratingUnit&) = default;
};

inline void validate_unit(const GeneratingUnit& u) {
  if (!std::isfinite(u.capacity_mw) || u.capacity_mw <= 0) {
    throw InvalidValue("unit '" + u.unit_id + "': capacity must be > 0, got " +
                       std::to_string(u.capacity_mw));
  }
  if (!std::isfinite(u.availability) || u.availability <= 0 ||
      u.availability > 1) {
    throw InvalidValue("unit '" + u.unit_id +
                       "': availability must be in (0,1], got " +
                       std::to_string(u.availability));
  }
}

// Prototype units a fleet can be synthesized from.
struct UnitPool {
  std::vector<GeneratingUnit> prototypes;
};

// The conventional units plus installed wind capacity for one scenario year.
class Fleet {
 public:
  Fleet(std::vector<GeneratingUnit> units, double c_on_mw, double c_off_mw)
      : units_(std::move(units)), c_on_mw_(c_on_mw), c_off_mw_(c_off_mw) {
    std::set<std::string> ids;
    for (const auto& u : units_) {
      validate_unit(u);
      if (!ids.insert(u.unit_id).second) {
        throw InvalidValue("fleet: duplicate unit_id '" + u.unit_id + "'");
      }
    }
    if (!std::isfinite(c_on_mw_) || c_on_mw_ < 0 || !std::isfinite(c_off_mw_) ||
        c_off_mw_ < 0) {
      throw InvalidValue("fleet: wind capacities must be >= 0");
    }
  }

  const std::vector<GeneratingUnit>& units() const { return units_; }
  double c_on_mw() const { return c_on_mw_; }
  double c_off_mw() const { return c_off_mw_; }

 private:
  std::vector<GeneratingUnit> units_;
  double c_on_mw_{};
  double c_off_mw_{};
};

// Hourly on/offshore capacity factors, combined concurrently per timestamp
// (the two columns share weather; no independence is assumed).
struct WindRecord {
  HourPoint t{};
  double cf_onshore{};
  double cf_offshore{};
  friend bool operator==(const WindRecord&, const WindRecord&) = default;
};

class WindSeries {
 public:
  WindSeries() = default;

  explicit WindSeries(std::vector<WindRecord> records)
      : records_(std::move(records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
      const auto& r = records_[i];
      for (const double cf : {r.cf_onshore, r.cf_offshore}) {
        if (!std::isfinite(cf) || cf < 0 || cf > 1) {
          throw InvalidValue("wind series: capacity factor outside [0,1] at " +
                             format_timestamp(r.t));
        }
      }
      if (r.t.time_since_epoch() % kHour != std::chrono::seconds{0}) {
        throw InvalidSeries("wind series: timestamp not on the hour: " +
                            format_timestamp(r.t));
      }
      if (i > 0 && r.t <= records_[i - 1].t) {
        throw InvalidSeries(
            "wind series: timestamps not strictly increasing at " +
            format_timestamp(r.t));
      }
    }
  }

  const std::vector<WindRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }
  const WindRecord& operator[](std::size_t i) const { return records_[i]; }

  friend bool operator==(const WindSeries&, const WindSeries&) = default;

 private:
  std::vector<WindRecord> records_;
};

// Available capacity of one unit: {0: 1-a, capacity: a} on the grid.
// Capacity snaps to the grid before convolution.
inline CapacityDistribution unit_capacity_distribution(
    const GeneratingUnit& unit, double grid_step) {
  validate_unit(unit);
  return CapacityDistribution::from_points(
      grid_step,
      {{0.0, 1.0 - unit.availability}, {unit.capacity_mw, unit.availability}});
}

// Capacity outage probability table: the distribution of total available
// conventional capacity, by sequential convolution over units.
inline CapacityDistribution build_copt(const Fleet& fleet, double grid_step) {
  if (fleet.units().empty()) {
    throw EmptyFleet("build_copt: fleet has no units");
  }
  CapacityDistribution acc = CapacityDistribution::point_mass(0.0, grid_step);
  for (const auto& u : fleet.units()) {
    acc = convolve(acc, unit_capacity_distribution(u, grid_step));
  }
  return acc;
}

// Hourly wind output in MW from installed capacities and capacity factors.
inline HourlySeries wind_output_series(const WindSeries& wind, double c_on_mw,
                                       double c_off_mw) {
  if (!std::isfinite(c_on_mw) || c_on_mw < 0 || !std::isfinite(c_off_mw) ||
      c_off_mw < 0) {
    throw InvalidValue("wind output: capacities must be >= 0");
  }
  std::vector<HourlyRecord> out;
  out.reserve(wind.size());
  for (const auto& r : wind.records()) {
    out.push_back({r.t, c_on_mw * r.cf_onshore + c_off_mw * r.cf_offshore});
  }
  return HourlySeries(std::move(out));
}

// Distribution of total generation: COPT convolved with the empirical
// distribution of hourly wind output.
inline CapacityDistribution total_generation_distribution(
    const CapacityDistribution& copt, const HourlySeries& wind_mw,
    double grid_step) {
  if (wind_mw.empty()) {
    throw EmptyData("total generation: no wind samples");
  }
  return convolve(copt,
                  CapacityDistribution::from_samples(wind_mw.values(),
                                                     grid_step));
}

}  // namespace heatmargin
