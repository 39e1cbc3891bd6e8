/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "heatmargin/errors.hpp"
#include "heatmargin/timeutil.hpp"

namespace heatmargin {

struct HourlyRecord {
  HourPoint t{};
  double value{};
  friend bool operator==(const HourlyRecord&, const HourlyRecord&) = default;
};

struct DailyRecord {
  Date date{};
  double value{};
  friend bool operator==(const DailyRecord&, const DailyRecord&) = default;
};

// Hour-stamped values. Timestamps are strictly increasing, aligned to the
// hour, and values are finite. Gaps are permitted.
class HourlySeries {
 public:
  HourlySeries() = default;

  explicit HourlySeries(std::vector<HourlyRecord> records)
      : records_(std::move(records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
      if (!std::isfinite(records_[i].value)) {
        throw InvalidValue("hourly series: non-finite value at index " +
                           std::to_string(i));
      }
      if (records_[i].t.time_since_epoch() % kHour !=
          std::chrono::seconds{0}) {
        throw InvalidSeries("hourly series: timestamp not on the hour: " +
                            format_timestamp(records_[i].t));
      }
      if (i > 0 && records_[i].t <= records_[i - 1].t) {
        throw InvalidSeries(
            "hourly series: timestamps not strictly increasing at " +
            format_timestamp(records_[i].t));
      }
    }
  }

  const std::vector<HourlyRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }
  const HourlyRecord& operator[](std::size_t i) const { return records_[i]; }

  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.value);
    return out;
  }

  friend bool operator==(const HourlySeries&, const HourlySeries&) = default;

 private:
  std::vector<HourlyRecord> records_;
};

// Day-stamped values; dates strictly increasing, values finite.
class DailySeries {
 public:
  DailySeries() = default;

  explicit DailySeries(std::vector<DailyRecord> records)
      : records_(std::move(records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
      if (!std::isfinite(records_[i].value)) {
        throw InvalidValue("daily series: non-finite value at index " +
                           std::to_string(i));
      }
      if (i > 0 && records_[i].date <= records_[i - 1].date) {
        throw InvalidSeries("daily series: dates not strictly increasing at " +
                            format_date(records_[i].date));
      }
    }
  }

  const std::vector<DailyRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }
  const DailyRecord& operator[](std::size_t i) const { return records_[i]; }

  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.value);
    return out;
  }

  friend bool operator==(const DailySeries&, const DailySeries&) = default;

 private:
  std::vector<DailyRecord> records_;
};

// Records with t in [start, end).
inline HourlySeries slice(const HourlySeries& s, HourPoint start,
                          HourPoint end) {
  std::vector<HourlyRecord> out;
  for (const auto& r : s.records()) {
    if (r.t >= start && r.t < end) out.push_back(r);
  }
  return HourlySeries(std::move(out));
}

inline DailySeries slice(const DailySeries& s, Date start, Date end) {
  std::vector<DailyRecord> out;
  for (const auto& r : s.records()) {
    if (r.date >= start && r.date < end) out.push_back(r);
  }
  return DailySeries(std::move(out));
}

// Concatenation; pieces must be in increasing time order with no overlap.
inline HourlySeries concat(const std::vector<HourlySeries>& pieces) {
  std::vector<HourlyRecord> out;
  for (const auto& p : pieces) {
    out.insert(out.end(), p.records().begin(), p.records().end());
  }
  return HourlySeries(std::move(out));
}

inline DailySeries concat(const std::vector<DailySeries>& pieces) {
  std::vector<DailyRecord> out;
  for (const auto& p : pieces) {
    out.insert(out.end(), p.records().begin(), p.records().end());
  }
  return DailySeries(std::move(out));
}

inline HourlySeries scale_series(const HourlySeries& s, double factor) {
  std::vector<HourlyRecord> out = s.records();
  for (auto& r : out) r.value *= factor;
  return HourlySeries(std::move(out));
}

// Pointwise sum; the two series must carry identical timestamp sets.
inline HourlySeries add_series(const HourlySeries& a, const HourlySeries& b) {
  if (a.size() != b.size()) {
    throw AlignmentError("series sum: timestamp sets differ in length (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
  std::vector<HourlyRecord> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].t != b[i].t) {
      throw AlignmentError("series sum: timestamp mismatch at " +
                           format_timestamp(a[i].t) + " vs " +
                           format_timestamp(b[i].t));
    }
    out.push_back({a[i].t, a[i].value + b[i].value});
  }
  return HourlySeries(std::move(out));
}

enum class DailyStat { mean, max };

// Collapses hourly records to one value per UTC date.
inline DailySeries aggregate_daily(const HourlySeries& s, DailyStat stat) {
  std::vector<DailyRecord> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const Date d = date_of(s[i].t);
    double acc = s[i].value;
    std::size_t n = 1;
    std::size_t j = i + 1;
    while (j < s.size() && date_of(s[j].t) == d) {
      if (stat == DailyStat::max) {
        acc = std::max(acc, s[j].value);
      } else {
        acc += s[j].value;
      }
      ++n;
      ++j;
    }
    out.push_back({d, stat == DailyStat::max
                          ? acc
                          : acc / static_cast<double>(n)});
    i = j;
  }
  return DailySeries(std::move(out));
}

// Pairs of values on the dates both series cover, in date order.
inline std::vector<std::pair<double, double>> join_on_dates(
    const DailySeries& a, const DailySeries& b) {
  std::vector<std::pair<double, double>> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].date < b[j].date) {
      ++i;
    } else if (b[j].date < a[i].date) {
      ++j;
    } else {
      out.emplace_back(a[i].value, b[j].value);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace heatmargin
