/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "heatmargin/errors.hpp"

namespace heatmargin {

// All timestamps are UTC. Hourly data is stamped on the hour.
using HourPoint = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

constexpr std::chrono::seconds kHour{3600};

inline Date date_of(HourPoint t) {
  return std::chrono::floor<std::chrono::days>(t);
}

inline int year_of(Date d) {
  return static_cast<int>(std::chrono::year_month_day{d}.year());
}

namespace detail {

inline bool parse_int(std::string_view s, std::size_t pos, std::size_t len,
                      int& out) {
  if (pos + len > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    const char c = s[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

}  // namespace detail

// Parses "YYYY-MM-DD". Returns nullopt on any malformation.
inline std::optional<Date> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y{}, m{}, d{};
  if (!detail::parse_int(s, 0, 4, y) || !detail::parse_int(s, 5, 2, m) ||
      !detail::parse_int(s, 8, 2, d)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{
      std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
      std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

// Parses "YYYY-MM-DDTHH:MM:SSZ". Returns nullopt on any malformation.
inline std::optional<HourPoint> parse_timestamp(std::string_view s) {
  if (s.size() != 20 || s[10] != 'T' || s[13] != ':' || s[16] != ':' ||
      s[19] != 'Z') {
    return std::nullopt;
  }
  const auto date = parse_date(s.substr(0, 10));
  if (!date) return std::nullopt;
  int hh{}, mm{}, ss{};
  if (!detail::parse_int(s, 11, 2, hh) || !detail::parse_int(s, 14, 2, mm) ||
      !detail::parse_int(s, 17, 2, ss)) {
    return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
  return HourPoint{*date} + std::chrono::hours{hh} + std::chrono::minutes{mm} +
         std::chrono::seconds{ss};
}

inline std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

inline std::string format_timestamp(HourPoint t) {
  const Date d = date_of(t);
  const std::chrono::hh_mm_ss tod{t - HourPoint{d}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02ld:%02ld:%02ldZ",
                format_date(d).c_str(),
                static_cast<long>(tod.hours().count()),
                static_cast<long>(tod.minutes().count()),
                static_cast<long>(tod.seconds().count()));
  return buf;
}

// One winter evaluation window: twenty whole weeks (3360 hours) starting at
// 00:00 UTC on the first Sunday of November of the given calendar year.
struct SeasonWindow {
  int year{};
  HourPoint start{};
  HourPoint end{};  // exclusive
  std::int64_t n_hours{};
};

inline SeasonWindow season_window(int year) {
  using namespace std::chrono;
  const sys_days first_sunday{
      year_month_weekday{std::chrono::year{year}, November, Sunday[1]}};
  const HourPoint start{first_sunday};
  constexpr std::int64_t hours_per_window = 20 * 7 * 24;
  return {year, start, start + kHour * hours_per_window, hours_per_window};
}

}  // namespace heatmargin
