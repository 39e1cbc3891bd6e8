/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heatmargin/errors.hpp"
#include "heatmargin/series.hpp"
#include "heatmargin/timeutil.hpp"

namespace heatmargin {

// How heat demand is represented on top of underlying electrical demand:
// none at all, scaled from the electricity profile, or scaled from the
// (daily, evenly spread) gas profile.
enum class HeatModel { none, from_electricity, from_gas };

inline std::string_view model_tag(HeatModel m) {
  switch (m) {
    case HeatModel::none:
      return "m0";
    case HeatModel::from_electricity:
      return "m1";
    case HeatModel::from_gas:
      return "m2";
  }
  return "?";
}

inline std::optional<HeatModel> model_from_tag(std::string_view tag) {
  if (tag == "m0") return HeatModel::none;
  if (tag == "m1") return HeatModel::from_electricity;
  if (tag == "m2") return HeatModel::from_gas;
  return std::nullopt;
}

// Knobs of the heat-demand representation. Energies are annual TWh; the
// growth step eps_delta_h_twh is TWh/yr added per year of electrification.
struct HeatParams {
  double eps_delta_h_twh{12.5};
  double eps_e_twh{285.0};
  double eps_g_twh{440.0};
  double k_dsr{1.0};
  double k_cop{1.9};
  HeatModel model{HeatModel::none};
  int years_of_growth{0};
  double reserve_mw{1320.0};
};

inline void validate_heat_params(const HeatParams& p) {
  if (!std::isfinite(p.k_dsr) || p.k_dsr <= 0) {
    throw InvalidParams("heat params: k_dsr must be > 0");
  }
  if (!std::isfinite(p.k_cop) || p.k_cop <= 0) {
    throw InvalidParams("heat params: k_cop must be > 0");
  }
  if (!std::isfinite(p.eps_delta_h_twh) || p.eps_delta_h_twh < 0) {
    throw InvalidParams("heat params: eps_delta_h must be >= 0");
  }
  if (p.years_of_growth < 0) {
    throw InvalidParams("heat params: years_of_growth must be >= 0");
  }
  if (!std::isfinite(p.reserve_mw) || p.reserve_mw < 0) {
    throw InvalidParams("heat params: reserve must be >= 0");
  }
  if (p.model == HeatModel::from_electricity &&
      (!std::isfinite(p.eps_e_twh) || p.eps_e_twh <= 0)) {
    throw InvalidParams("heat params: eps_e must be > 0 for model m1");
  }
  if (p.model == HeatModel::from_gas &&
      (!std::isfinite(p.eps_g_twh) || p.eps_g_twh <= 0)) {
    throw InvalidParams("heat params: eps_g must be > 0 for model m2");
  }
}

// Removes the long-term linear trend (ordinary least squares on hours since
// the first record), re-anchors the series to its final time, then scales
// uniformly so the maximum equals target_peak exactly.
inline HourlySeries detrend_and_rescale(const HourlySeries& e_raw,
                                        double target_peak_mw) {
  if (e_raw.size() < 2) {
    throw InvalidSeries("detrend: need at least 2 records, got " +
                        std::to_string(e_raw.size()));
  }
  if (!std::isfinite(target_peak_mw) || target_peak_mw <= 0) {
    throw InvalidValue("detrend: target peak must be > 0");
  }
  const HourPoint t0 = e_raw[0].t;
  const auto hours_since_start = [t0](HourPoint t) {
    return static_cast<double>((t - t0).count()) / 3600.0;
  };
  long double sx = 0.0L, sy = 0.0L;
  const auto n = static_cast<long double>(e_raw.size());
  for (const auto& r : e_raw.records()) {
    sx += hours_since_start(r.t);
    sy += r.value;
  }
  const long double mx = sx / n, my = sy / n;
  long double sxx = 0.0L, sxy = 0.0L;
  for (const auto& r : e_raw.records()) {
    const long double dx = hours_since_start(r.t) - mx;
    sxx += dx * dx;
    sxy += dx * (r.value - my);
  }
  const double slope = static_cast<double>(sxy / sxx);
  const double t_end = hours_since_start(e_raw[e_raw.size() - 1].t);

  std::vector<HourlyRecord> out;
  out.reserve(e_raw.size());
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& r : e_raw.records()) {
    const double v = r.value - slope * (hours_since_start(r.t) - t_end);
    peak = std::max(peak, v);
    out.push_back({r.t, v});
  }
  if (!(peak > 0)) {
    throw InvalidValue("detrend: non-positive peak after detrending");
  }
  // v/peak*target maps the maximum to the target exactly.
  for (auto& r : out) r.value = r.value / peak * target_peak_mw;
  return HourlySeries(std::move(out));
}

// Daily gas energy spread evenly over its 24 hours, in MW.
inline HourlySeries spread_daily_to_hourly(const DailySeries& gas_gwh) {
  std::vector<HourlyRecord> out;
  out.reserve(gas_gwh.size() * 24);
  for (const auto& r : gas_gwh.records()) {
    if (r.value < 0) {
      throw InvalidValue("gas spread: negative energy on " +
                         format_date(r.date) + ": " +
                         std::to_string(r.value));
    }
    const double mw = r.value * 1000.0 / 24.0;
    const HourPoint midnight{r.date};
    for (int h = 0; h < 24; ++h) {
      out.push_back({midnight + kHour * h, mw});
    }
  }
  return HourlySeries(std::move(out));
}

// Fraction of the base profile that reappears as electrified heat after
// years_of_growth years: (years * eps_delta_h) / (eps_base * k_dsr * k_cop),
// with eps_base the annual energy of the profile being scaled.
inline double heat_sensitivity_coefficient(const HeatParams& p) {
  if (p.model == HeatModel::none) {
    throw NotApplicable("heat coefficient: undefined for model m0");
  }
  const double eps_base = p.model == HeatModel::from_electricity
                              ? p.eps_e_twh
                              : p.eps_g_twh;
  const double denom = eps_base * p.k_dsr * p.k_cop;
  if (denom == 0.0) {
    throw InvalidParams("heat coefficient: zero denominator");
  }
  return static_cast<double>(p.years_of_growth) * p.eps_delta_h_twh / denom;
}

// Hourly heat demand under the selected model. The electricity profile
// drives m1, the spread gas profile drives m2, and m0 is identically zero
// (on the electricity timestamps).
inline HourlySeries heat_series(const HeatParams& p, const HourlySeries& e,
                                const HourlySeries& g_hourly) {
  validate_heat_params(p);
  if (p.model == HeatModel::none) {
    std::vector<HourlyRecord> out;
    out.reserve(e.size());
    for (const auto& r : e.records()) out.push_back({r.t, 0.0});
    return HourlySeries(std::move(out));
  }
  const HourlySeries& base =
      p.model == HeatModel::from_electricity ? e : g_hourly;
  if (base.empty()) {
    throw AlignmentError("heat series: no overlap window for model " +
                         std::string(model_tag(p.model)));
  }
  return scale_series(base, heat_sensitivity_coefficient(p));
}

// Total effective demand D_t = E_t + H_t + reserve, pointwise on identical
// timestamp sets.
inline HourlySeries effective_demand_series(const HourlySeries& e,
                                            const HourlySeries& h,
                                            double reserve_mw) {
  if (!std::isfinite(reserve_mw) || reserve_mw < 0) {
    throw InvalidValue("effective demand: reserve must be >= 0");
  }
  if (e.size() != h.size()) {
    throw AlignmentError(
        "effective demand: timestamp sets differ in length (" +
        std::to_string(e.size()) + " vs " + std::to_string(h.size()) + ")");
  }
  std::vector<HourlyRecord> out;
  out.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i].t != h[i].t) {
      throw AlignmentError("effective demand: timestamp mismatch at " +
                           format_timestamp(e[i].t));
    }
    out.push_back({e[i].t, e[i].value + h[i].value + reserve_mw});
  }
  return HourlySeries(std::move(out));
}

}  // namespace heatmargin
