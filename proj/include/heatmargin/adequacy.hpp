/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "heatmargin/demand.hpp"
#include "heatmargin/errors.hpp"
#include "heatmargin/probdist.hpp"
#include "heatmargin/weather.hpp"

namespace heatmargin {

// Distribution of the system margin; support may be negative.
using MarginDistribution = CapacityDistribution;

inline void require_periods(std::int64_t n_periods, const char* op) {
  if (n_periods < 1) {
    throw InvalidParams(std::string(op) + ": n_periods must be >= 1, got " +
                        std::to_string(n_periods));
  }
}

// Margin = generation minus demand, as a convolution of independent parts.
inline MarginDistribution margin_distribution(
    const CapacityDistribution& gen, const CapacityDistribution& demand) {
  return convolve(gen, negate(demand));
}

// Expected hours per year with strictly negative margin; zero margin is
// adequate. The support test is exact integer index arithmetic.
inline double lole(const MarginDistribution& z, std::int64_t n_periods) {
  require_periods(n_periods, "lole");
  long double p_short = 0.0L;
  const std::int64_t negative_cells = -z.origin_index();
  for (std::int64_t i = 0; i < negative_cells &&
                           i < static_cast<std::int64_t>(z.size());
       ++i) {
    p_short += z.probabilities()[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(n_periods) * static_cast<double>(p_short);
}

// Expected unserved energy per year in MWh; periods are one hour each.
inline double eeu(const MarginDistribution& z, std::int64_t n_periods) {
  require_periods(n_periods, "eeu");
  long double shortfall = 0.0L;
  const std::int64_t negative_cells = -z.origin_index();
  for (std::int64_t i = 0; i < negative_cells &&
                           i < static_cast<std::int64_t>(z.size());
       ++i) {
    shortfall += static_cast<long double>(
                     z.probabilities()[static_cast<std::size_t>(i)]) *
                 (-z.value_at(static_cast<std::size_t>(i)));
  }
  return static_cast<double>(n_periods) * static_cast<double>(shortfall);
}

// Distribution of the maximum of n_periods independent demand draws:
// F_peak = F_demand^N on the demand grid, then first differences.
inline CapacityDistribution peak_distribution(
    const CapacityDistribution& demand, std::int64_t n_periods) {
  require_periods(n_periods, "peak");
  const auto& probs = demand.probabilities();
  const auto n = static_cast<double>(n_periods);
  std::vector<double> pmf(probs.size(), 0.0);
  long double cum = 0.0L;
  double prev_pow = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    const double powed = std::pow(static_cast<double>(cum), n);
    pmf[i] = powed - prev_pow;
    prev_pow = powed;
  }
  return {demand.grid_step(), demand.origin_index(), std::move(pmf)};
}

struct PeakSummary {
  double q95_mw{};
  double iqr_mw{};
};

inline PeakSummary peak_summary(const CapacityDistribution& peak) {
  return {peak.quantile(0.95), peak.quantile(0.75) - peak.quantile(0.25)};
}

// One evaluated (year, model, parameter-set) cell of a scenario run.
struct AdequacyReport {
  int year{};
  HeatModel model{};
  std::string param_set;
  double lole_hrs_yr{};
  double eeu_mwh_yr{};
  double peak_q95_mw{};
  double peak_iqr_mw{};
  RegressionFit regression{};
  std::int64_t n_periods{};
};

}  // namespace heatmargin
