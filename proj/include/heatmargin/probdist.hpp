/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "heatmargin/errors.hpp"

namespace heatmargin {

// Mass drift beyond this is corrected (and recorded); smaller drift is kept
// visible so accumulation bugs surface instead of being masked.
inline constexpr double kMassTolerance = 1e-9;

// Slack applied when comparing cumulative probabilities to a target; absorbs
// rounding in long summation chains (e.g. 95 terms of 0.01).
inline constexpr double kProbabilitySlack = 1e-9;

// Nearest grid multiple of value/grid_step; exact halves round to the even
// multiple. Ties are evaluated in floating point.
inline std::int64_t snap_to_grid_index(double value, double grid_step) {
  if (!std::isfinite(value)) {
    throw InvalidValue("grid snap: non-finite value");
  }
  const double q = value / grid_step;
  const double fl = std::floor(q);
  const double frac = q - fl;
  const auto base = static_cast<std::int64_t>(fl);
  if (frac > 0.5) return base + 1;
  if (frac < 0.5) return base;
  return (base % 2 == 0) ? base : base + 1;
}

// A finite discrete distribution on the uniform grid {(origin_index + i) *
// grid_step}. Immutable after construction. Probabilities are stored densely;
// the first and last entries are strictly positive. Total mass stays within
// 1e-9 of one; larger drift is renormalized away and recorded.
class CapacityDistribution {
 public:
  CapacityDistribution(double grid_step, std::int64_t origin_index,
                       std::vector<double> probabilities)
      : grid_step_(grid_step),
        origin_index_(origin_index),
        probs_(std::move(probabilities)) {
    if (!std::isfinite(grid_step_) || grid_step_ <= 0) {
      throw InvalidValue("distribution: grid step must be positive, got " +
                         std::to_string(grid_step_));
    }
    for (const double p : probs_) {
      if (!std::isfinite(p)) {
        throw InvalidValue("distribution: non-finite probability");
      }
      if (p < 0) {
        throw InvalidValue("distribution: negative probability " +
                           std::to_string(p));
      }
    }
    std::size_t first = 0;
    while (first < probs_.size() && probs_[first] == 0.0) ++first;
    if (first == probs_.size()) {
      throw EmptyData("distribution: no probability mass");
    }
    std::size_t last = probs_.size() - 1;
    while (probs_[last] == 0.0) --last;
    if (first > 0 || last + 1 < probs_.size()) {
      probs_ = std::vector<double>(probs_.begin() + first,
                                   probs_.begin() + last + 1);
      origin_index_ += static_cast<std::int64_t>(first);
    }
    long double sum = 0.0L;
    for (const double p : probs_) sum += p;
    const double drift = static_cast<double>(sum - 1.0L);
    if (std::fabs(drift) > kMassTolerance) {
      for (double& p : probs_) p = static_cast<double>(p / sum);
      mass_correction_ = drift;
    }
  }

  static CapacityDistribution point_mass(double value, double grid_step) {
    return {grid_step, snap_to_grid_index(value, grid_step), {1.0}};
  }

  // Empirical distribution: each sample snapped to its nearest grid point,
  // probability = fraction of samples landing there.
  static CapacityDistribution from_samples(const std::vector<double>& samples,
                                           double grid_step) {
    if (!std::isfinite(grid_step) || grid_step <= 0) {
      throw InvalidValue("from_samples: grid step must be positive");
    }
    if (samples.empty()) {
      throw EmptyData("from_samples: empty sample list");
    }
    std::int64_t lo = 0, hi = 0;
    bool seen = false;
    std::vector<std::int64_t> idx;
    idx.reserve(samples.size());
    for (const double s : samples) {
      if (!std::isfinite(s)) {
        throw InvalidValue("from_samples: non-finite sample");
      }
      const std::int64_t k = snap_to_grid_index(s, grid_step);
      idx.push_back(k);
      lo = seen ? std::min(lo, k) : k;
      hi = seen ? std::max(hi, k) : k;
      seen = true;
    }
    // Integer counts first, one division per cell: the empirical weights
    // are exact rationals and must not depend on sample order.
    std::vector<std::int64_t> counts(static_cast<std::size_t>(hi - lo + 1), 0);
    for (const std::int64_t k : idx) {
      ++counts[static_cast<std::size_t>(k - lo)];
    }
    std::vector<double> probs(counts.size());
    const auto n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      probs[i] = static_cast<double>(counts[i]) / n;
    }
    return {grid_step, lo, std::move(probs)};
  }

  // Places the given (value, probability) pairs on the grid, accumulating
  // mass where snapped values collide. Convenience for literal tables.
  static CapacityDistribution from_points(
      double grid_step, const std::vector<std::pair<double, double>>& points) {
    if (points.empty()) {
      throw EmptyData("from_points: empty point list");
    }
    std::int64_t lo = 0, hi = 0;
    bool seen = false;
    for (const auto& [v, p] : points) {
      (void)p;
      const std::int64_t k = snap_to_grid_index(v, grid_step);
      lo = seen ? std::min(lo, k) : k;
      hi = seen ? std::max(hi, k) : k;
      seen = true;
    }
    std::vector<double> probs(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (const auto& [v, p] : points) {
      probs[static_cast<std::size_t>(snap_to_grid_index(v, grid_step) - lo)] +=
          p;
    }
    return {grid_step, lo, std::move(probs)};
  }

  double grid_step() const { return grid_step_; }
  std::int64_t origin_index() const { return origin_index_; }
  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& probabilities() const { return probs_; }

  double value_at(std::size_t i) const {
    return static_cast<double>(origin_index_ + static_cast<std::int64_t>(i)) *
           grid_step_;
  }
  double probability_at(std::size_t i) const { return probs_[i]; }
  double min_value() const { return value_at(0); }
  double max_value() const { return value_at(probs_.size() - 1); }

  double mass() const {
    long double sum = 0.0L;
    for (const double p : probs_) sum += p;
    return static_cast<double>(sum);
  }

  // Pre-normalization drift (mass - 1) if construction had to renormalize;
  // zero otherwise.
  double mass_correction() const { return mass_correction_; }

  double mean() const {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      acc += static_cast<long double>(probs_[i]) * value_at(i);
    }
    return static_cast<double>(acc);
  }

  // Right-continuous P(value <= x). Values within a relative whisker of a
  // grid point count as that point.
  double cdf(double x) const {
    if (std::isnan(x)) {
      throw InvalidValue("cdf: NaN argument");
    }
    if (x < min_value()) return 0.0;
    // Stored mass may drift from one by a few ulp; a cdf never exceeds 1.
    if (x >= max_value()) return std::min(1.0, mass());
    const auto cell = static_cast<std::int64_t>(
        std::floor(x / grid_step_ + kProbabilitySlack));
    const std::int64_t k = cell - origin_index_;
    if (k < 0) return 0.0;
    long double sum = 0.0L;
    for (std::int64_t i = 0; i <= k; ++i) {
      sum += probs_[static_cast<std::size_t>(i)];
    }
    return std::min(1.0, static_cast<double>(sum));
  }

  // Smallest support value v with cdf(v) >= p.
  double quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidProbability("quantile: p outside [0,1], got " +
                               std::to_string(p));
    }
    const long double threshold = static_cast<long double>(p) -
                                  static_cast<long double>(kProbabilitySlack);
    long double cum = 0.0L;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      cum += probs_[i];
      if (cum >= threshold) return value_at(i);
    }
    return max_value();
  }

  friend bool operator==(const CapacityDistribution&,
                         const CapacityDistribution&) = default;

 private:
  double grid_step_{};
  std::int64_t origin_index_{};
  std::vector<double> probs_;
  double mass_correction_{0.0};
};

// Exact discrete convolution; the support is the Minkowski sum of supports.
inline CapacityDistribution convolve(const CapacityDistribution& a,
                                     const CapacityDistribution& b) {
  if (a.grid_step() != b.grid_step()) {
    throw GridMismatch("convolve: grid steps differ (" +
                       std::to_string(a.grid_step()) + " vs " +
                       std::to_string(b.grid_step()) + ")");
  }
  const auto& pa = a.probabilities();
  const auto& pb = b.probabilities();
  std::vector<double> out(pa.size() + pb.size() - 1, 0.0);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double w = pa[i];
    if (w == 0.0) continue;
    for (std::size_t j = 0; j < pb.size(); ++j) {
      out[i + j] += w * pb[j];
    }
  }
  return {a.grid_step(), a.origin_index() + b.origin_index(), std::move(out)};
}

// Support mirrored about zero; probabilities preserved.
inline CapacityDistribution negate(const CapacityDistribution& d) {
  std::vector<double> out(d.probabilities().rbegin(), d.probabilities().rend());
  const std::int64_t last =
      d.origin_index() + static_cast<std::int64_t>(d.size()) - 1;
  return {d.grid_step(), -last, std::move(out)};
}

// Support translated by offset. Off-grid offsets snap half-to-even; the
// applied translation is written to snapped_offset when requested.
inline CapacityDistribution shift(const CapacityDistribution& d, double offset,
                                  double* snapped_offset = nullptr) {
  const std::int64_t k = snap_to_grid_index(offset, d.grid_step());
  if (snapped_offset != nullptr) {
    *snapped_offset = static_cast<double>(k) * d.grid_step();
  }
  return {d.grid_step(), d.origin_index() + k, d.probabilities()};
}

}  // namespace heatmargin
