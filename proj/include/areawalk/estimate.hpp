#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

namespace areawalk {

/// A Monte Carlo result, reproducible from (seed, samples, estimator, params).
struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string estimator;

  [[nodiscard]] std::pair<double, double> interval(double z) const {
    return {mean - z * std_error, mean + z * std_error};
  }
  /// |mean - reference| <= max(z * stderr, floor).
  [[nodiscard]] bool within(double reference, double z, double floor = 0.0) const {
    return std::abs(mean - reference) <= std::max(z * std_error, floor);
  }
  /// Signed distance to reference in units of stderr (inf when stderr is 0 and
  /// the values differ).
  [[nodiscard]] double z_score(double reference) const {
    const double d = mean - reference;
    if (std_error == 0.0) return d == 0.0 ? 0.0 : (d > 0 ? INFINITY : -INFINITY);
    return d / std_error;
  }
};

/// Bernoulli proportion estimate with binomial standard error, scaled by
/// `scale` (e.g. a box volume or 1/width).
inline MCEstimate proportion_estimate(std::uint64_t hits, std::uint64_t samples, double scale,
                                      std::uint64_t seed, std::string estimator) {
  const double n = static_cast<double>(samples);
  const double p = samples == 0 ? 0.0 : static_cast<double>(hits) / n;
  const double se = samples == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / n);
  return {scale * p, scale * se, samples, seed, std::move(estimator)};
}

}  // namespace areawalk
