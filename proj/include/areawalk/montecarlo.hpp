#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "areawalk/estimate.hpp"
#include "areawalk/rng.hpp"

namespace areawalk::mc {

/// Sample-count, seed and thread settings shared by every estimator.
/// Each sample path i draws from RngStream(derived seed, i), so estimates are
/// bit-identical for any thread count.
struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
};

/// Partial sums S_1..S_n of standard exponentials and the normalized areas
/// Y_k = 2/(k(k+1)) sum_{i<=k} S_i.
struct WalkPath {
  std::size_t n = 0;
  std::vector<double> s;
  std::vector<double> y;
};

WalkPath sample_walk(std::size_t n, RngStream& rng);

/// Fills y[0..n) with Y_1..Y_n for a fresh path; returns nothing else so the
/// inner loops stay allocation-free.
void sample_normalized_areas(RngStream& rng, std::span<double> y);

/// G_n(t) = P{ min_{k<=n} Y_k >= t }, with early exit per path.
MCEstimate estimate_Gn(double t, std::size_t n, const McConfig& cfg);

/// Same paths evaluated for several horizons and thresholds at once:
/// result[i][j] estimates G_{horizons[i]}(ts[j]). Paths are shared, so the
/// table is monotone in both directions.
std::vector<std::vector<MCEstimate>> estimate_Gn_grid(std::span<const double> ts,
                                                      std::span<const std::size_t> horizons,
                                                      const McConfig& cfg);

/// Default horizon ceil(50 / (1-t)^2).
std::size_t default_horizon(double t);

struct GEstimate {
  MCEstimate estimate;          // G_{n0}(t), an upper bound on G(t) in expectation
  std::size_t horizon = 0;      // n0
  double bias_proxy = 0.0;      // fraction of paths surviving n0 but failing by 2 n0
  bool bias_warning = false;    // bias_proxy > std_error / 10
};

/// Infinite-horizon G(t) truncated at n0 (0 selects default_horizon).
/// Refuses t > 1 - guard with std::domain_error.
GEstimate estimate_G(double t, const McConfig& cfg, std::size_t horizon = 0, double guard = 0.05);

/// The order-statistics functional min_k (2n/(k(k+1))) sum_{i<=k} U_{i,n}.
double orderstat_functional(std::span<const double> sorted_uniforms);

struct OrderStatsEstimate {
  MCEstimate sorted;        // sorts n uniforms
  MCEstimate spacings;      // U_{i,n} = S_i / S_{n+1}, no sort
  bool agree = false;       // |difference| <= 4 * combined stderr
  double z_difference = 0.0;
};

/// P{ min_k (2n/(k(k+1))) sum_{i<=k} U_{i,n} >= t } by both representations.
OrderStatsEstimate estimate_Gn_orderstats(double t, std::size_t n, const McConfig& cfg);

/// Draws of the functional for a KS comparison of the two representations.
std::vector<double> orderstat_functional_samples(std::size_t n, bool use_spacings, const McConfig& cfg);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);
/// Critical value c(alpha) sqrt((m+n)/(mn)) of the asymptotic KS test.
double ks_critical(std::size_t m, std::size_t n, double alpha);

/// Frequency with which Y_k is the minimum of Y_1..Y_n (ties go to the
/// smaller index).
MCEstimate estimate_argmin_prob(std::size_t n, std::size_t k, const McConfig& cfg);

struct DensityEstimate {
  MCEstimate estimate;
  double width = 0.0;
  /// The finite difference carries an O(width^2) discretization bias; this is
  /// width^2, the scale of that bias.
  double discretization_scale = 0.0;
};

/// g_n^{(k)}(t) by the symmetric difference (F(t-w/2) - F(t+w/2))/w of
/// F(s) = P{ argmin = k, Y_k >= s }.
DensityEstimate estimate_partial_density(std::size_t n, std::size_t k, double t, double width,
                                         const McConfig& cfg);

struct ComparisonReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double sigma = 0.0;       // combined standard error of lhs - rhs
  double tolerance = 0.0;   // allowed |lhs - rhs|
  bool pass = false;
};

/// g_n^{(k)}(t) against c_k (t e^{-t})^{k-1} g_{n-k+1}^{(1)}(t), with exact
/// c_k and both densities estimated independently; passes at z sigma.
ComparisonReport chaining_check(std::size_t n, std::size_t k, double t, const McConfig& cfg,
                                double width = 0.02, double z = 3.0);

/// g_{n+1}^{(1)}(t) against G_n(t) e^{-t}, both estimated independently.
ComparisonReport first_density_check(std::size_t n, double t, const McConfig& cfg, double width = 0.02,
                                     double z = 3.0);

}  // namespace areawalk::mc
