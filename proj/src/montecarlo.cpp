#include "areawalk/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "areawalk/parallel.hpp"
#include "areawalk/sequences.hpp"

namespace areawalk::mc {

namespace {

// Stream domains. Estimators that should share paths (common random numbers)
// use the same domain.
constexpr std::uint64_t kWalkDomain = 0x77616c6bULL;      // "walk"
constexpr std::uint64_t kSortedDomain = 0x736f7274ULL;    // "sort"
constexpr std::uint64_t kSpacingDomain = 0x73706163ULL;   // "spac"
constexpr std::uint64_t kIndependentSide = 0x72687321ULL; // second side of a comparison

void require_t(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error(fmt::format("{}: t = {} outside [0, 1]", what, t));
}

void require_samples(const McConfig& cfg, const char* what) {
  if (cfg.samples == 0) throw std::invalid_argument(fmt::format("{}: samples must be >= 1", what));
}

// 2/(k(k+1)) for k = 1..n at index k-1.
std::vector<double> area_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t k = 1; k <= n; ++k) w[k - 1] = 2.0 / (static_cast<double>(k) * static_cast<double>(k + 1));
  return w;
}

using Tally = std::uint64_t;
constexpr auto add_tally = [](Tally& acc, Tally part) { acc += part; };

template <std::size_t N>
struct Tallies {
  std::array<std::uint64_t, N> counts{};
};

}  // namespace

WalkPath sample_walk(std::size_t n, RngStream& rng) {
  if (n == 0) throw std::invalid_argument("sample_walk: n must be >= 1");
  WalkPath p;
  p.n = n;
  p.s.resize(n);
  p.y.resize(n);
  double s = 0.0;
  double area = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    s += rng.exponential();
    area += s;
    p.s[k - 1] = s;
    p.y[k - 1] = 2.0 * area / (static_cast<double>(k) * static_cast<double>(k + 1));
  }
  return p;
}

void sample_normalized_areas(RngStream& rng, std::span<double> y) {
  double s = 0.0;
  double area = 0.0;
  for (std::size_t k = 1; k <= y.size(); ++k) {
    s += rng.exponential();
    area += s;
    y[k - 1] = 2.0 * area / (static_cast<double>(k) * static_cast<double>(k + 1));
  }
}

MCEstimate estimate_Gn(double t, std::size_t n, const McConfig& cfg) {
  require_t(t, "estimate_Gn");
  if (n == 0) throw std::invalid_argument("estimate_Gn: n must be >= 1");
  require_samples(cfg, "estimate_Gn");
  const auto w = area_weights(n);
  const std::uint64_t seed = derive_seed(cfg.seed, kWalkDomain);
  const Tally hits = parallel_reduce<Tally>(
      cfg.samples, cfg.threads, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        Tally count = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
          RngStream rng(seed, i);
          double s = 0.0;
          double area = 0.0;
          bool survived = true;
          for (std::size_t k = 0; k < n; ++k) {
            s += rng.exponential();
            area += s;
            if (w[k] * area < t) {
              survived = false;
              break;
            }
          }
          count += survived ? 1 : 0;
        }
        return count;
      },
      add_tally);
  return proportion_estimate(hits, cfg.samples, 1.0, cfg.seed, fmt::format("Gn(t={},n={})", t, n));
}

std::vector<std::vector<MCEstimate>> estimate_Gn_grid(std::span<const double> ts,
                                                      std::span<const std::size_t> horizons,
                                                      const McConfig& cfg) {
  if (ts.empty() || horizons.empty()) throw std::invalid_argument("estimate_Gn_grid: empty grid");
  for (double t : ts) require_t(t, "estimate_Gn_grid");
  require_samples(cfg, "estimate_Gn_grid");
  std::vector<std::size_t> sorted_h(horizons.begin(), horizons.end());
  std::sort(sorted_h.begin(), sorted_h.end());
  if (sorted_h.front() == 0) throw std::invalid_argument("estimate_Gn_grid: horizons must be >= 1");
  const std::size_t n_max = sorted_h.back();
  const double t_min = *std::min_element(ts.begin(), ts.end());
  const auto w = area_weights(n_max);
  const std::uint64_t seed = derive_seed(cfg.seed, kWalkDomain);
  const std::size_t cells = horizons.size() * ts.size();

  using Counts = std::vector<std::uint64_t>;
  const Counts hits = parallel_reduce<Counts>(
      cfg.samples, cfg.threads, Counts(cells, 0),
      [&](std::uint64_t begin, std::uint64_t end) {
        Counts local(cells, 0);
        std::vector<double> min_at(horizons.size());
        for (std::uint64_t i = begin; i < end; ++i) {
          RngStream rng(seed, i);
          double s = 0.0;
          double area = 0.0;
          double running_min = std::numeric_limits<double>::infinity();
          std::size_t k = 0;
          // Running minimum at each requested horizon; stop once every
          // threshold has failed.
          for (std::size_t hi = 0; hi < horizons.size(); ++hi) min_at[hi] = -1.0;
          for (; k < n_max && running_min >= t_min; ++k) {
            s += rng.exponential();
            area += s;
            running_min = std::min(running_min, w[k] * area);
            for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
              if (horizons[hi] == k + 1) min_at[hi] = running_min;
            }
          }
          for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
            const double m = horizons[hi] <= k ? min_at[hi] : running_min;
            for (std::size_t ti = 0; ti < ts.size(); ++ti) {
              if (m >= ts[ti]) ++local[hi * ts.size() + ti];
            }
          }
        }
        return local;
      },
      [](Counts& acc, const Counts& part) {
        if (acc.size() < part.size()) acc.resize(part.size(), 0);
        for (std::size_t c = 0; c < part.size(); ++c) acc[c] += part[c];
      });

  std::vector<std::vector<MCEstimate>> out(horizons.size());
  for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
      out[hi].push_back(proportion_estimate(hits[hi * ts.size() + ti], cfg.samples, 1.0, cfg.seed,
                                            fmt::format("Gn(t={},n={})", ts[ti], horizons[hi])));
    }
  }
  return out;
}

std::size_t default_horizon(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("default_horizon: t must lie in [0, 1)");
  return static_cast<std::size_t>(std::ceil(50.0 / ((1.0 - t) * (1.0 - t))));
}

GEstimate estimate_G(double t, const McConfig& cfg, std::size_t horizon, double guard) {
  require_t(t, "estimate_G");
  if (!(guard > 0.0 && guard < 1.0)) throw std::invalid_argument("estimate_G: guard must lie in (0, 1)");
  if (t > 1.0 - guard) {
    throw std::domain_error(fmt::format(
        "estimate_G: t = {} exceeds 1 - guard = {}; the truncation bias P{{inf_(i>n) S_i/i < t}} "
        "decays like exp(-c n (1-t)^2) and no practical horizon controls it this close to 1",
        t, 1.0 - guard));
  }
  require_samples(cfg, "estimate_G");
  const std::size_t n0 = horizon == 0 ? default_horizon(t) : horizon;
  const auto w = area_weights(2 * n0);
  const std::uint64_t seed = derive_seed(cfg.seed, kWalkDomain);

  using Pair = Tallies<2>;  // survived n0, then failed before 2 n0
  const Pair counts = parallel_reduce<Pair>(
      cfg.samples, cfg.threads, Pair{},
      [&](std::uint64_t begin, std::uint64_t end) {
        Pair local;
        for (std::uint64_t i = begin; i < end; ++i) {
          RngStream rng(seed, i);
          double s = 0.0;
          double area = 0.0;
          std::size_t k = 0;
          for (; k < 2 * n0; ++k) {
            s += rng.exponential();
            area += s;
            if (w[k] * area < t) break;
          }
          if (k >= n0) ++local.counts[0];
          if (k >= n0 && k < 2 * n0) ++local.counts[1];
        }
        return local;
      },
      [](Pair& acc, const Pair& part) {
        acc.counts[0] += part.counts[0];
        acc.counts[1] += part.counts[1];
      });

  GEstimate g;
  g.horizon = n0;
  g.estimate = proportion_estimate(counts.counts[0], cfg.samples, 1.0, cfg.seed,
                                   fmt::format("G(t={},n0={})", t, n0));
  g.bias_proxy = static_cast<double>(counts.counts[1]) / static_cast<double>(cfg.samples);
  g.bias_warning = g.bias_proxy > g.estimate.std_error / 10.0;
  return g;
}

double orderstat_functional(std::span<const double> sorted_uniforms) {
  const std::size_t n = sorted_uniforms.size();
  if (n == 0) throw std::invalid_argument("orderstat_functional: empty sample");
  const double nn = static_cast<double>(n);
  double partial = 0.0;
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= n; ++k) {
    partial += sorted_uniforms[k - 1];
    m = std::min(m, 2.0 * nn * partial / (static_cast<double>(k) * static_cast<double>(k + 1)));
  }
  return m;
}

namespace {

// One draw of the functional, by sorting uniforms or by exponential spacings.
double draw_functional(std::size_t n, bool use_spacings, RngStream& rng, std::vector<double>& buf) {
  buf.resize(use_spacings ? n + 1 : n);
  if (use_spacings) {
    double s = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      s += rng.exponential();
      buf[i] = s;
    }
    const double total = buf[n];
    for (std::size_t i = 0; i < n; ++i) buf[i] /= total;
  } else {
    for (std::size_t i = 0; i < n; ++i) buf[i] = rng.uniform();
    std::sort(buf.begin(), buf.end());
  }
  return orderstat_functional(std::span<const double>(buf.data(), n));
}

MCEstimate orderstats_path(double t, std::size_t n, bool use_spacings, const McConfig& cfg) {
  const std::uint64_t seed = derive_seed(cfg.seed, use_spacings ? kSpacingDomain : kSortedDomain);
  const Tally hits = parallel_reduce<Tally>(
      cfg.samples, cfg.threads, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        Tally count = 0;
        std::vector<double> buf;
        for (std::uint64_t i = begin; i < end; ++i) {
          RngStream rng(seed, i);
          if (draw_functional(n, use_spacings, rng, buf) >= t) ++count;
        }
        return count;
      },
      add_tally);
  return proportion_estimate(hits, cfg.samples, 1.0, cfg.seed,
                             fmt::format("Gn_orderstats_{}(t={},n={})", use_spacings ? "spacings" : "sorted", t, n));
}

}  // namespace

OrderStatsEstimate estimate_Gn_orderstats(double t, std::size_t n, const McConfig& cfg) {
  require_t(t, "estimate_Gn_orderstats");
  if (n == 0) throw std::invalid_argument("estimate_Gn_orderstats: n must be >= 1");
  require_samples(cfg, "estimate_Gn_orderstats");
  OrderStatsEstimate r;
  r.sorted = orderstats_path(t, n, false, cfg);
  r.spacings = orderstats_path(t, n, true, cfg);
  const double sigma = std::hypot(r.sorted.std_error, r.spacings.std_error);
  const double diff = r.sorted.mean - r.spacings.mean;
  r.z_difference = sigma > 0.0 ? diff / sigma : (diff == 0.0 ? 0.0 : INFINITY);
  r.agree = std::abs(diff) <= 4.0 * sigma;
  return r;
}

std::vector<double> orderstat_functional_samples(std::size_t n, bool use_spacings, const McConfig& cfg) {
  if (n == 0) throw std::invalid_argument("orderstat_functional_samples: n must be >= 1");
  const std::uint64_t seed = derive_seed(cfg.seed, use_spacings ? kSpacingDomain : kSortedDomain);
  std::vector<double> out(cfg.samples);
  parallel_reduce<int>(
      cfg.samples, cfg.threads, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<double> buf;
        for (std::uint64_t i = begin; i < end; ++i) {
          RngStream rng(seed, i);
          out[i] = draw_functional(n, use_spacings, rng, buf);
        }
        return 0;
      },
      [](int&, int) {});
  return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(std::size_t m, std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ks_critical: alpha must lie in (0, 1)");
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double mm = static_cast<double>(m);
  const double nn = static_cast<double>(n);
  return c * std::sqrt((mm + nn) / (mm * nn));
}

MCEstimate estimate_argmin_prob(std::size_t n, std::size_t k, const McConfig& cfg) {
  if (k == 0 || k > n) throw std::invalid_argument("estimate_argmin_prob: need 1 <= k <= n");
  require_samples(cfg, "estimate_argmin_prob");
  const auto w = area_weights(n);
  const std::uint64_t seed = derive_seed(cfg.seed, kWalkDomain);
  const Tally hits = parallel_reduce<Tally>(
      cfg.samples, cfg.threads, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        Tally count = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
          RngStream rng(seed, i);
          double s = 0.0;
          double area = 0.0;
          double best = std::numeric_limits<double>::infinity();
          std::size_t arg = 0;
          for (std::size_t j = 0; j < n; ++j) {
            s += rng.exponential();
            area += s;
            const double y = w[j] * area;
            if (y < best) {
              best = y;
              arg = j + 1;
            }
          }
          count += arg == k ? 1 : 0;
        }
        return count;
      },
      add_tally);
  return proportion_estimate(hits, cfg.samples, 1.0, cfg.seed, fmt::format("argmin(n={},k={})", n, k));
}

DensityEstimate estimate_partial_density(std::size_t n, std::size_t k, double t, double width,
                                         const McConfig& cfg) {
  if (k == 0 || k > n) throw std::invalid_argument("estimate_partial_density: need 1 <= k <= n");
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("estimate_partial_density: t must lie in (0, 1)");
  if (!(width > 0.0) || width / 2.0 > t) {
    throw std::invalid_argument("estimate_partial_density: need 0 < width <= 2t");
  }
  require_samples(cfg, "estimate_partial_density");
  const auto w = area_weights(n);
  const double lo = t - width / 2.0;
  const double hi = t + width / 2.0;
  const std::uint64_t seed = derive_seed(cfg.seed, kWalkDomain);
  const Tally hits = parallel_reduce<Tally>(
      cfg.samples, cfg.threads, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        Tally count = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
          RngStream rng(seed, i);
          double s = 0.0;
          double area = 0.0;
          double best = std::numeric_limits<double>::infinity();
          std::size_t arg = 0;
          std::size_t j = 0;
          // Once any Y_j < t - w/2 the minimum cannot land in the window.
          for (; j < n; ++j) {
            s += rng.exponential();
            area += s;
            const double y = w[j] * area;
            if (y < lo) break;
            if (y < best) {
              best = y;
              arg = j + 1;
            }
          }
          if (j == n && arg == k && best < hi) ++count;
        }
        return count;
      },
      add_tally);
  DensityEstimate d;
  d.width = width;
  d.discretization_scale = width * width;
  d.estimate = proportion_estimate(hits, cfg.samples, 1.0 / width, cfg.seed,
                                   fmt::format("partial_density(n={},k={},t={},w={})", n, k, t, width));
  return d;
}

ComparisonReport chaining_check(std::size_t n, std::size_t k, double t, const McConfig& cfg, double width,
                                double z) {
  if (k == 0 || k >= n) throw std::invalid_argument("chaining_check: need 1 <= k <= n-1");
  const auto lhs = estimate_partial_density(n, k, t, width, cfg);
  // k = 1 is the identity: both sides are the same estimate.
  McConfig other = cfg;
  if (k > 1) other.seed = derive_seed(cfg.seed, kIndependentSide);
  const auto base = estimate_partial_density(n - k + 1, 1, t, width, other);
  const double ck = exact::c_sequence(k).back().to_double();
  const double factor = ck * std::pow(t * std::exp(-t), static_cast<double>(k - 1));

  ComparisonReport r;
  r.name = fmt::format("chaining n={} k={} t={}", n, k, t);
  r.lhs = lhs.estimate.mean;
  r.rhs = factor * base.estimate.mean;
  r.sigma = k == 1 ? 0.0 : std::hypot(lhs.estimate.std_error, factor * base.estimate.std_error);
  r.tolerance = z * r.sigma;
  r.pass = std::abs(r.lhs - r.rhs) <= r.tolerance;
  return r;
}

ComparisonReport first_density_check(std::size_t n, double t, const McConfig& cfg, double width, double z) {
  if (n == 0) throw std::invalid_argument("first_density_check: n must be >= 1");
  const auto lhs = estimate_partial_density(n + 1, 1, t, width, cfg);
  McConfig other = cfg;
  other.seed = derive_seed(cfg.seed, kIndependentSide);
  const auto gn = estimate_Gn(t, n, other);
  const double decay = std::exp(-t);

  ComparisonReport r;
  r.name = fmt::format("g_{}^(1)({}) vs G_{} e^-t", n + 1, t, n);
  r.lhs = lhs.estimate.mean;
  r.rhs = gn.mean * decay;
  r.sigma = std::hypot(lhs.estimate.std_error, decay * gn.std_error);
  r.tolerance = z * r.sigma;
  r.pass = std::abs(r.lhs - r.rhs) <= r.tolerance;
  return r;
}

}  // namespace areawalk::mc
