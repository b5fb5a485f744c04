#include "areawalk/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

#include "areawalk/matrices.hpp"
#include "areawalk/parallel.hpp"
#include "areawalk/rng.hpp"

namespace areawalk::exact {

namespace {

void require_polytope_n(std::size_t n) {
  if (n < 2) throw std::invalid_argument("polytope: n must be >= 2");
}

// All constraints of P_n as rows a . y >= b (the L-minor rows, then y_i >= 0).
struct HalfSpaces {
  std::vector<RationalVector> a;
  RationalVector b;
};

HalfSpaces half_spaces(std::size_t n) {
  const auto spec = PolytopeSpec::make(n);
  const std::size_t d = spec.dimension();
  HalfSpaces h;
  for (std::size_t i = 0; i < d; ++i) {
    RationalVector row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = spec.constraints(i, j);
    h.a.push_back(std::move(row));
    h.b.push_back(spec.rhs[i]);
  }
  for (std::size_t i = 0; i < d; ++i) {
    RationalVector row(d);
    row[i] = 1;
    h.a.push_back(std::move(row));
    h.b.emplace_back(0);
  }
  return h;
}

bool satisfies(const HalfSpaces& h, const RationalVector& y) {
  for (std::size_t r = 0; r < h.a.size(); ++r) {
    ExactRational lhs;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (h.a[r][j].sign() != 0) lhs += h.a[r][j] * y[j];
    }
    if (lhs < h.b[r]) return false;
  }
  return true;
}

ExactRational interval_length(const HalfSpaces& h) {
  std::optional<ExactRational> lo;
  std::optional<ExactRational> hi;
  for (std::size_t r = 0; r < h.a.size(); ++r) {
    const auto& coef = h.a[r][0];
    if (coef.sign() == 0) {
      if (h.b[r].sign() > 0) return ExactRational(0);
      continue;
    }
    const ExactRational bound = h.b[r] / coef;
    if (coef.sign() > 0) {
      if (!lo || bound > *lo) lo = bound;
    } else {
      if (!hi || bound < *hi) hi = bound;
    }
  }
  if (!lo || !hi) throw std::logic_error("polytope: unbounded interval");
  return *hi > *lo ? *hi - *lo : ExactRational(0);
}

ExactRational polygon_area(const HalfSpaces& h) {
  using Point = std::pair<ExactRational, ExactRational>;
  std::vector<Point> vertices;
  for (std::size_t r = 0; r < h.a.size(); ++r) {
    for (std::size_t s = r + 1; s < h.a.size(); ++s) {
      const auto& a = h.a[r];
      const auto& c = h.a[s];
      const ExactRational det = a[0] * c[1] - a[1] * c[0];
      if (det.sign() == 0) continue;
      Point p{(h.b[r] * c[1] - a[1] * h.b[s]) / det, (a[0] * h.b[s] - h.b[r] * c[0]) / det};
      if (!satisfies(h, {p.first, p.second})) continue;
      if (std::find(vertices.begin(), vertices.end(), p) == vertices.end()) vertices.push_back(p);
    }
  }
  if (vertices.size() < 3) return ExactRational(0);

  // Order counter-clockwise around the (interior) vertex centroid, using exact
  // half-plane and cross-product comparisons.
  ExactRational cx;
  ExactRational cy;
  for (const auto& [x, y] : vertices) {
    cx += x;
    cy += y;
  }
  const ExactRational count(static_cast<std::int64_t>(vertices.size()));
  cx /= count;
  cy /= count;
  auto upper = [&](const Point& p) {
    const auto dy = p.second - cy;
    return dy.sign() > 0 || (dy.sign() == 0 && (p.first - cx).sign() > 0);
  };
  std::sort(vertices.begin(), vertices.end(), [&](const Point& p, const Point& q) {
    const bool up = upper(p);
    const bool uq = upper(q);
    if (up != uq) return up;
    const auto cross = (p.first - cx) * (q.second - cy) - (p.second - cy) * (q.first - cx);
    return cross.sign() > 0;
  });

  ExactRational twice_area;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& p = vertices[i];
    const auto& q = vertices[(i + 1) % vertices.size()];
    twice_area += p.first * q.second - q.first * p.second;
  }
  if (twice_area.sign() < 0) twice_area = -twice_area;
  return twice_area / ExactRational(2);
}

}  // namespace

PolytopeSpec PolytopeSpec::make(std::size_t n) {
  require_polytope_n(n);
  const ExactMatrix l = build_L(n);
  return PolytopeSpec{n, minor(l, {1}, {n}).materialize(), RationalVector(n - 1, ExactRational(-1))};
}

RationalVector polytope_vertex(std::size_t n) {
  require_polytope_n(n);
  RationalVector y;
  y.reserve(n - 1);
  for (std::size_t i = 1; i <= n - 1; ++i) {
    y.emplace_back(static_cast<std::int64_t>(n - i), static_cast<std::int64_t>(i + 1));
  }
  const auto spec = PolytopeSpec::make(n);
  if (spec.constraints.apply(y) != spec.rhs) {
    throw std::logic_error(fmt::format("polytope_vertex: L^{{1;n}} y* != -1 for n = {}", n));
  }
  return y;
}

bool polytope_contains(std::size_t n, const RationalVector& point) {
  require_polytope_n(n);
  if (point.size() != n - 1) {
    throw std::invalid_argument(
        fmt::format("polytope_contains: point has dimension {}, expected {}", point.size(), n - 1));
  }
  return satisfies(half_spaces(n), point);
}

MCEstimate polytope_volume_mc(std::size_t n, std::uint64_t samples, std::uint64_t seed,
                              unsigned threads) {
  if (n < 2 || n > 6) throw std::invalid_argument("polytope_volume_mc: supported for n = 2..6");
  if (samples == 0) throw std::invalid_argument("polytope_volume_mc: samples must be >= 1");
  const std::size_t d = n - 1;
  const auto spec = PolytopeSpec::make(n);
  std::vector<double> a(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i * d + j] = spec.constraints(i, j).to_double();
  const auto apex = polytope_vertex(n);
  std::vector<double> box(d);
  double box_volume = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    box[i] = apex[i].to_double();
    box_volume *= box[i];
  }

  const std::uint64_t domain_seed = derive_seed(seed, 0x706f6c79ULL + n);
  const auto hits = parallel_reduce<std::uint64_t>(
      samples, threads, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t count = 0;
        std::vector<double> y(d);
        for (std::uint64_t s = begin; s < end; ++s) {
          RngStream rng(domain_seed, s);
          for (std::size_t i = 0; i < d; ++i) y[i] = box[i] * rng.uniform();
          bool inside = true;
          for (std::size_t i = 0; i < d && inside; ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < d; ++j) lhs += a[i * d + j] * y[j];
            inside = lhs >= -1.0;
          }
          count += inside ? 1 : 0;
        }
        return count;
      },
      [](std::uint64_t& acc, std::uint64_t part) { acc += part; });

  return proportion_estimate(hits, samples, box_volume, seed, fmt::format("polytope_volume_mc(n={})", n));
}

ExactRational polytope_volume_exact(std::size_t n) {
  if (n == 2) return interval_length(half_spaces(2));
  if (n == 3) return polygon_area(half_spaces(3));
  throw std::invalid_argument("polytope_volume_exact: only n = 2 and n = 3 are supported");
}

double density_eval(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n == 0) throw std::invalid_argument("density_eval: empty point");
  for (double v : y) {
    if (!std::isfinite(v)) throw std::domain_error("density_eval: non-finite coordinate");
  }
  if (n == 1) return y[0] >= 0.0 ? std::exp(-y[0]) : 0.0;

  RationalVector exact_y;
  exact_y.reserve(n);
  for (double v : y) exact_y.push_back(ExactRational::from_double(v));
  for (const auto& x : build_L(n).apply(exact_y)) {
    if (x.sign() < 0) return 0.0;
  }
  const double nn = static_cast<double>(n);
  const double log_prefactor = std::lgamma(nn + 1.0) + std::lgamma(nn + 2.0) - nn * std::log(2.0);
  const double exponent = -nn * (nn + 1.0) / 2.0 * y[n - 1] + (nn - 1.0) * nn / 2.0 * y[n - 2];
  return std::exp(log_prefactor + exponent);
}

}  // namespace areawalk::exact
