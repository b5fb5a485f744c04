#include "areawalk/closedform.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "areawalk/errors.hpp"
#include "areawalk/sequences.hpp"

namespace areawalk::closedform {

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e rounded to nearest

void require_unit_interval(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error(fmt::format("{}: t = {} outside [0, 1]", what, t));
}

void require_half_open(double t, const char* what) {
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error(fmt::format("{}: t = {} outside [0, 1)", what, t));
}

}  // namespace

double G_closed(double t) {
  require_unit_interval(t, "G_closed");
  return std::sqrt(1.0 - t) * std::exp(-t / 2.0);
}

double K_closed(double t) {
  require_unit_interval(t, "K_closed");
  const double g = G_closed(t * t);
  const double k = std::exp(t * t) * g * g;
  const double expected = 1.0 - t * t;
  if (std::abs(k - expected) > 8.0 * std::numeric_limits<double>::epsilon()) {
    throw NumericError(fmt::format("K_closed: e^(t^2) G(t^2)^2 = {} but 1 - t^2 = {} at t = {}", k, expected, t));
  }
  return k;
}

double f_closed(double t) {
  require_half_open(t, "f_closed");
  return (2.0 - t) * t / (2.0 * (1.0 - t));
}

double h_eval(double x) {
  if (!(x >= 0.0)) throw std::domain_error(fmt::format("h_eval: x = {} is negative", x));
  if (!(x < kInvE)) throw std::domain_error(fmt::format("h_eval: x = {} outside [0, 1/e)", x));
  if (x == 0.0) return 0.0;

  // u e^{-u} - x is increasing on [0, 1]; keep a bracket and fall back to
  // bisection whenever Newton leaves it (q'(u) -> 0 as u -> 1).
  auto residual = [x](double u) { return u * std::exp(-u) - x; };
  double lo = 0.0;
  double hi = 1.0;
  double u = x * (1.0 + x);
  if (!(u > lo && u < hi)) u = 0.5;
  for (int iter = 0; iter < 200; ++iter) {
    const double r = residual(u);
    if (r == 0.0) break;
    if (r < 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    const double slope = (1.0 - u) * std::exp(-u);
    double next = slope > 0.0 ? u - r / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 2.0 * std::numeric_limits<double>::epsilon() * u) {
      u = next;
      break;
    }
    u = next;
  }
  if (std::abs(residual(u)) > 1e-14) {
    throw NumericError(fmt::format("h_eval: no convergence at x = {} (residual {})", x, residual(u)));
  }
  return u / 2.0;
}

double envelope_tail(double r, std::size_t k_max, int shift) {
  if (!(r >= 0.0 && r < 1.0)) throw DivergenceError(fmt::format("envelope_tail: ratio {} not in [0, 1)", r));
  if (r == 0.0) return 0.0;
  auto k = static_cast<double>(k_max + 1);
  double term = std::sqrt(k) * std::pow(r, k - shift);
  double sum = 0.0;
  for (std::size_t iter = 0; iter < 100'000'000; ++iter) {
    sum += term;
    // For j > k, term_{j+1}/term_j <= r sqrt(1 + 1/k); bound the rest geometrically.
    const double rho = r * std::sqrt(1.0 + 1.0 / k);
    if (rho < 1.0) {
      const double rest = term * rho / (1.0 - rho);
      if (rest <= 1e-17 * sum || term == 0.0) return sum + rest;
    }
    term *= r * std::sqrt((k + 1.0) / k);
    k += 1.0;
  }
  throw NumericError("envelope_tail: no convergence");
}

SeriesEvaluator::SeriesEvaluator(std::size_t max_order)
    : SeriesEvaluator(exact::c_sequence(max_order)) {}

SeriesEvaluator::SeriesEvaluator(const RationalVector& c) {
  c_.reserve(c.size());
  for (const auto& ck : c) {
    const double v = ck.to_double();
    if (!std::isfinite(v)) throw std::invalid_argument("SeriesEvaluator: coefficient overflows double");
    c_.push_back(v);
  }
}

SeriesValue SeriesEvaluator::f(double x, std::size_t k_max) const {
  if (!(std::abs(x) < kInvE)) {
    throw DivergenceError(fmt::format("f_series: |x| = {} is not below 1/e", std::abs(x)));
  }
  if (k_max > c_.size()) throw std::invalid_argument("f_series: k_max exceeds stored coefficients");
  double sum = 0.0;
  double power = x;
  for (std::size_t k = 1; k <= k_max; ++k) {
    sum += c_[k - 1] * power;
    power *= x;
  }
  return {sum, envelope_tail(std::numbers::e * std::abs(x), k_max)};
}

SeriesValue SeriesEvaluator::gprime(double t, std::size_t k_max) const {
  require_half_open(t, "gprime_series");
  if (k_max > c_.size()) throw std::invalid_argument("gprime_series: k_max exceeds stored coefficients");
  const double x = q_map(t);
  double sum = 0.0;
  double power = 1.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    sum += c_[k - 1] * power;
    power *= x;
  }
  const double scale = G_closed(t) * std::exp(-t);
  const double tail = scale * std::numbers::e * envelope_tail(std::numbers::e * x, k_max, 1);
  return {-scale * sum, tail};
}

const SeriesEvaluator& default_evaluator() {
  static const SeriesEvaluator evaluator(600);
  return evaluator;
}

SeriesValue f_series(double x, std::size_t k_max) { return default_evaluator().f(x, k_max); }

SeriesValue gprime_series(double t, std::size_t k_max) { return default_evaluator().gprime(t, k_max); }

double gprime_ode(double t) {
  require_half_open(t, "gprime_ode");
  return (t - 2.0) / (2.0 * (1.0 - t)) * G_closed(t);
}

Curve ode_integrate(double t_end, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("ode_integrate: step must be positive");
  if (!(t_end > 0.0 && t_end < 1.0)) throw std::domain_error("ode_integrate: t_end must lie in (0, 1)");

  auto rhs = [](double t, double g) { return (t - 2.0) / (2.0 * (1.0 - t)) * g; };
  Curve curve("G_rk4", {{0.0, 1.0}});
  double g = 1.0;
  double t = 0.0;
  for (std::size_t i = 1; t < t_end; ++i) {
    double next = static_cast<double>(i) * step;
    if (next > t_end || t_end - next < 1e-12 * step) next = t_end;
    const double h = next - t;
    const double k1 = rhs(t, g);
    const double k2 = rhs(t + h / 2, g + h / 2 * k1);
    const double k3 = rhs(t + h / 2, g + h / 2 * k2);
    const double k4 = rhs(next, g + h * k3);
    g += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t = next;
    curve.push_back({t, g});
  }
  return curve;
}

std::optional<double> G_n_closed(std::size_t m, double t) {
  require_unit_interval(t, "G_n_closed");
  switch (m) {
    case 0: return 1.0;
    case 1: return std::exp(-t);
    case 2: return 2.0 * std::exp(-1.5 * t) - std::exp(-2.0 * t);
    default: return std::nullopt;
  }
}

PartialDensityReference g_partial_closed(std::size_t n, std::size_t k, double t,
                                         std::optional<TailProbability> tail) {
  if (k == 0 || k > n) throw std::invalid_argument("g_partial_closed: need 1 <= k <= n");
  if (k == n) throw std::invalid_argument("g_partial_closed: g_n^(n) has no closed form");
  require_unit_interval(t, "g_partial_closed");
  const std::size_t m = n - k;
  if (!tail) {
    const auto closed = G_n_closed(m, t);
    if (!closed) {
      throw std::invalid_argument(fmt::format("g_partial_closed: G_{}(t) must be supplied", m));
    }
    tail = TailProbability{*closed, 0.0, false};
  }
  const double ck = exact::c_sequence(k).back().to_double();
  const double factor = ck * std::pow(q_map(t), static_cast<double>(k - 1)) * std::exp(-t);
  return {factor * tail->value, factor * tail->std_error, tail->limit_substitute};
}

ExactRational argmin_next_to_last_probability(std::size_t k) {
  if (k == 0) throw std::invalid_argument("argmin_next_to_last_probability: k must be >= 1");
  const auto ck = exact::c_sequence(k).back();
  return ck * factorial(static_cast<unsigned>(k - 1)) /
         pow(ExactRational(static_cast<std::int64_t>(k + 1)), static_cast<unsigned>(k));
}

}  // namespace areawalk::closedform
