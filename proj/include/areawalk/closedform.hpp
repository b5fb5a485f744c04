#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "areawalk/curve.hpp"
#include "areawalk/rational.hpp"

namespace areawalk::closedform {

inline constexpr std::size_t kDefaultKMax = 120;

/// G(t) = sqrt(1-t) e^{-t/2} on [0, 1].
double G_closed(double t);

/// K(t) = e^{t^2} G(t^2)^2, checked against 1 - t^2; throws NumericError if
/// the two differ by more than 8 ulps of 1.
double K_closed(double t);

/// f(t e^{-t}) = (2-t) t / (2(1-t)) on [0, 1).
double f_closed(double t);

/// q(t) = t e^{-t}.
inline double q_map(double t) { return t * std::exp(-t); }

/// h(x) = u/2 where u in [0,1) solves u e^{-u} = x; 0 <= x < 1/e.
/// Newton iteration safeguarded by bisection; residual <= 1e-14.
double h_eval(double x);

/// Truncated value plus a bound on the dropped tail.
struct SeriesValue {
  double value;
  double tail_bound;
};

/// sum_{k>k_max} sqrt(k) r^(k - shift), for 0 <= r < 1.
double envelope_tail(double r, std::size_t k_max, int shift = 0);

/// Evaluates f(x) = sum c_k x^k and the G' series from double copies of the
/// exact c_k. Immutable after construction.
class SeriesEvaluator {
 public:
  /// Coefficients c_1..c_{max_order}; max_order <= 600 keeps c_k finite.
  explicit SeriesEvaluator(std::size_t max_order = kDefaultKMax);
  explicit SeriesEvaluator(const RationalVector& c);

  [[nodiscard]] std::size_t max_order() const { return c_.size(); }
  [[nodiscard]] const std::vector<double>& coefficients() const { return c_; }

  /// sum_{k<=k_max} c_k x^k with tail bound sum_{k>k_max} sqrt(k) e^k |x|^k.
  /// Throws DivergenceError for |x| >= 1/e.
  [[nodiscard]] SeriesValue f(double x, std::size_t k_max) const;

  /// -G(t) e^{-t} sum_{k<=k_max} c_k (t e^{-t})^{k-1} with the matching tail
  /// bound, t in [0, 1).
  [[nodiscard]] SeriesValue gprime(double t, std::size_t k_max) const;

 private:
  std::vector<double> c_;
};

/// Shared evaluator holding 600 coefficients, built on first use.
const SeriesEvaluator& default_evaluator();

SeriesValue f_series(double x, std::size_t k_max = kDefaultKMax);
SeriesValue gprime_series(double t, std::size_t k_max = kDefaultKMax);

/// Right side of G' = (t-2)/(2(1-t)) G.
double gprime_ode(double t);

/// Classical RK4 for G' = (t-2)/(2(1-t)) G, G(0) = 1, from 0 to t_end with
/// the given step (the last step is shortened to land on t_end).
Curve ode_integrate(double t_end, double step);

/// A tail probability G_m(t) used to build partial-density references.
struct TailProbability {
  double value = 0.0;
  double std_error = 0.0;
  /// True when the infinite-horizon G(t) stands in for G_m(t).
  bool limit_substitute = false;
};

/// G_m(t) in closed form where one is known: m = 0 (1), m = 1 (e^{-t}),
/// m = 2 (2 e^{-3t/2} - e^{-2t}). Empty otherwise.
std::optional<double> G_n_closed(std::size_t m, double t);

struct PartialDensityReference {
  double value = 0.0;
  double std_error = 0.0;
  bool biased = false;
};

/// g_n^{(k)}(t) = c_k (t e^{-t})^{k-1} G_{n-k}(t) e^{-t}, 1 <= k <= n-1.
/// Uses `tail` for G_{n-k} when given, otherwise the closed form (n-k <= 2).
/// k == n has no closed form and throws std::invalid_argument.
PartialDensityReference g_partial_closed(std::size_t n, std::size_t k, double t,
                                         std::optional<TailProbability> tail = std::nullopt);

/// P{ min_{i <= k+1} Y_i = Y_k } = c_k (k-1)! / (k+1)^k, exactly.
ExactRational argmin_next_to_last_probability(std::size_t k);

}  // namespace areawalk::closedform
