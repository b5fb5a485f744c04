#include "areawalk/power_series.hpp"

#include <stdexcept>

namespace areawalk {

FormalSeries::FormalSeries(std::size_t order) : coeffs_(order) {
  if (order == 0) throw std::invalid_argument("FormalSeries: zero order");
}

FormalSeries::FormalSeries(RationalVector coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw std::invalid_argument("FormalSeries: zero order");
}

FormalSeries FormalSeries::times(const FormalSeries& rhs) const {
  const std::size_t n = order();
  std::vector<mpq_class> acc(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i].sign() == 0) continue;
    for (std::size_t j = 0; i + j < n && j < rhs.order(); ++j) {
      if (rhs[j].sign() == 0) continue;
      acc[i + j] += coeffs_[i].raw() * rhs[j].raw();
    }
  }
  FormalSeries out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = ExactRational(std::move(acc[k]));
  return out;
}

FormalSeries FormalSeries::reciprocal() const {
  if (coeffs_[0].sign() == 0) throw std::domain_error("FormalSeries::reciprocal: zero constant term");
  const std::size_t n = order();
  FormalSeries out(n);
  const mpq_class inv0 = 1 / coeffs_[0].raw();
  out[0] = ExactRational(inv0);
  for (std::size_t k = 1; k < n; ++k) {
    mpq_class acc = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      if (coeffs_[j].sign() != 0) acc += coeffs_[j].raw() * out[k - j].raw();
    }
    out[k] = ExactRational(mpq_class(-acc * inv0));
  }
  return out;
}

RationalVector lagrange_inverse_coefficients(const FormalSeries& q, std::size_t n_max) {
  if (n_max == 0) throw std::invalid_argument("lagrange_inverse_coefficients: n_max must be >= 1");
  if (q.order() <= n_max) throw std::invalid_argument("lagrange_inverse_coefficients: series too short");
  if (q[0].sign() != 0 || q[1].sign() == 0) {
    throw std::domain_error("lagrange_inverse_coefficients: need q(0) = 0 and q'(0) != 0");
  }
  // q(w)/w shifted down by one degree, then phi = w / q(w).
  FormalSeries shifted(n_max);
  for (std::size_t k = 0; k < n_max; ++k) shifted[k] = q[k + 1];
  const FormalSeries phi = shifted.reciprocal();

  RationalVector out;
  out.reserve(n_max);
  FormalSeries power = phi;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) power = power.times(phi);
    out.push_back(power[n - 1] / ExactRational(static_cast<std::int64_t>(n)));
  }
  return out;
}

FormalSeries x_exp_minus_x(std::size_t order) {
  FormalSeries q(order);
  ExactRational inv_fact = 1;  // 1/(k-1)!
  for (std::size_t k = 1; k < order; ++k) {
    if (k > 1) inv_fact /= ExactRational(static_cast<std::int64_t>(k - 1));
    q[k] = (k % 2 == 1) ? inv_fact : -inv_fact;
  }
  return q;
}

}  // namespace areawalk
