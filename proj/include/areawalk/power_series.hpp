#pragma once

#include <cstddef>

#include "areawalk/rational.hpp"

namespace areawalk {

/// Truncated formal power series sum_{k<order} a_k x^k over the rationals.
class FormalSeries {
 public:
  explicit FormalSeries(std::size_t order);
  explicit FormalSeries(RationalVector coefficients);

  [[nodiscard]] std::size_t order() const { return coeffs_.size(); }
  ExactRational& operator[](std::size_t k) { return coeffs_[k]; }
  const ExactRational& operator[](std::size_t k) const { return coeffs_[k]; }
  [[nodiscard]] const RationalVector& coefficients() const { return coeffs_; }

  /// Product truncated to this series' order.
  [[nodiscard]] FormalSeries times(const FormalSeries& rhs) const;
  /// Multiplicative inverse; requires a nonzero constant term.
  [[nodiscard]] FormalSeries reciprocal() const;

 private:
  RationalVector coeffs_;
};

/// Coefficients 1..n_max of the compositional inverse of a series q with
/// q(0) = 0 and q'(0) != 0, by Lagrange inversion:
///   [x^n] q^{-1}(x) = (1/n) [w^{n-1}] (w / q(w))^n.
/// `q` must have order > n_max. Element k-1 of the result is [x^k].
RationalVector lagrange_inverse_coefficients(const FormalSeries& q, std::size_t n_max);

/// x * exp(-x) truncated to `order` terms.
FormalSeries x_exp_minus_x(std::size_t order);

}  // namespace areawalk
