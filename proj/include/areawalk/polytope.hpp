#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "areawalk/estimate.hpp"
#include "areawalk/rational.hpp"

namespace areawalk::exact {

/// P_n = { y in R^{n-1} : L_n^{1;n} y >= -1, y >= 0 }.
struct PolytopeSpec {
  std::size_t n;
  ExactMatrix constraints;  // L_n^{1;n}, (n-1) x (n-1)
  RationalVector rhs;       // all -1

  static PolytopeSpec make(std::size_t n);
  [[nodiscard]] std::size_t dimension() const { return n - 1; }
};

/// Apex y* with coordinates (n-i)/(i+1), i = 1..n-1; the unique solution of
/// L_n^{1;n} y = -1. Throws std::logic_error if that equation fails.
RationalVector polytope_vertex(std::size_t n);

/// Exact test of all 2(n-1) half-space constraints.
bool polytope_contains(std::size_t n, const RationalVector& point);

/// Rejection-sampling estimate of the volume of P_n in the box [0, y*],
/// supported for n = 2..6.
MCEstimate polytope_volume_mc(std::size_t n, std::uint64_t samples, std::uint64_t seed,
                              unsigned threads = 1);

/// Exact volume by vertex enumeration: interval length for n = 2, shoelace
/// area for n = 3.
ExactRational polytope_volume_exact(std::size_t n);

/// Density of Y_n = A_n X_n:
///   n!(n+1)!/2^n * exp(-l_n y_n + l_{n-1} y_{n-1}) on { L_n y >= 0 },
/// and e^{-y_1} on y_1 >= 0 for n = 1. The support test is exact on the
/// binary values of y.
double density_eval(std::span<const double> y);

}  // namespace areawalk::exact
