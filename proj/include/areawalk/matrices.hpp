#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "areawalk/rational.hpp"

namespace areawalk::exact {

/// l_k = k(k+1)/2, the expectation of the k-step area.
ExactRational triangular_number(std::size_t k);

/// A_n: Y = A X, row k has entries 2(k-j+1)/(k(k+1)) for j <= k.
ExactMatrix build_A(std::size_t n);

/// L_n = A_n^{-1}: three nonzero diagonals l_k, -2 l_{k-1}, l_{k-2}, built
/// from the difference identity X_k = l_k Y_k - 2 l_{k-1} Y_{k-1} + l_{k-2} Y_{k-2}
/// and not by inverting A_n.
ExactMatrix build_L(std::size_t n);

/// m x m diagonal matrix J_m^{s->i} with entries l_{i+j} / l_{s+j}, j = 0..m-1.
ExactMatrix build_J(std::size_t m, std::size_t s, std::size_t i);

/// det J_m^{s->i} from the factorial closed form
///   (s-1)! s! (i+m-1)! (i+m)! / ((i-1)! i! (s+m-1)! (s+m)!).
ExactRational det_J_closed_form(std::size_t m, std::size_t s, std::size_t i);

/// k x k upper triangular all-ones matrix, and its transpose.
ExactMatrix upper_ones(std::size_t k);
ExactMatrix lower_ones(std::size_t k);

/// Expected value of I^up_{n-1} I^down_{n-1} L_n^{1;n}: first column
/// (-n, -(n-2), -(n-3), ..., -1), diagonal entries -l_2, ..., -l_{n-1} from
/// the second row on, zero elsewhere. n >= 2.
ExactMatrix triangular_product_shape(std::size_t n);

struct CheckFailure {
  std::string check;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string got;
  std::string expected;
};

struct InverseReport {
  std::size_t n = 0;
  std::vector<std::string> checks;  // names of the checks that ran
  std::optional<CheckFailure> failure;

  [[nodiscard]] bool passed() const { return !failure.has_value(); }
};

/// Exact checks for A_n and L_n: L A = I, A L = I, row sums of L equal 1,
/// column sums (0, ..., 0, -l_{n-1}, l_n), and (n >= 2) the triangular
/// product identity for the minor L_n^{1;n}. Reports the first failing entry.
InverseReport verify_inverse(std::size_t n);

/// L_{n-k+1}^{1,2;1} == L_n^{1..k+1;1..k} J_{n-k}^{k+1->2}, 2 <= k <= n-2.
bool minor_scaling_identity(std::size_t n, std::size_t k);

/// L_{n-k}^{1;n-k} == L_n^{1..k+1;1..k,n} J_{n-k-1}^{k+1->1}, 1 <= k <= n-2.
bool face_scaling_identity(std::size_t n, std::size_t k);

}  // namespace areawalk::exact
