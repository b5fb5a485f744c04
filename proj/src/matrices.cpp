#include "areawalk/matrices.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace areawalk::exact {

namespace {

ExactRational rat(std::size_t v) { return ExactRational(static_cast<std::int64_t>(v)); }

void require_n(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(fmt::format("{}: n must be >= 1", what));
}

std::optional<CheckFailure> compare(const std::string& check, const ExactMatrix& got,
                                    const ExactMatrix& expected) {
  if (got.rows() != expected.rows() || got.cols() != expected.cols()) {
    return CheckFailure{check, 0, 0, fmt::format("{}x{}", got.rows(), got.cols()),
                        fmt::format("{}x{}", expected.rows(), expected.cols())};
  }
  for (std::size_t i = 0; i < got.rows(); ++i) {
    for (std::size_t j = 0; j < got.cols(); ++j) {
      if (got(i, j) != expected(i, j)) {
        return CheckFailure{check, i + 1, j + 1, got(i, j).str(), expected(i, j).str()};
      }
    }
  }
  return std::nullopt;
}

std::optional<CheckFailure> compare(const std::string& check, const RationalVector& got,
                                    const RationalVector& expected) {
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i] != expected[i]) return CheckFailure{check, 1, i + 1, got[i].str(), expected[i].str()};
  }
  return std::nullopt;
}

}  // namespace

ExactRational triangular_number(std::size_t k) { return ExactRational(static_cast<std::int64_t>(k * (k + 1) / 2)); }

ExactMatrix build_A(std::size_t n) {
  require_n(n, "build_A");
  ExactMatrix a(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    const ExactRational denom = rat(k * (k + 1));
    for (std::size_t j = 1; j <= k; ++j) a(k - 1, j - 1) = rat(2 * (k - j + 1)) / denom;
  }
  return a;
}

ExactMatrix build_L(std::size_t n) {
  require_n(n, "build_L");
  ExactMatrix l(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    l(k - 1, k - 1) = triangular_number(k);
    if (k >= 2) l(k - 1, k - 2) = -(ExactRational(2) * triangular_number(k - 1));
    if (k >= 3) l(k - 1, k - 3) = triangular_number(k - 2);
  }
  return l;
}

ExactMatrix build_J(std::size_t m, std::size_t s, std::size_t i) {
  if (m == 0 || s == 0 || i == 0) throw std::invalid_argument("build_J: m, s, i must be >= 1");
  RationalVector d;
  d.reserve(m);
  for (std::size_t j = 0; j < m; ++j) d.push_back(triangular_number(i + j) / triangular_number(s + j));
  return ExactMatrix::diagonal(d);
}

ExactRational det_J_closed_form(std::size_t m, std::size_t s, std::size_t i) {
  if (m == 0 || s == 0 || i == 0) throw std::invalid_argument("det_J_closed_form: m, s, i must be >= 1");
  auto f = [](std::size_t k) { return factorial(static_cast<unsigned>(k)); };
  return f(s - 1) * f(s) * f(i + m - 1) * f(i + m) / (f(i - 1) * f(i) * f(s + m - 1) * f(s + m));
}

ExactMatrix upper_ones(std::size_t k) {
  ExactMatrix u(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) u(i, j) = 1;
  return u;
}

ExactMatrix lower_ones(std::size_t k) { return upper_ones(k).transpose(); }

ExactMatrix triangular_product_shape(std::size_t n) {
  if (n < 2) throw std::invalid_argument("triangular_product_shape: n must be >= 2");
  ExactMatrix m(n - 1, n - 1);
  m(0, 0) = -rat(n);
  for (std::size_t i = 2; i <= n - 1; ++i) {
    m(i - 1, 0) = -rat(n - i);
    m(i - 1, i - 1) = -triangular_number(i);
  }
  return m;
}

InverseReport verify_inverse(std::size_t n) {
  require_n(n, "verify_inverse");
  InverseReport r;
  r.n = n;
  const ExactMatrix a = build_A(n);
  const ExactMatrix l = build_L(n);
  const ExactMatrix id = ExactMatrix::identity(n);

  auto run = [&](const std::string& name, std::optional<CheckFailure> failure) {
    r.checks.push_back(name);
    if (failure && !r.failure) r.failure = std::move(failure);
  };

  run("L*A == I", compare("L*A == I", l * a, id));
  run("A*L == I", compare("A*L == I", a * l, id));
  run("row sums of L == 1", compare("row sums of L == 1", l.row_sums(), RationalVector(n, ExactRational(1))));

  RationalVector expected_cols(n);
  expected_cols[n - 1] = triangular_number(n);
  if (n >= 2) expected_cols[n - 2] = -triangular_number(n - 1);
  run("column sums of L", compare("column sums of L", l.column_sums(), expected_cols));

  if (n >= 2) {
    const ExactMatrix m = minor(l, {1}, {n}).materialize();
    run("triangular product of L^{1;n}",
        compare("triangular product of L^{1;n}", upper_ones(n - 1) * lower_ones(n - 1) * m,
                triangular_product_shape(n)));
  }
  return r;
}

bool minor_scaling_identity(std::size_t n, std::size_t k) {
  if (k < 2 || k + 2 > n) throw std::invalid_argument("minor_scaling_identity: need 2 <= k <= n-2");
  const ExactMatrix small = build_L(n - k + 1);
  const ExactMatrix big = build_L(n);
  const ExactMatrix lhs = minor(small, {1, 2}, {1}).materialize();
  const ExactMatrix rhs = minor(big, index_range(1, k + 1), index_range(1, k)).materialize() *
                          build_J(n - k, k + 1, 2);
  return lhs == rhs;
}

bool face_scaling_identity(std::size_t n, std::size_t k) {
  if (k < 1 || k + 2 > n) throw std::invalid_argument("face_scaling_identity: need 1 <= k <= n-2");
  const ExactMatrix small = build_L(n - k);
  const ExactMatrix big = build_L(n);
  auto deleted_cols = index_range(1, k);
  deleted_cols.push_back(n);
  const ExactMatrix lhs = minor(small, {1}, {n - k}).materialize();
  const ExactMatrix rhs = minor(big, index_range(1, k + 1), deleted_cols).materialize() *
                          build_J(n - k - 1, k + 1, 1);
  return lhs == rhs;
}

}  // namespace areawalk::exact
