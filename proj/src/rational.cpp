#include "areawalk/rational.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace areawalk {

namespace {

mpz_class to_mpz(std::int64_t v) {
  static_assert(sizeof(long) >= sizeof(std::int64_t), "mpz_class(long) must hold int64");
  return mpz_class(static_cast<long>(v));
}

}  // namespace

ExactRational::ExactRational(std::int64_t value) : value_(to_mpz(value)) {}

ExactRational::ExactRational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("ExactRational: zero denominator");
  value_ = mpq_class(to_mpz(num), to_mpz(den));
  value_.canonicalize();
}

ExactRational::ExactRational(const mpz_class& integer) : value_(integer) {}

ExactRational::ExactRational(mpq_class value) : value_(std::move(value)) {
  if (value_.get_den() == 0) throw std::invalid_argument("ExactRational: zero denominator");
  value_.canonicalize();
}

ExactRational ExactRational::parse(std::string_view text) {
  mpq_class q;
  std::string s(text);
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("ExactRational: cannot parse '" + s + "'");
  }
  return ExactRational(std::move(q));
}

ExactRational ExactRational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("ExactRational: non-finite double");
  return ExactRational(mpq_class(value));
}

std::string ExactRational::numerator_str() const { return value_.get_num().get_str(); }
std::string ExactRational::denominator_str() const { return value_.get_den().get_str(); }

std::string ExactRational::str() const {
  if (is_integer()) return numerator_str();
  return numerator_str() + "/" + denominator_str();
}

double ExactRational::to_double() const { return value_.get_d(); }
int ExactRational::sign() const { return sgn(value_); }
bool ExactRational::is_integer() const { return value_.get_den() == 1; }

ExactRational& ExactRational::operator+=(const ExactRational& rhs) {
  value_ += rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator-=(const ExactRational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator*=(const ExactRational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator/=(const ExactRational& rhs) {
  if (rhs.sign() == 0) throw std::domain_error("ExactRational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

ExactRational operator-(const ExactRational& value) { return ExactRational(mpq_class(-value.value_)); }

bool operator==(const ExactRational& lhs, const ExactRational& rhs) { return lhs.value_ == rhs.value_; }

std::strong_ordering operator<=>(const ExactRational& lhs, const ExactRational& rhs) {
  const int c = cmp(lhs.value_, rhs.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const ExactRational& value) { return os << value.str(); }

ExactRational pow(const ExactRational& base, unsigned exponent) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return ExactRational(mpq_class(num, den));
}

ExactRational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return ExactRational(f);
}

// ---------------------------------------------------------------------------

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("ExactMatrix: empty shape");
}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<ExactRational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("ExactMatrix: empty shape");
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ExactMatrix: ragged rows");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::diagonal(const RationalVector& entries) {
  ExactMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalVector ExactMatrix::apply(const RationalVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("ExactMatrix::apply: dimension mismatch");
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    mpq_class acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& a = (*this)(i, j).raw();
      if (sgn(a) != 0) acc += a * x[j].raw();
    }
    out[i] = ExactRational(std::move(acc));
  }
  return out;
}

RationalVector ExactMatrix::row_sums() const {
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j);
  return out;
}

RationalVector ExactMatrix::column_sums() const {
  RationalVector out(cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[j] += (*this)(i, j);
  return out;
}

ExactRational ExactMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = rows_;
  std::vector<mpq_class> a(n * n);
  for (std::size_t k = 0; k < n * n; ++k) a[k] = entries_[k].raw();
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot * n + col]) == 0) ++pivot;
    if (pivot == n) return ExactRational(0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      det = -det;
    }
    const mpq_class p = a[col * n + col];
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a[r * n + col]) == 0) continue;
      const mpq_class factor = a[r * n + col] / p;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= factor * a[col * n + j];
    }
  }
  return ExactRational(det);
}

ExactMatrix operator*(const ExactMatrix& lhs, const ExactMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw std::invalid_argument("ExactMatrix product: shape mismatch");
  ExactMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i) {
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      mpq_class acc = 0;
      for (std::size_t k = 0; k < lhs.cols_; ++k) {
        const auto& a = lhs(i, k).raw();
        const auto& b = rhs(k, j).raw();
        if (sgn(a) != 0 && sgn(b) != 0) acc += a * b;
      }
      out(i, j) = ExactRational(std::move(acc));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> kept_indices(std::size_t extent, std::vector<std::size_t> deleted) {
  std::sort(deleted.begin(), deleted.end());
  if (std::adjacent_find(deleted.begin(), deleted.end()) != deleted.end()) {
    throw std::invalid_argument("minor: repeated deleted index");
  }
  for (auto d : deleted) {
    if (d == 0 || d > extent) throw std::out_of_range("minor: deleted index out of range");
  }
  std::vector<std::size_t> kept;
  kept.reserve(extent - deleted.size());
  for (std::size_t i = 1; i <= extent; ++i) {
    if (!std::binary_search(deleted.begin(), deleted.end(), i)) kept.push_back(i - 1);
  }
  return kept;
}

}  // namespace

MinorView::MinorView(const ExactMatrix& base, std::vector<std::size_t> deleted_rows,
                     std::vector<std::size_t> deleted_cols)
    : base_(&base),
      row_map_(kept_indices(base.rows(), std::move(deleted_rows))),
      col_map_(kept_indices(base.cols(), std::move(deleted_cols))) {
  if (row_map_.empty() || col_map_.empty()) throw std::invalid_argument("minor: nothing left");
}

ExactMatrix MinorView::materialize() const {
  ExactMatrix out(rows(), cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) out(i, j) = (*this)(i, j);
  return out;
}

std::vector<std::size_t> index_range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> out;
  for (std::size_t i = first; i <= last && first <= last; ++i) out.push_back(i);
  return out;
}

}  // namespace areawalk
