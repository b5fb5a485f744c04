#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace areawalk {

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator).
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  ExactRational(std::int64_t num, std::int64_t den);
  explicit ExactRational(const mpz_class& integer);
  explicit ExactRational(mpq_class value);

  /// Parses "a", "-a" or "a/b" in base 10.
  static ExactRational parse(std::string_view text);
  /// Exact binary value of a finite double.
  static ExactRational from_double(double value);

  [[nodiscard]] std::string numerator_str() const;
  [[nodiscard]] std::string denominator_str() const;
  /// "a/b", or "a" when the denominator is 1.
  [[nodiscard]] std::string str() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] int sign() const;
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  ExactRational& operator+=(const ExactRational& rhs);
  ExactRational& operator-=(const ExactRational& rhs);
  ExactRational& operator*=(const ExactRational& rhs);
  ExactRational& operator/=(const ExactRational& rhs);

  friend ExactRational operator+(ExactRational lhs, const ExactRational& rhs) { return lhs += rhs; }
  friend ExactRational operator-(ExactRational lhs, const ExactRational& rhs) { return lhs -= rhs; }
  friend ExactRational operator*(ExactRational lhs, const ExactRational& rhs) { return lhs *= rhs; }
  friend ExactRational operator/(ExactRational lhs, const ExactRational& rhs) { return lhs /= rhs; }
  friend ExactRational operator-(const ExactRational& value);

  friend bool operator==(const ExactRational& lhs, const ExactRational& rhs);
  friend std::strong_ordering operator<=>(const ExactRational& lhs, const ExactRational& rhs);

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactRational& value);

/// base^exponent for a non-negative integer exponent.
ExactRational pow(const ExactRational& base, unsigned exponent);
ExactRational factorial(unsigned n);

using RationalVector = std::vector<ExactRational>;

/// Dense row-major matrix of exact rationals. Indices are 0-based.
class ExactMatrix {
 public:
  ExactMatrix(std::size_t rows, std::size_t cols);
  ExactMatrix(std::initializer_list<std::initializer_list<ExactRational>> rows);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix diagonal(const RationalVector& entries);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  ExactRational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const ExactRational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  [[nodiscard]] ExactMatrix transpose() const;
  [[nodiscard]] RationalVector apply(const RationalVector& x) const;
  [[nodiscard]] RationalVector row_sums() const;
  [[nodiscard]] RationalVector column_sums() const;
  /// Fraction-free Gaussian elimination on a copy.
  [[nodiscard]] ExactRational determinant() const;

  friend ExactMatrix operator*(const ExactMatrix& lhs, const ExactMatrix& rhs);
  friend bool operator==(const ExactMatrix& lhs, const ExactMatrix& rhs) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<ExactRational> entries_;
};

/// Read-only view of a matrix with some rows and columns deleted.
///
/// Deleted indices are 1-based, matching the M^{rows;cols} minor notation;
/// view coordinates are 0-based like ExactMatrix. The viewed matrix must
/// outlive the view.
class MinorView {
 public:
  MinorView(const ExactMatrix& base, std::vector<std::size_t> deleted_rows,
            std::vector<std::size_t> deleted_cols);

  [[nodiscard]] std::size_t rows() const { return row_map_.size(); }
  [[nodiscard]] std::size_t cols() const { return col_map_.size(); }
  const ExactRational& operator()(std::size_t i, std::size_t j) const {
    return (*base_)(row_map_[i], col_map_[j]);
  }
  [[nodiscard]] ExactMatrix materialize() const;

 private:
  const ExactMatrix* base_;
  std::vector<std::size_t> row_map_;
  std::vector<std::size_t> col_map_;
};

inline MinorView minor(const ExactMatrix& m, std::vector<std::size_t> deleted_rows,
                       std::vector<std::size_t> deleted_cols) {
  return MinorView(m, std::move(deleted_rows), std::move(deleted_cols));
}

/// Inclusive 1-based index range {first, ..., last}; empty when last < first.
std::vector<std::size_t> index_range(std::size_t first, std::size_t last);

}  // namespace areawalk
