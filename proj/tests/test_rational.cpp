#include <sstream>
#include <stdexcept>

#include "areawalk/power_series.hpp"
#include "areawalk/rational.hpp"
#include "doctest.h"

using areawalk::ExactMatrix;
using areawalk::ExactRational;

TEST_CASE("rationals are kept in lowest terms with a positive denominator") {
  ExactRational a(6, -4);
  CHECK(a.numerator_str() == "-3");
  CHECK(a.denominator_str() == "2");
  CHECK(a.str() == "-3/2");
  CHECK(ExactRational(10, 5).str() == "2");
  CHECK(ExactRational(10, 5).is_integer());
  CHECK(ExactRational(0, 7).sign() == 0);
  CHECK(ExactRational(0, 7).denominator_str() == "1");
}

TEST_CASE("rational arithmetic and ordering") {
  const ExactRational half(1, 2);
  const ExactRational third(1, 3);
  CHECK(half + third == ExactRational(5, 6));
  CHECK(half - third == ExactRational(1, 6));
  CHECK(half * third == ExactRational(1, 6));
  CHECK(half / third == ExactRational(3, 2));
  CHECK(-half == ExactRational(-1, 2));
  CHECK(third < half);
  CHECK(half > third);
  CHECK(areawalk::pow(ExactRational(2, 3), 3) == ExactRational(8, 27));
  CHECK(areawalk::pow(ExactRational(5), 0) == ExactRational(1));
  CHECK(areawalk::factorial(0) == ExactRational(1));
  CHECK(areawalk::factorial(10) == ExactRational(3628800));
}

TEST_CASE("rational parse, double conversion and printing") {
  CHECK(ExactRational::parse("20/3") == ExactRational(20, 3));
  CHECK(ExactRational::parse("-7") == ExactRational(-7));
  CHECK(ExactRational::parse("4/6") == ExactRational(2, 3));
  CHECK_THROWS_AS(ExactRational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(ExactRational::parse("abc"), std::invalid_argument);
  CHECK(ExactRational::from_double(0.375) == ExactRational(3, 8));
  CHECK(ExactRational::from_double(0.1).to_double() == 0.1);
  CHECK(ExactRational::from_double(0.1) != ExactRational(1, 10));
  CHECK_THROWS_AS(ExactRational::from_double(1.0 / 0.0), std::domain_error);
  std::ostringstream os;
  os << ExactRational(3, 2);
  CHECK(os.str() == "3/2");
}

TEST_CASE("rational errors") {
  CHECK_THROWS_AS(ExactRational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(ExactRational(1) / ExactRational(0), std::domain_error);
}

TEST_CASE("matrix product, transpose and sums") {
  const ExactMatrix m{{1, 2}, {3, 4}};
  const ExactMatrix id = ExactMatrix::identity(2);
  CHECK(m * id == m);
  CHECK(m.transpose() == ExactMatrix{{1, 3}, {2, 4}});
  CHECK(m.row_sums() == areawalk::RationalVector{3, 7});
  CHECK(m.column_sums() == areawalk::RationalVector{4, 6});
  CHECK(m.apply({1, -1}) == areawalk::RationalVector{-1, -1});
  CHECK((m * m) == ExactMatrix{{7, 10}, {15, 22}});
  CHECK_THROWS_AS(static_cast<void>(m.apply({1, 2, 3})), std::invalid_argument);
  CHECK_THROWS_AS(ExactMatrix(2, 3) * ExactMatrix(2, 3), std::invalid_argument);
}

TEST_CASE("determinant matches cofactor expansion") {
  const ExactMatrix m{{2, -1, 0}, {ExactRational(1, 2), 3, 1}, {4, 0, ExactRational(-2, 3)}};
  // Cofactor expansion along the first row, written out by hand.
  const ExactRational expected = ExactRational(2) * (ExactRational(3) * ExactRational(-2, 3) - 0) -
                                 ExactRational(-1) * (ExactRational(1, 2) * ExactRational(-2, 3) - ExactRational(4)) +
                                 0;
  CHECK(m.determinant() == expected);
  CHECK(ExactMatrix{{1, 2}, {2, 4}}.determinant() == ExactRational(0));
  CHECK(ExactMatrix::diagonal({2, 3, ExactRational(1, 6)}).determinant() == ExactRational(1));
  CHECK_THROWS_AS(static_cast<void>(ExactMatrix(2, 3).determinant()), std::invalid_argument);
}

TEST_CASE("minor view deletes 1-based rows and columns") {
  const ExactMatrix m{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const auto v = areawalk::minor(m, {1}, {3});
  CHECK(v.rows() == 2);
  CHECK(v.cols() == 2);
  CHECK(v.materialize() == ExactMatrix{{4, 5}, {7, 8}});
  CHECK(areawalk::index_range(2, 4) == std::vector<std::size_t>{2, 3, 4});
  CHECK(areawalk::index_range(3, 2).empty());
  CHECK_THROWS_AS(areawalk::minor(m, {4}, {}), std::out_of_range);
  CHECK_THROWS_AS(static_cast<void>(areawalk::minor(m, {1, 2, 3}, {}).materialize()), std::invalid_argument);
}

TEST_CASE("formal series reciprocal and Lagrange inversion") {
  // 1/(1 - x) = 1 + x + x^2 + ...
  areawalk::FormalSeries s(areawalk::RationalVector{1, -1, 0, 0, 0});
  const auto r = s.reciprocal();
  for (std::size_t k = 0; k < 5; ++k) CHECK(r[k] == ExactRational(1));
  // q(x) = x - x^2 has inverse (1 - sqrt(1 - 4x))/2 with Catalan coefficients.
  areawalk::FormalSeries q(areawalk::RationalVector{0, 1, -1, 0, 0, 0, 0});
  const auto inv = areawalk::lagrange_inverse_coefficients(q, 6);
  CHECK(inv == areawalk::RationalVector{1, 1, 2, 5, 14, 42});
  CHECK_THROWS_AS(static_cast<void>(areawalk::FormalSeries(areawalk::RationalVector{0, 1}).reciprocal()), std::domain_error);
}
