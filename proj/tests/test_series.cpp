#include "transition/series.hpp"

#include <doctest.h>

#include <cmath>

using namespace transition;

TEST_CASE("polynomial series stay exact") {
  Series a = Series::constant(QSqrt2(2)) + Series::monomial(QSqrt2::sqrt2(), 2);
  CHECK(a.is_exact());
  CHECK(a.valuation() == 0);
  CHECK(a.coeff(2) == QSqrt2::sqrt2());
  Series b = a * Series::monomial(QSqrt2(1), 3);
  CHECK(b.valuation() == 3);
  CHECK(b.leading() == QSqrt2(2));
  CHECK((a - a).is_zero());
}

TEST_CASE("square root expansions") {
  Series s = Series::sqrt_one_plus(1);
  CHECK_FALSE(s.is_exact());
  CHECK(s.coeff(0) == QSqrt2(1));
  CHECK(s.coeff(2) == QSqrt2(Rational(1) / 2));
  CHECK(s.coeff(4) == QSqrt2(Rational(-1) / 8));
  CHECK(s.eval(0.1) == doctest::Approx(std::sqrt(1.01)).epsilon(1e-14));
  Series m = Series::sqrt_one_plus(-1);
  CHECK(m.eval(0.1) == doctest::Approx(std::sqrt(0.99)).epsilon(1e-14));
}

TEST_CASE("inverse of a series with nonzero constant term") {
  Series one_plus = Series::constant(QSqrt2(1)) + Series::monomial(QSqrt2(1), 1);
  Series inv = one_plus.inverse();
  CHECK(inv.coeff(5) == QSqrt2(-1));
  CHECK((one_plus * inv).coeff(0) == QSqrt2(1));
  CHECK((one_plus * inv).coeff(7).is_zero());
}

TEST_CASE("products of truncated series lose precision where they should") {
  Series s = Series::sqrt_one_plus(1).shifted(2);
  CHECK(s.valuation() == 2);
  CHECK(s.precision() > Series::kTerms);
  CHECK(s.precision() < Series::kExact);
}
