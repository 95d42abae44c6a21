#include "transition/exact.hpp"

#include <doctest.h>

#include <cmath>

using namespace transition;

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/4") == Rational(3) / Rational(4));
  CHECK(parse_rational("-0.25") == Rational(-1) / Rational(4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("field operations in Q(sqrt 2)") {
  const QSqrt2 r2 = QSqrt2::sqrt2();
  CHECK(r2 * r2 == QSqrt2(2));
  QSqrt2 x(1, 1);  // 1 + sqrt 2
  CHECK(x * (QSqrt2(1) / x) == QSqrt2(1));
  CHECK((x * QSqrt2(-1, 1)) == QSqrt2(1));
  CHECK(QSqrt2(3, -2).sign() > 0);  // 3 - 2 sqrt 2 = 0.17...
  CHECK(QSqrt2(-3, 2).sign() < 0);
  CHECK(QSqrt2(0).is_zero());
  CHECK(x.to_double() == doctest::Approx(1 + std::sqrt(2.0)));
}

TEST_CASE("printing") {
  CHECK(QSqrt2::sqrt2().str() == "r2");
  CHECK((-QSqrt2::sqrt2()).str() == "-r2");
  CHECK(QSqrt2(Rational(1) / 2, Rational(-3)).str() == "1/2-3*r2");
  CHECK(QSqrt2(5).str() == "5");
}

TEST_CASE("square roots that stay in the field") {
  REQUIRE(exact_sqrt(Rational(25) / Rational(16)));
  CHECK(*exact_sqrt(Rational(25) / Rational(16)) == QSqrt2(Rational(5) / Rational(4)));
  REQUIRE(exact_sqrt(Rational(1) / Rational(2)));
  CHECK(*exact_sqrt(Rational(1) / Rational(2)) == QSqrt2(0, Rational(1) / Rational(2)));
  CHECK_FALSE(exact_sqrt(Rational(3)));
  CHECK_FALSE(exact_sqrt(Rational(-1)));
}

TEST_CASE("exact matrices through Eigen") {
  ExactMat m = ExactMat::Identity(2, 2);
  m(0, 1) = QSqrt2::sqrt2();
  ExactVec v(2);
  v << QSqrt2(1), QSqrt2(1);
  ExactVec w = m * v;
  CHECK(w[0] == QSqrt2(1, 1));
  CHECK(to_double(w)[0] == doctest::Approx(1 + std::sqrt(2.0)));
}
