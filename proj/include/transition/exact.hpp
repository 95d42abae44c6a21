#pragma once

// Exact arithmetic in the quadratic field Q(sqrt 2).
//
// At a rational parameter (with rational radicals) every wall coefficient of
// the gallery families lies in this field, so pairings, Gram entries and
// vertex coordinates can be compared for exact equality.

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace transition {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-1/2" or a finite decimal such as "0.25" into an exact rational.
Rational parse_rational(std::string_view text);

/// Number of the form a + b*sqrt(2) with a, b rational.
class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(int value) : a_(value) {}  // NOLINT: implicit, Eigen needs Scalar(0)
  QSqrt2(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}

  static QSqrt2 sqrt2() { return {0, 1}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  int sign() const;
  double to_double() const;
  QSqrt2 conjugate() const { return {a_, -b_}; }
  std::string str() const;

  QSqrt2 operator-() const { return {-a_, -b_}; }
  QSqrt2& operator+=(const QSqrt2& o);
  QSqrt2& operator-=(const QSqrt2& o);
  QSqrt2& operator*=(const QSqrt2& o);
  QSqrt2& operator/=(const QSqrt2& o);

  friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
  friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
  friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
  friend QSqrt2 operator/(QSqrt2 x, const QSqrt2& y) { return x /= y; }

  friend bool operator==(const QSqrt2& x, const QSqrt2& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QSqrt2& x, const QSqrt2& y) { return !(x == y); }
  friend bool operator<(const QSqrt2& x, const QSqrt2& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QSqrt2& x, const QSqrt2& y) { return y < x; }
  friend bool operator<=(const QSqrt2& x, const QSqrt2& y) { return !(y < x); }
  friend bool operator>=(const QSqrt2& x, const QSqrt2& y) { return !(x < y); }

  friend std::ostream& operator<<(std::ostream& os, const QSqrt2& x) { return os << x.str(); }

 private:
  Rational a_ = 0;
  Rational b_ = 0;
};

inline QSqrt2 abs(const QSqrt2& x) { return x.sign() < 0 ? -x : x; }
inline QSqrt2 abs2(const QSqrt2& x) { return x * x; }
inline const QSqrt2& conj(const QSqrt2& x) { return x; }
inline const QSqrt2& real(const QSqrt2& x) { return x; }
inline QSqrt2 imag(const QSqrt2&) { return 0; }

/// Square root of a non-negative rational when it lies in Q(sqrt 2), i.e. when
/// r or r/2 is the square of a rational.
std::optional<QSqrt2> exact_sqrt(const Rational& r);

using ExactVec = Eigen::Matrix<QSqrt2, Eigen::Dynamic, 1>;
using ExactMat = Eigen::Matrix<QSqrt2, Eigen::Dynamic, Eigen::Dynamic>;

Eigen::VectorXd to_double(const ExactVec& v);
Eigen::MatrixXd to_double(const ExactMat& m);

}  // namespace transition

namespace Eigen {

template <>
struct NumTraits<transition::QSqrt2> : GenericNumTraits<transition::QSqrt2> {
  using Real = transition::QSqrt2;
  using NonInteger = transition::QSqrt2;
  using Nested = transition::QSqrt2;
  using Literal = transition::QSqrt2;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 40,
    MulCost = 80
  };

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
