#pragma once

// Truncated Laurent series in u = |t| with Q(sqrt 2) coefficients. Used to
// read off leading-order behaviour of table coefficients as t -> 0.

#include "transition/exact.hpp"

#include <string>
#include <vector>

namespace transition {

class Series {
 public:
  /// Number of coefficients kept for non-polynomial series.
  static constexpr int kTerms = 16;
  /// Precision marker for series that are exact polynomials in u.
  static constexpr int kExact = 1 << 20;

  Series() = default;  // exact zero
  static Series constant(const QSqrt2& c);
  static Series monomial(const QSqrt2& c, int power);
  /// sqrt(1 + s u^2) for s = +1 or -1.
  static Series sqrt_one_plus(int s);

  bool is_exact() const { return prec_ >= kExact; }
  /// True when every known coefficient vanishes.
  bool is_zero() const { return coeffs_.empty(); }
  /// Lowest power with a nonzero coefficient (equals precision() for zero).
  int valuation() const { return is_zero() ? prec_ : val_; }
  /// Powers below this are known exactly; higher ones are truncated.
  int precision() const { return prec_; }
  QSqrt2 coeff(int power) const;
  QSqrt2 leading() const;

  Series operator-() const;
  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator*(const Series& o) const;
  Series inverse() const;
  /// Multiplication by u^k.
  Series shifted(int k) const;

  /// Partial sum at u (for cross-checks only).
  double eval(double u) const;
  std::string str() const;

 private:
  Series(int val, std::vector<QSqrt2> coeffs, int prec);
  void normalize();

  int val_ = 0;
  std::vector<QSqrt2> coeffs_;  // coefficients of u^val_, u^(val_+1), ...
  int prec_ = kExact;
};

}  // namespace transition
