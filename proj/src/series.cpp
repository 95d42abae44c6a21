#include "transition/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace transition {

Series::Series(int val, std::vector<QSqrt2> coeffs, int prec)
    : val_(val), coeffs_(std::move(coeffs)), prec_(prec) {
  normalize();
}

void Series::normalize() {
  if (prec_ >= kExact) prec_ = kExact;
  // Drop coefficients at or beyond the precision.
  if (prec_ < kExact) {
    long keep = static_cast<long>(prec_) - val_;
    if (keep < 0) keep = 0;
    if (static_cast<long>(coeffs_.size()) > keep) coeffs_.resize(static_cast<std::size_t>(keep));
  }
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    val_ = prec_;
    return;
  }
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
  val_ += static_cast<int>(lead);
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (prec_ < kExact && prec_ > val_ + kTerms) prec_ = val_ + kTerms;
  if (static_cast<int>(coeffs_.size()) > kTerms) {
    coeffs_.resize(kTerms);
    prec_ = val_ + kTerms;
  }
}

Series Series::constant(const QSqrt2& c) { return monomial(c, 0); }

Series Series::monomial(const QSqrt2& c, int power) { return Series(power, {c}, kExact); }

Series Series::sqrt_one_plus(int s) {
  if (s != 1 && s != -1) throw std::invalid_argument("sqrt_one_plus expects s = +-1");
  std::vector<QSqrt2> c(kTerms);
  Rational binom = 1;
  for (int k = 0; 2 * k < kTerms; ++k) {
    if (k > 0) binom = binom * (Rational(1, 2) - (k - 1)) / k;
    Rational term = (s < 0 && k % 2 == 1) ? Rational(-binom) : binom;
    c[static_cast<std::size_t>(2 * k)] = QSqrt2(term);
  }
  return Series(0, std::move(c), kTerms);
}

QSqrt2 Series::coeff(int power) const {
  if (power >= prec_) throw std::domain_error("series coefficient beyond known precision");
  if (is_zero() || power < val_) return 0;
  std::size_t idx = static_cast<std::size_t>(power - val_);
  return idx < coeffs_.size() ? coeffs_[idx] : QSqrt2(0);
}

QSqrt2 Series::leading() const {
  if (is_zero()) throw std::domain_error("leading term of a series with no known nonzero term");
  return coeffs_.front();
}

Series Series::operator-() const {
  std::vector<QSqrt2> c = coeffs_;
  for (auto& x : c) x = -x;
  return Series(val_, std::move(c), prec_);
}

Series Series::operator+(const Series& o) const {
  int prec = std::min(prec_, o.prec_);
  if (is_zero() && o.is_zero()) return Series(prec, {}, prec);
  int lo = std::min(valuation(), o.valuation());
  int hi = lo;
  if (!is_zero()) hi = std::max(hi, val_ + static_cast<int>(coeffs_.size()));
  if (!o.is_zero()) hi = std::max(hi, o.val_ + static_cast<int>(o.coeffs_.size()));
  hi = std::min(hi, prec);
  std::vector<QSqrt2> c;
  for (int p = lo; p < hi; ++p) {
    QSqrt2 a = (is_zero() || p < val_ || p >= val_ + static_cast<int>(coeffs_.size()))
                   ? QSqrt2(0)
                   : coeffs_[static_cast<std::size_t>(p - val_)];
    QSqrt2 b = (o.is_zero() || p < o.val_ || p >= o.val_ + static_cast<int>(o.coeffs_.size()))
                   ? QSqrt2(0)
                   : o.coeffs_[static_cast<std::size_t>(p - o.val_)];
    c.push_back(a + b);
  }
  return Series(lo, std::move(c), prec);
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
  int prec = kExact;
  if (!is_exact()) prec = std::min(prec, prec_ + o.valuation());
  if (!o.is_exact()) prec = std::min(prec, o.prec_ + valuation());
  if (is_zero() || o.is_zero()) return Series(prec, {}, prec);
  int val = val_ + o.val_;
  std::size_t len = coeffs_.size() + o.coeffs_.size() - 1;
  if (prec < kExact) len = std::min<std::size_t>(len, static_cast<std::size_t>(prec - val));
  len = std::min<std::size_t>(len, static_cast<std::size_t>(kTerms));
  std::vector<QSqrt2> c(len);
  for (std::size_t i = 0; i < coeffs_.size() && i < len; ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size() && i + j < len; ++j) {
      c[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return Series(val, std::move(c), prec);
}

Series Series::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of a series with no known nonzero term");
  if (is_exact() && coeffs_.size() == 1) return Series(-val_, {QSqrt2(1) / coeffs_[0]}, kExact);
  int terms = kTerms;
  if (!is_exact()) terms = std::min(terms, prec_ - val_);
  std::vector<QSqrt2> b(static_cast<std::size_t>(terms));
  QSqrt2 inv0 = QSqrt2(1) / coeffs_[0];
  b[0] = inv0;
  for (int k = 1; k < terms; ++k) {
    QSqrt2 acc = 0;
    for (int j = 1; j <= k && j < static_cast<int>(coeffs_.size()); ++j) {
      acc += coeffs_[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
    }
    b[static_cast<std::size_t>(k)] = -inv0 * acc;
  }
  return Series(-val_, std::move(b), -val_ + terms);
}

Series Series::shifted(int k) const {
  int prec = is_exact() ? kExact : prec_ + k;
  return Series(is_zero() ? prec : val_ + k, coeffs_, prec);
}

double Series::eval(double u) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    acc += coeffs_[i].to_double() * std::pow(u, val_ + static_cast<int>(i));
  }
  return acc;
}

std::string Series::str() const {
  std::ostringstream os;
  if (is_zero()) {
    os << "0";
  } else {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      if (os.tellp() > 0) os << " + ";
      os << "(" << coeffs_[i] << ")u^" << val_ + static_cast<int>(i);
    }
  }
  if (!is_exact()) os << " + O(u^" << prec_ << ")";
  return os.str();
}

}  // namespace transition
