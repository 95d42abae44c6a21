#include "transition/exact.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace transition {

namespace {

using boost::multiprecision::cpp_int;

std::optional<cpp_int> integer_sqrt(const cpp_int& n) {
  if (n < 0) return std::nullopt;
  cpp_int r = boost::multiprecision::sqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  auto num = integer_sqrt(boost::multiprecision::numerator(r));
  auto den = integer_sqrt(boost::multiprecision::denominator(r));
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

int rational_sign(const Rational& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      cpp_int num(s.substr(0, slash));
      cpp_int den(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(cpp_int(s));
    bool negative = !s.empty() && s[0] == '-';
    std::string int_part = s.substr(0, dot);
    std::string frac_part = s.substr(dot + 1);
    if (int_part.empty() || int_part == "-" || int_part == "+") int_part += "0";
    for (char c : frac_part) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad decimal '" + s + "'");
    }
    cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(frac_part.size()));
    cpp_int whole(int_part);
    cpp_int frac = frac_part.empty() ? cpp_int(0) : cpp_int(frac_part);
    Rational value(whole);
    Rational tail(frac, scale);
    return negative ? Rational(value - tail) : Rational(value + tail);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal '" + s + "'");
  }
}

int QSqrt2::sign() const {
  int sa = rational_sign(a_);
  int sb = rational_sign(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 2 b^2.
  Rational lhs = a_ * a_;
  Rational rhs = 2 * b_ * b_;
  if (lhs == rhs) return 0;  // unreachable for rationals, sqrt 2 is irrational
  return lhs > rhs ? sa : sb;
}

double QSqrt2::to_double() const {
  return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(2.0);
}

std::string QSqrt2::str() const {
  std::ostringstream os;
  auto root_term = [&os](const Rational& mag) {
    if (mag == 1) {
      os << "r2";
    } else {
      os << mag << "*r2";
    }
  };
  if (b_ == 0) {
    os << a_;
  } else if (a_ == 0) {
    if (b_ < 0) os << "-";
    root_term(b_ < 0 ? Rational(-b_) : b_);
  } else {
    os << a_ << (b_ < 0 ? "-" : "+");
    root_term(b_ < 0 ? Rational(-b_) : b_);
  }
  return os.str();
}

QSqrt2& QSqrt2::operator+=(const QSqrt2& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QSqrt2& QSqrt2::operator-=(const QSqrt2& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QSqrt2& QSqrt2::operator*=(const QSqrt2& o) {
  Rational a = a_ * o.a_ + 2 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QSqrt2& QSqrt2::operator/=(const QSqrt2& o) {
  Rational norm = o.a_ * o.a_ - 2 * o.b_ * o.b_;
  if (norm == 0) throw std::domain_error("division by zero in Q(sqrt 2)");
  *this *= o.conjugate();
  a_ /= norm;
  b_ /= norm;
  return *this;
}

std::optional<QSqrt2> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (auto q = rational_sqrt(r)) return QSqrt2(*q, 0);
  if (auto q = rational_sqrt(r / 2)) return QSqrt2(0, *q);
  return std::nullopt;
}

Eigen::VectorXd to_double(const ExactVec& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
  return out;
}

Eigen::MatrixXd to_double(const ExactMat& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

}  // namespace transition
