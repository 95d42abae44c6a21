#pragma once

// Closed-form coefficients in the transition parameter t and families of
// half-spaces built from them.

#include "transition/exact.hpp"
#include "transition/forms.hpp"
#include "transition/series.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace transition {

/// Raised when an exact evaluation leaves Q(sqrt 2), e.g. sqrt(1+t^2) at t = 1/2.
class NotRepresentable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Expression over the atoms {c + d*sqrt2, t, |t|, t^2, sqrt(1+t^2),
/// sqrt(1-t^2)} closed under +, - and *.
///
/// Text syntax (prefix): atoms `3`, `-1/2`, `0.25`, `r2`, `t`, `|t|`, `t^2`,
/// `sqrt(1+t^2)`, `sqrt(1-t^2)`, any of them with a leading `-`, and the
/// operators `(+ a b ...)`, `(- a b)`, `(- a)`, `(* a b ...)`.
class ParamScalar {
 public:
  enum class Kind { constant, t, abs_t, t_squared, sqrt_one_plus_t2, sqrt_one_minus_t2, add, sub, mul, neg };

  ParamScalar() : ParamScalar(constant(0)) {}
  static ParamScalar constant(const QSqrt2& c);
  static ParamScalar atom(Kind kind);
  static ParamScalar parse(std::string_view text);

  Kind kind() const;
  std::string str() const;

  double eval(double t) const;
  QSqrt2 eval_exact(const Rational& t) const;
  /// Expansion at t = side * u, u -> 0+, for side = +1 or -1.
  Series series(int side) const;
  /// True when the value at t and -t always agree (only |t|, t^2 and
  /// radicals of t^2 occur, or t appears in even products).
  bool is_even() const;
  bool is_constant() const;

  friend ParamScalar operator+(const ParamScalar& a, const ParamScalar& b);
  friend ParamScalar operator-(const ParamScalar& a, const ParamScalar& b);
  friend ParamScalar operator*(const ParamScalar& a, const ParamScalar& b);
  friend ParamScalar operator-(const ParamScalar& a);

  struct Node;  // expression tree node, defined in param.cpp

 private:
  explicit ParamScalar(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parameter interval, with closed or open ends.
struct Domain {
  double lo = -1.0;
  double hi = 1.0;
  bool lo_closed = false;
  bool hi_closed = true;
  std::string text = "(-1,1]";

  static Domain everything();
  static Domain parse(std::string_view text);
  bool contains(double t) const;
};

/// One wall of a parametrized polytope: coefficient expressions for t >= 0
/// and, when the continuation changes formula, for t < 0.
struct HalfSpaceFamily {
  std::string label;
  std::vector<ParamScalar> pos;
  std::vector<ParamScalar> neg;  // empty when pos is used on both sides
  Domain domain;

  int size() const { return static_cast<int>(pos.size()); }
  const std::vector<ParamScalar>& branch(double t) const { return t < 0 && !neg.empty() ? neg : pos; }
  const std::vector<ParamScalar>& branch_for_side(int side) const {
    return side < 0 && !neg.empty() ? neg : pos;
  }
};

enum class Rescaling { gamma, eta };
enum class Side { pos, neg };
std::string to_string(Rescaling r);
std::string to_string(Side s);
Rescaling rescaling_from_string(const std::string& s);
Side side_from_string(const std::string& s);
inline int sign_of(Side s) { return s == Side::pos ? 1 : -1; }

/// Raw coefficient vector at t (not rescaled, not canonicalized).
Eigen::VectorXd family_coefficients(const HalfSpaceFamily& f, double t);
/// Canonical evaluation at t.
DualHalfSpace family_eval(const HalfSpaceFamily& f, double t);
/// Exact coefficients at a rational t, as written in the table (no scaling).
ExactVec family_eval_exact(const HalfSpaceFamily& f, const Rational& t);

/// The wall transported by gamma_{|t|} (coordinate 0 divided by |t|) or by
/// eta_{|t|} (last coordinate multiplied by |t|), canonicalized.
DualHalfSpace dual_rescale(const HalfSpaceFamily& f, Rescaling r, double t);

struct WallLimit {
  DualHalfSpace wall;
  /// Leading-order coefficients, scaled to unit max-magnitude.
  ExactVec exact;
  /// Distance between the limit and the canonical sample at |t| = 1e-5.
  double sample_gap = 0.0;
};

/// One-sided limit of dual_rescale as t -> 0, by leading-order extraction of
/// the series expansion, guarded by the three-sample numeric check.
WallLimit rescaled_limit_detailed(const HalfSpaceFamily& f, Rescaling r, Side side);
inline DualHalfSpace rescaled_limit(const HalfSpaceFamily& f, Rescaling r, Side side) {
  return rescaled_limit_detailed(f, r, side).wall;
}

/// Leading coefficients of a vector of series: the common lowest power and
/// the coefficients there. Throws when precision is insufficient.
ExactVec leading_vector(const std::vector<Series>& v);

}  // namespace transition
