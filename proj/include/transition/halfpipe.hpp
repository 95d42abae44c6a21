#pragma once

// Half-pipe space as the space of spacelike hyperplanes of Minkowski space:
// the group isomorphism between Isom(M^n) and the half-pipe matrix group,
// the point/hyperplane dictionary and the classification of isometries.

#include "transition/forms.hpp"

#include <optional>
#include <string>
#include <utility>

namespace transition {

/// diag(-1, 1, ..., 1) on R^n, as a scalar matrix of type S.
template <class S>
Mat<S> minkowski_gram(int n) {
  Mat<S> j = Mat<S>::Identity(n, n);
  j(0, 0) = S(-1);
  return j;
}

/// (L, b) -> [[A, 0], [b^T J A, eps]] where L = eps * A and A preserves the
/// future cone. Works for double and QSqrt2.
template <class S>
Mat<S> mink_to_hp_matrix(const Mat<S>& linear, const Vec<S>& translation) {
  const int n = static_cast<int>(linear.rows());
  if (linear.cols() != n || translation.size() != n) throw std::invalid_argument("Minkowski isometry has mismatched sizes");
  const int eps = sign_of(linear(0, 0), 0.0) >= 0 ? 1 : -1;
  Mat<S> a = linear * S(eps);
  Mat<S> m = Mat<S>::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = a;
  m.block(n, 0, 1, n) = (translation.transpose() * minkowski_gram<S>(n) * a);
  m(n, n) = S(eps);
  return m;
}

/// Inverse of mink_to_hp_matrix on matrices already in block form with
/// |det| = 1; b = A J u^T for the bottom row u.
template <class S>
std::pair<Mat<S>, Vec<S>> hp_matrix_to_mink(const Mat<S>& m) {
  const int n = static_cast<int>(m.rows()) - 1;
  Mat<S> a = m.topLeftCorner(n, n);
  S eps = m(n, n);
  Vec<S> u = m.block(n, 0, 1, n).transpose();
  Vec<S> b = a * minkowski_gram<S>(n) * u;
  return {Mat<S>(a * eps), b};
}

/// Isometry y -> L y + b of Minkowski space M^n.
class MinkIsometry {
 public:
  /// Checks L^T J L = J within tol.
  MinkIsometry(Eigen::MatrixXd linear, Eigen::VectorXd translation, double tol = 1e-9);
  static MinkIsometry identity(int n);
  static MinkIsometry translation_by(const Eigen::VectorXd& b);
  static MinkIsometry linear_map(const Eigen::MatrixXd& l);

  const Eigen::MatrixXd& linear() const { return linear_; }
  const Eigen::VectorXd& translation() const { return translation_; }
  int dim() const { return static_cast<int>(translation_.size()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& y) const { return linear_ * y + translation_; }
  MinkIsometry inverse() const;
  /// Composition: (this * other)(y) = this(other(y)).
  MinkIsometry operator*(const MinkIsometry& other) const;

 private:
  Eigen::MatrixXd linear_;
  Eigen::VectorXd translation_;
};

/// Half-pipe matrix [[A, 0], [v, eps]] with A in O_+(1, n-1).
class HpIsometry {
 public:
  HpIsometry(Eigen::MatrixXd a, int eps, Eigen::VectorXd v, double tol = 1e-9);
  /// Accepts any positive multiple of a block matrix; rescales to |det| = 1.
  static HpIsometry from_matrix(const Eigen::MatrixXd& m, double tol = 1e-9);

  const Eigen::MatrixXd& a() const { return a_; }
  int eps() const { return eps_; }
  const Eigen::VectorXd& v() const { return v_; }
  /// Minkowski dimension n; the matrix is (n+1) x (n+1).
  int dim() const { return static_cast<int>(v_.size()); }
  Eigen::MatrixXd matrix() const;
  HpIsometry operator*(const HpIsometry& other) const;

 private:
  Eigen::MatrixXd a_;
  int eps_;
  Eigen::VectorXd v_;
};

HpIsometry mink_to_hp(const MinkIsometry& m);
MinkIsometry hp_to_mink(const HpIsometry& h);

/// A point of half-pipe space: future unit timelike normal and height.
struct HpPoint {
  Eigen::VectorXd xbar;
  double height = 0.0;
  /// Homogeneous coordinates (xbar, height).
  ProjectivePoint projective() const;
};
HpPoint hp_point_from_projective(const ProjectivePoint& x, double tol = default_tol());

/// Spacelike hyperplane {y : <normal, y> = offset} of M^n, normal future unit timelike.
struct MinkPlane {
  Eigen::VectorXd normal;
  double offset = 0.0;
};

MinkPlane hp_point_to_plane(const HpPoint& p, double tol = default_tol());
MinkPlane apply(const MinkIsometry& m, const MinkPlane& plane);
HpPoint apply(const HpIsometry& h, const HpPoint& p);

/// The wall alpha(x) = <w, xbar> - x_n, coefficients (-w0, w1, ..., w_{n-1}, -1).
DualHalfSpace mink_point_to_hp_wall(const Eigen::VectorXd& w);
ExactVec mink_point_to_hp_wall_exact(const ExactVec& w);

/// Whether the walls of w and w' meet inside half-pipe space, decided from
/// the signature of the induced form on their common kernel. Nullopt when
/// w - w' is (numerically) lightlike.
std::optional<bool> hp_walls_meet(const Eigen::VectorXd& w, const Eigen::VectorXd& w2, double tol = 1e-9);

struct HpClassification {
  enum class Kind { identity, nondegenerate_reflection, hp_rotation, degenerate_reflection, other };
  Kind kind = Kind::other;
  /// Fixed wall (reflections) or setwise-fixed degenerate wall.
  std::optional<DualHalfSpace> wall;
  /// Minkowski length sqrt(q(b)) of the translation part for hp_rotation.
  /// This magnitude is a convention of this library.
  double magnitude = 0.0;
  /// Translation along the unit normal for degenerate reflections.
  double parameter = 0.0;
  Eigen::MatrixXd linear;
  Eigen::VectorXd translation;
  std::string descriptor;
};
std::string to_string(HpClassification::Kind k);

/// Classification through the Minkowski dictionary. A quantity falling
/// between tol and 100 * tol makes the answer ambiguous and throws.
HpClassification classify_hp(const HpIsometry& h, double tol = default_tol());

/// Reflection in the timelike hyperplane with spacelike normal N, followed
/// by the translation s * N / sqrt(q(N)).
HpIsometry degenerate_reflection_family(const Eigen::VectorXd& normal, double s);

/// Translation length of the boost part of hp_to_mink(h) on H^1 (log of the
/// largest eigenvalue). Throws for non-boosts.
double hp_translation_length_on_H1(const HpIsometry& h);

/// True when m has the block shape [[A, 0], [v, +-1]] (after rescaling to
/// |det| = 1) with A in O_+(1, n-1), within tol.
bool is_hp_block_matrix(const Eigen::MatrixXd& m, double tol);

}  // namespace transition
