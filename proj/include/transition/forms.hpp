#pragma once

// Diagonal quadratic forms on R^{n+1}, points and half-spaces of the
// projective sphere, and projective maps.

#include "transition/linalg.hpp"
#include "transition/tolerance.hpp"

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace transition {

enum class Geometry { hyperbolic, spherical, anti_de_sitter, euclidean, half_pipe };

std::string to_string(Geometry g);
Geometry geometry_from_string(const std::string& name);

/// Diagonal form sum_i signs[i] * x_i^2. Entries are -1, 0 or +1; zeros are
/// only used by the two degenerate limit geometries.
class QuadraticForm {
 public:
  explicit QuadraticForm(std::vector<int> signs);

  /// q_{1,n}: (-,+,...,+) on R^{n+1}.
  static QuadraticForm hyperbolic(int n);
  /// q_{0,n+1}: all +.
  static QuadraticForm spherical(int n);
  /// (-,+,...,+,-): the last coordinate is the second timelike direction.
  static QuadraticForm anti_de_sitter(int n);
  /// (-,+,...,+,0): degenerate along the last coordinate.
  static QuadraticForm half_pipe(int n);
  /// (0,+,...,+): the dual form of Euclidean space in the chart x0 = 1.
  static QuadraticForm euclidean(int n);
  static QuadraticForm for_geometry(Geometry g, int n);

  const std::vector<int>& signs() const { return signs_; }
  int sign(int i) const { return signs_[static_cast<std::size_t>(i)]; }
  /// Ambient dimension n + 1.
  int size() const { return static_cast<int>(signs_.size()); }
  /// Dimension n of the projective sphere.
  int dim() const { return size() - 1; }
  int count(int s) const;
  bool is_degenerate() const { return count(0) > 0; }
  Geometry geometry() const;
  Eigen::VectorXd diagonal() const;
  Eigen::MatrixXd gram() const { return diagonal().asDiagonal(); }

  template <class S>
  Mat<S> gram_as() const {
    Mat<S> g = Mat<S>::Zero(size(), size());
    for (int i = 0; i < size(); ++i) g(i, i) = S(sign(i));
    return g;
  }

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    return a.signs_ == b.signs_;
  }

 private:
  std::vector<int> signs_;
};

/// Bilinear pairing sum_i signs[i] x_i y_i. The dual pairing q* on linear
/// forms uses the same sign vector.
template <class S>
S pairing(const QuadraticForm& q, const Vec<S>& x, const Vec<S>& y) {
  if (x.size() != q.size() || y.size() != q.size()) {
    throw std::invalid_argument("dimension mismatch: form has size " + std::to_string(q.size()) +
                                ", vectors have sizes " + std::to_string(x.size()) + " and " +
                                std::to_string(y.size()));
  }
  S acc(0);
  for (int i = 0; i < q.size(); ++i) {
    if (q.sign(i) == 0) continue;
    S term = x[i] * y[i];
    if (q.sign(i) > 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

template <class S>
S eval_form(const QuadraticForm& q, const Vec<S>& x) {
  return pairing<S>(q, x, x);
}

inline double pairing(const QuadraticForm& q, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return pairing<double>(q, x, y);
}
inline double eval_form(const QuadraticForm& q, const Eigen::VectorXd& x) {
  return eval_form<double>(q, x);
}

enum class Direction { negative, null, positive };
std::string to_string(Direction d);

/// Sign of q(x), reported as null when |q(x)| <= tol * |x|^2.
Direction classify_direction(const QuadraticForm& q, const Eigen::VectorXd& x,
                             double tol = default_tol());

/// A ray of R^{n+1}: a point of the projective sphere.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(Eigen::VectorXd coords);
  const Eigen::VectorXd& coords() const { return coords_; }
  int size() const { return static_cast<int>(coords_.size()); }
  /// Max-magnitude coordinate scaled to +-1 by a positive factor.
  ProjectivePoint canonical() const;
  bool equals(const ProjectivePoint& other, double tol = default_tol()) const;

 private:
  Eigen::VectorXd coords_;
};

/// The half-space {x : alpha(x) <= 0}, with alpha up to a positive scalar.
class DualHalfSpace {
 public:
  explicit DualHalfSpace(Eigen::VectorXd coeffs);
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  double operator()(const Eigen::VectorXd& x) const { return coeffs_.dot(x); }
  DualHalfSpace canonical() const;
  DualHalfSpace opposite() const { return DualHalfSpace(-coeffs_); }
  bool equals(const DualHalfSpace& other, double tol = default_tol()) const;
  /// Same hyperplane, either orientation.
  bool same_hyperplane(const DualHalfSpace& other, double tol = default_tol()) const;

 private:
  Eigen::VectorXd coeffs_;
};

/// Invertible matrix up to a positive scalar.
class ProjectiveMap {
 public:
  explicit ProjectiveMap(Eigen::MatrixXd matrix);
  static ProjectiveMap identity(int size);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  int size() const { return static_cast<int>(matrix_.rows()); }

  ProjectivePoint apply(const ProjectivePoint& x) const;
  /// Image of a half-space: alpha o M^{-1}.
  DualHalfSpace apply(const DualHalfSpace& alpha) const;
  ProjectiveMap inverse() const;
  ProjectiveMap operator*(const ProjectiveMap& other) const;

  /// Divided by the max-magnitude entry; the sign makes the (0,0) entry
  /// positive, or the first nonzero entry in column-major order when (0,0)
  /// vanishes.
  ProjectiveMap canonical() const;
  /// Positive rescaling to |det| = 1.
  ProjectiveMap unimodular() const;
  bool equals(const ProjectiveMap& other, double tol = default_tol()) const;
  double distance(const ProjectiveMap& other) const;

 private:
  Eigen::MatrixXd matrix_;
};

Eigen::MatrixXd canonical_matrix(const Eigen::MatrixXd& m);

/// id - 2 J alpha alpha^T / q*(alpha, alpha) for non-degenerate forms. For
/// the half-pipe form, a wall transverse to the degenerate direction gets its
/// unique half-pipe reflection; degenerate walls are refused.
template <class S>
Mat<S> reflection_matrix(const QuadraticForm& q, const Vec<S>& alpha, double tol);

ProjectiveMap reflection_in_hyperplane(const QuadraticForm& q, const DualHalfSpace& alpha,
                                       double tol = default_tol());

struct IsometryCheck {
  bool isometry = false;
  double scale = 0.0;
  /// Set only for forms with exactly one negative sign: whether x0 > 0 is kept.
  std::optional<bool> sheet_preserving;
  double residual = 0.0;
};

/// M^T J M = lambda J with lambda > 0. For the Euclidean form the dual
/// criterion M J M^T = lambda J is used, since translations only preserve the
/// pairing of linear forms.
IsometryCheck is_isometry(const QuadraticForm& q, const Eigen::MatrixXd& m,
                          double tol = default_tol());
inline IsometryCheck is_isometry(const QuadraticForm& q, const ProjectiveMap& m,
                                 double tol = default_tol()) {
  return is_isometry(q, m.matrix(), tol);
}

/// Diagonal matrix flipping the sign of one coordinate.
Eigen::MatrixXd coordinate_flip(int size, int index);

}  // namespace transition
