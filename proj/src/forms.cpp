#include "transition/forms.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace transition {

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::hyperbolic: return "hyperbolic";
    case Geometry::spherical: return "spherical";
    case Geometry::anti_de_sitter: return "anti_de_sitter";
    case Geometry::euclidean: return "euclidean";
    case Geometry::half_pipe: return "half_pipe";
  }
  return "unknown";
}

Geometry geometry_from_string(const std::string& name) {
  for (Geometry g : {Geometry::hyperbolic, Geometry::spherical, Geometry::anti_de_sitter,
                     Geometry::euclidean, Geometry::half_pipe}) {
    if (to_string(g) == name) return g;
  }
  throw std::invalid_argument("unknown geometry '" + name + "'");
}

QuadraticForm::QuadraticForm(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.size() < 2) throw std::invalid_argument("a quadratic form needs at least 2 entries");
  for (int s : signs_) {
    if (s != -1 && s != 0 && s != 1) throw std::invalid_argument("form entries must be -1, 0 or 1");
  }
}

QuadraticForm QuadraticForm::hyperbolic(int n) {
  std::vector<int> s(static_cast<std::size_t>(n + 1), 1);
  s[0] = -1;
  return QuadraticForm(std::move(s));
}

QuadraticForm QuadraticForm::spherical(int n) {
  return QuadraticForm(std::vector<int>(static_cast<std::size_t>(n + 1), 1));
}

QuadraticForm QuadraticForm::anti_de_sitter(int n) {
  std::vector<int> s(static_cast<std::size_t>(n + 1), 1);
  s.front() = -1;
  s.back() = -1;
  return QuadraticForm(std::move(s));
}

QuadraticForm QuadraticForm::half_pipe(int n) {
  std::vector<int> s(static_cast<std::size_t>(n + 1), 1);
  s.front() = -1;
  s.back() = 0;
  return QuadraticForm(std::move(s));
}

QuadraticForm QuadraticForm::euclidean(int n) {
  std::vector<int> s(static_cast<std::size_t>(n + 1), 1);
  s.front() = 0;
  return QuadraticForm(std::move(s));
}

QuadraticForm QuadraticForm::for_geometry(Geometry g, int n) {
  switch (g) {
    case Geometry::hyperbolic: return hyperbolic(n);
    case Geometry::spherical: return spherical(n);
    case Geometry::anti_de_sitter: return anti_de_sitter(n);
    case Geometry::euclidean: return euclidean(n);
    case Geometry::half_pipe: return half_pipe(n);
  }
  throw std::invalid_argument("unknown geometry");
}

int QuadraticForm::count(int s) const {
  return static_cast<int>(std::count(signs_.begin(), signs_.end(), s));
}

Geometry QuadraticForm::geometry() const {
  if (signs_.front() == 0 && count(0) == 1 && count(-1) == 0) return Geometry::euclidean;
  if (signs_.back() == 0 && count(0) == 1 && count(-1) == 1 && signs_.front() == -1) {
    return Geometry::half_pipe;
  }
  if (count(0) == 0 && count(-1) == 0) return Geometry::spherical;
  if (count(0) == 0 && count(-1) == 1) return Geometry::hyperbolic;
  if (count(0) == 0 && count(-1) == 2) return Geometry::anti_de_sitter;
  throw std::invalid_argument("form does not match a supported geometry");
}

Eigen::VectorXd QuadraticForm::diagonal() const {
  Eigen::VectorXd d(size());
  for (int i = 0; i < size(); ++i) d[i] = sign(i);
  return d;
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::negative: return "negative";
    case Direction::null: return "null";
    case Direction::positive: return "positive";
  }
  return "unknown";
}

Direction classify_direction(const QuadraticForm& q, const Eigen::VectorXd& x, double tol) {
  if (tol < 0) throw std::invalid_argument("tolerance must be non-negative");
  double norm2 = x.squaredNorm();
  if (norm2 == 0.0) throw std::invalid_argument("cannot classify the zero vector");
  double v = eval_form(q, x);
  if (std::abs(v) <= tol * norm2) return Direction::null;
  return v < 0 ? Direction::negative : Direction::positive;
}

namespace {

void require_nonzero(const Eigen::VectorXd& v, const char* what) {
  if (v.size() == 0 || v.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument(std::string(what) + " must be a nonzero vector");
  }
  if (!v.allFinite()) throw std::invalid_argument(std::string(what) + " has non-finite entries");
}

}  // namespace

ProjectivePoint::ProjectivePoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  require_nonzero(coords_, "projective point");
}

ProjectivePoint ProjectivePoint::canonical() const {
  return ProjectivePoint(scale_to_unit_max<double>(coords_));
}

bool ProjectivePoint::equals(const ProjectivePoint& other, double tol) const {
  return same_ray<double>(coords_, other.coords_, tol);
}

DualHalfSpace::DualHalfSpace(Eigen::VectorXd coeffs) : coeffs_(std::move(coeffs)) {
  require_nonzero(coeffs_, "linear form");
}

DualHalfSpace DualHalfSpace::canonical() const {
  return DualHalfSpace(scale_to_unit_max<double>(coeffs_));
}

bool DualHalfSpace::equals(const DualHalfSpace& other, double tol) const {
  return same_ray<double>(coeffs_, other.coeffs_, tol);
}

bool DualHalfSpace::same_hyperplane(const DualHalfSpace& other, double tol) const {
  return equals(other, tol) || equals(other.opposite(), tol);
}

ProjectiveMap::ProjectiveMap(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw std::invalid_argument("projective map needs a nonempty square matrix");
  }
  if (!matrix_.allFinite()) throw std::invalid_argument("projective map has non-finite entries");
}

ProjectiveMap ProjectiveMap::identity(int size) {
  return ProjectiveMap(Eigen::MatrixXd::Identity(size, size));
}

ProjectivePoint ProjectiveMap::apply(const ProjectivePoint& x) const {
  return ProjectivePoint(matrix_ * x.coords());
}

DualHalfSpace ProjectiveMap::apply(const DualHalfSpace& alpha) const {
  Eigen::RowVectorXd row = alpha.coeffs().transpose() * matrix_.inverse();
  return DualHalfSpace(row.transpose());
}

ProjectiveMap ProjectiveMap::inverse() const { return ProjectiveMap(matrix_.inverse()); }

ProjectiveMap ProjectiveMap::operator*(const ProjectiveMap& other) const {
  return ProjectiveMap(matrix_ * other.matrix_);
}

Eigen::MatrixXd canonical_matrix(const Eigen::MatrixXd& m) {
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  double peak = m.cwiseAbs().maxCoeff(&r, &c);
  if (peak == 0.0) return m;
  Eigen::MatrixXd out = m / peak;
  double ref = out(0, 0);
  if (std::abs(ref) <= 1e-14) {
    for (Eigen::Index j = 0; j < out.cols() && std::abs(ref) <= 1e-14; ++j) {
      for (Eigen::Index i = 0; i < out.rows(); ++i) {
        if (std::abs(out(i, j)) > 1e-14) {
          ref = out(i, j);
          break;
        }
      }
    }
  }
  if (ref < 0) out = -out;
  return out;
}

ProjectiveMap ProjectiveMap::canonical() const { return ProjectiveMap(canonical_matrix(matrix_)); }

ProjectiveMap ProjectiveMap::unimodular() const {
  double det = matrix_.determinant();
  if (det == 0.0) throw std::domain_error("singular projective map");
  double s = std::pow(std::abs(det), 1.0 / static_cast<double>(matrix_.rows()));
  return ProjectiveMap(matrix_ / s);
}

double ProjectiveMap::distance(const ProjectiveMap& other) const {
  return (canonical_matrix(matrix_) - canonical_matrix(other.matrix_)).cwiseAbs().maxCoeff();
}

bool ProjectiveMap::equals(const ProjectiveMap& other, double tol) const {
  if (size() != other.size()) return false;
  // Equality up to a positive scalar: compare after scaling by the norm,
  // which (unlike the canonical sign rule) needs no nonzero reference entry.
  Eigen::MatrixXd a = matrix_ / matrix_.cwiseAbs().maxCoeff();
  Eigen::MatrixXd b = other.matrix_ / other.matrix_.cwiseAbs().maxCoeff();
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

template <class S>
Mat<S> reflection_matrix(const QuadraticForm& q, const Vec<S>& alpha, double tol) {
  const int m = q.size();
  if (alpha.size() != m) throw std::invalid_argument("dimension mismatch in reflection");
  if (q.geometry() == Geometry::half_pipe) {
    const int last = m - 1;
    if (near_zero(alpha[last], tol * magnitude(abs_of(alpha[argmax_magnitude<S>(alpha)])))) {
      throw std::domain_error("lightlike/degenerate hyperplane has no canonical reflection");
    }
    // The wall {x_n = <w, xbar>} with w read off alpha; the reflection is
    // (xbar, x_n) -> (xbar, 2<w, xbar> - x_n).
    Mat<S> r = Mat<S>::Identity(m, m);
    for (int j = 0; j < last; ++j) r(last, j) = S(-2) * alpha[j] / alpha[last];
    r(last, last) = S(-1);
    return r;
  }
  S n = pairing<S>(q, alpha, alpha);
  if (near_zero(n, tol * magnitude(S(alpha.dot(alpha))))) {
    throw std::domain_error("lightlike/degenerate hyperplane has no canonical reflection");
  }
  Mat<S> r = Mat<S>::Identity(m, m);
  for (int i = 0; i < m; ++i) {
    if (q.sign(i) == 0) continue;
    for (int j = 0; j < m; ++j) r(i, j) -= S(2 * q.sign(i)) * alpha[i] * alpha[j] / n;
  }
  return r;
}

template Mat<double> reflection_matrix<double>(const QuadraticForm&, const Vec<double>&, double);
template Mat<QSqrt2> reflection_matrix<QSqrt2>(const QuadraticForm&, const Vec<QSqrt2>&, double);

ProjectiveMap reflection_in_hyperplane(const QuadraticForm& q, const DualHalfSpace& alpha,
                                       double tol) {
  Eigen::VectorXd a = alpha.canonical().coeffs();
  return ProjectiveMap(reflection_matrix<double>(q, a, tol));
}

IsometryCheck is_isometry(const QuadraticForm& q, const Eigen::MatrixXd& m, double tol) {
  IsometryCheck out;
  if (m.rows() != q.size() || m.cols() != q.size()) return out;
  Eigen::MatrixXd j = q.gram();
  Eigen::MatrixXd image = q.geometry() == Geometry::euclidean ? Eigen::MatrixXd(m * j * m.transpose())
                                                                : Eigen::MatrixXd(m.transpose() * j * m);
  double ref = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    if (q.sign(i) != 0) {
      ref = image(i, i) / q.sign(i);
      break;
    }
  }
  double size2 = std::max(m.cwiseAbs().maxCoeff() * m.cwiseAbs().maxCoeff(), 1e-300);
  out.scale = ref;
  out.residual = (image - ref * j).cwiseAbs().maxCoeff() / size2;
  out.isometry = ref > 0 && out.residual <= tol;
  if (q.count(-1) == 1) {
    int time = 0;
    while (q.sign(time) != -1) ++time;
    out.sheet_preserving = m(time, time) > 0;
  }
  return out;
}

Eigen::MatrixXd coordinate_flip(int size, int index) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(size, size);
  f(index, index) = -1.0;
  return f;
}

}  // namespace transition
