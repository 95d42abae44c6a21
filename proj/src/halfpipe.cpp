#include "transition/halfpipe.hpp"

#include "transition/polytope.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace transition {

namespace {

double mink(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return -x[0] * y[0] + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

double lorentz_residual(const Eigen::MatrixXd& l) {
  Eigen::MatrixXd j = minkowski_gram<double>(static_cast<int>(l.rows()));
  return (l.transpose() * j * l - j).cwiseAbs().maxCoeff();
}

}  // namespace

MinkIsometry::MinkIsometry(Eigen::MatrixXd linear, Eigen::VectorXd translation, double tol)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (linear_.rows() != linear_.cols() || linear_.rows() != translation_.size() || translation_.size() < 2) {
    throw std::invalid_argument("Minkowski isometry needs an n x n linear part and a length-n translation, n >= 2");
  }
  double r = lorentz_residual(linear_);
  if (r > tol) {
    std::ostringstream os;
    os << "linear part does not preserve the Minkowski form (residual " << r << ")";
    throw std::invalid_argument(os.str());
  }
}

MinkIsometry MinkIsometry::identity(int n) {
  return MinkIsometry(Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n));
}

MinkIsometry MinkIsometry::translation_by(const Eigen::VectorXd& b) {
  return MinkIsometry(Eigen::MatrixXd::Identity(b.size(), b.size()), b);
}

MinkIsometry MinkIsometry::linear_map(const Eigen::MatrixXd& l) {
  return MinkIsometry(l, Eigen::VectorXd::Zero(l.rows()));
}

MinkIsometry MinkIsometry::inverse() const {
  Eigen::MatrixXd j = minkowski_gram<double>(dim());
  Eigen::MatrixXd inv = j * linear_.transpose() * j;
  return MinkIsometry(inv, -inv * translation_);
}

MinkIsometry MinkIsometry::operator*(const MinkIsometry& other) const {
  return MinkIsometry(linear_ * other.linear_, linear_ * other.translation_ + translation_);
}

HpIsometry::HpIsometry(Eigen::MatrixXd a, int eps, Eigen::VectorXd v, double tol)
    : a_(std::move(a)), eps_(eps), v_(std::move(v)) {
  if (eps_ != 1 && eps_ != -1) throw std::invalid_argument("eps must be +1 or -1");
  if (a_.rows() != a_.cols() || a_.rows() != v_.size() || v_.size() < 2) {
    throw std::invalid_argument("half-pipe isometry needs an n x n block A and a length-n row v, n >= 2");
  }
  double r = lorentz_residual(a_);
  if (r > tol) {
    std::ostringstream os;
    os << "block A is not in O(1, n-1) (residual " << r << ")";
    throw std::invalid_argument(os.str());
  }
  if (!(a_(0, 0) > 0)) throw std::invalid_argument("block A must preserve the future cone (A00 > 0)");
}

HpIsometry HpIsometry::from_matrix(const Eigen::MatrixXd& m, double tol) {
  const int n = static_cast<int>(m.rows()) - 1;
  if (m.rows() != m.cols() || n < 2) throw std::invalid_argument("half-pipe matrices are square, size >= 3");
  double det = m.determinant();
  if (!(std::abs(det) > 0)) throw std::invalid_argument("singular matrix");
  Eigen::MatrixXd s = m / std::pow(std::abs(det), 1.0 / (n + 1));
  double col = s.topRightCorner(n, 1).cwiseAbs().maxCoeff();
  if (col > tol) {
    std::ostringstream os;
    os << "not a half-pipe matrix: last column has off-diagonal entries up to " << col;
    throw std::invalid_argument(os.str());
  }
  double corner = s(n, n);
  if (std::abs(std::abs(corner) - 1.0) > tol) {
    throw std::invalid_argument("not a half-pipe matrix: corner entry is not +-1 at unit determinant");
  }
  return HpIsometry(s.topLeftCorner(n, n), corner > 0 ? 1 : -1, s.block(n, 0, 1, n).transpose(), tol);
}

Eigen::MatrixXd HpIsometry::matrix() const {
  const int n = dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = a_;
  m.block(n, 0, 1, n) = v_.transpose();
  m(n, n) = eps_;
  return m;
}

HpIsometry HpIsometry::operator*(const HpIsometry& other) const {
  return HpIsometry::from_matrix(matrix() * other.matrix());
}

HpIsometry mink_to_hp(const MinkIsometry& m) {
  return HpIsometry::from_matrix(mink_to_hp_matrix<double>(m.linear(), m.translation()));
}

MinkIsometry hp_to_mink(const HpIsometry& h) {
  auto [l, b] = hp_matrix_to_mink<double>(h.matrix());
  return MinkIsometry(l, b);
}

ProjectivePoint HpPoint::projective() const {
  Eigen::VectorXd x(xbar.size() + 1);
  x.head(xbar.size()) = xbar;
  x[xbar.size()] = height;
  return ProjectivePoint(x);
}

HpPoint hp_point_from_projective(const ProjectivePoint& p, double tol) {
  const Eigen::VectorXd& x = p.coords();
  const Eigen::Index n = x.size() - 1;
  Eigen::VectorXd xbar = x.head(n);
  double qv = mink(xbar, xbar);
  if (qv >= -tol * xbar.squaredNorm() || xbar[0] <= 0) {
    throw std::domain_error("point is not in half-pipe space (xbar must be future timelike)");
  }
  double s = std::sqrt(-qv);
  return HpPoint{xbar / s, x[n] / s};
}

MinkPlane hp_point_to_plane(const HpPoint& p, double tol) {
  double qv = mink(p.xbar, p.xbar);
  if (std::abs(qv + 1.0) > std::sqrt(tol) || p.xbar[0] <= 0) {
    throw std::domain_error("HpPoint needs a future unit timelike xbar");
  }
  return MinkPlane{p.xbar, p.height};
}

MinkPlane apply(const MinkIsometry& m, const MinkPlane& plane) {
  Eigen::VectorXd n = m.linear() * plane.normal;
  double offset = plane.offset + mink(n, m.translation());
  if (n[0] < 0) return MinkPlane{-n, -offset};
  return MinkPlane{n, offset};
}

HpPoint apply(const HpIsometry& h, const HpPoint& p) {
  return hp_point_from_projective(ProjectivePoint(h.matrix() * p.projective().coords()));
}

DualHalfSpace mink_point_to_hp_wall(const Eigen::VectorXd& w) {
  Eigen::VectorXd a(w.size() + 1);
  a.head(w.size()) = w;
  a[0] = -w[0];
  a[w.size()] = -1.0;
  return DualHalfSpace(a);
}

ExactVec mink_point_to_hp_wall_exact(const ExactVec& w) {
  ExactVec a(w.size() + 1);
  a.head(w.size()) = w;
  a[0] = -w[0];
  a[w.size()] = QSqrt2(-1);
  return a;
}

std::optional<bool> hp_walls_meet(const Eigen::VectorXd& w, const Eigen::VectorXd& w2, double tol) {
  // On the common kernel the heights agree, so the walls meet over the
  // normals xbar with <w - w2, xbar> = 0; one of them must be timelike.
  Eigen::VectorXd d = w - w2;
  Eigen::VectorXd form = minkowski_gram<double>(static_cast<int>(d.size())) * d;
  QuadraticForm q = QuadraticForm::hyperbolic(static_cast<int>(d.size()) - 1);
  if (d.norm() <= tol) return std::nullopt;
  try {
    HyperplaneBasis hb = hyperplane_basis(q, DualHalfSpace(form), tol * d.squaredNorm());
    for (int s : hb.signs) {
      if (s < 0) return true;
    }
    return false;
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

std::string to_string(HpClassification::Kind k) {
  switch (k) {
    case HpClassification::Kind::identity: return "identity";
    case HpClassification::Kind::nondegenerate_reflection: return "nondegenerate_reflection";
    case HpClassification::Kind::hp_rotation: return "hp_rotation";
    case HpClassification::Kind::degenerate_reflection: return "degenerate_reflection";
    case HpClassification::Kind::other: return "other";
  }
  return "unknown";
}

namespace {

// Three-way test of "residual is zero": yes below tol, no above 100 * tol.
bool decide(double residual, double tol, const std::string& candidate, const std::string& alternative) {
  if (residual <= tol) return true;
  if (residual > 100.0 * tol) return false;
  std::ostringstream os;
  os << "ambiguous half-pipe classification: " << candidate << " or " << alternative << " (residual " << residual
     << ", tol " << tol << ")";
  throw std::runtime_error(os.str());
}

}  // namespace

HpClassification classify_hp(const HpIsometry& h, double tol) {
  MinkIsometry m = hp_to_mink(h);
  const int n = m.dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd& l = m.linear();
  const Eigen::VectorXd& b = m.translation();
  HpClassification out;
  out.linear = l;
  out.translation = b;

  double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (decide((l - id).cwiseAbs().maxCoeff(), tol, "linear part id", "nontrivial linear part")) {
    if (decide(b.cwiseAbs().maxCoeff(), tol, "identity", "translation")) {
      out.kind = HpClassification::Kind::identity;
      out.descriptor = "identity";
      return out;
    }
    double qb = mink(b, b);
    if (decide(std::abs(qb) / b.squaredNorm(), tol, "lightlike translation", "non-lightlike translation")) {
      out.descriptor = "translation by a lightlike vector";
    } else if (qb > 0) {
      out.kind = HpClassification::Kind::hp_rotation;
      out.magnitude = std::sqrt(qb);
      out.descriptor = "translation by a spacelike vector (magnitude sqrt(q(b)) by convention)";
    } else {
      out.descriptor = "translation by a timelike vector";
    }
    return out;
  }
  if (decide((l + id).cwiseAbs().maxCoeff(), tol, "linear part -id", "other linear part")) {
    out.kind = HpClassification::Kind::nondegenerate_reflection;
    out.wall = mink_point_to_hp_wall(b / 2.0).canonical();
    out.descriptor = "reflection in the wall of b/2";
    return out;
  }
  // Reflection in a timelike hyperplane: id - L = 2 N N^T J / q(N).
  Eigen::MatrixXd diff = id - l;
  Eigen::Index col = 0;
  diff.colwise().norm().maxCoeff(&col);
  Eigen::VectorXd normal = diff.col(col);
  double qn = mink(normal, normal);
  if (qn > tol * normal.squaredNorm()) {
    Eigen::MatrixXd j = minkowski_gram<double>(n);
    Eigen::MatrixXd refl = id - 2.0 * normal * normal.transpose() * j / qn;
    if (decide((l - refl).cwiseAbs().maxCoeff(), tol, "reflection in a timelike hyperplane", "other")) {
      Eigen::VectorXd unit = normal / std::sqrt(qn);
      double s = mink(b, unit);
      Eigen::VectorXd rest = b - s * unit;
      if (decide(rest.cwiseAbs().maxCoeff() / scale, tol, "degenerate reflection", "glide")) {
        out.kind = HpClassification::Kind::degenerate_reflection;
        Eigen::VectorXd a = Eigen::VectorXd::Zero(n + 1);
        a.head(n) = j * unit;
        out.wall = DualHalfSpace(a).canonical();
        out.parameter = s;
        out.descriptor = "reflection in a timelike hyperplane with orthogonal translation";
        return out;
      }
      out.descriptor = "glide: reflection in a timelike hyperplane with a tangential translation";
      return out;
    }
  }
  out.descriptor = "other (see linear part and translation)";
  return out;
}

HpIsometry degenerate_reflection_family(const Eigen::VectorXd& normal, double s) {
  const int n = static_cast<int>(normal.size());
  double qn = mink(normal, normal);
  if (!(qn > 0)) throw std::domain_error("degenerate reflections need a timelike hyperplane (spacelike normal)");
  Eigen::MatrixXd j = minkowski_gram<double>(n);
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n) - 2.0 * normal * normal.transpose() * j / qn;
  return mink_to_hp(MinkIsometry(l, s * normal / std::sqrt(qn)));
}

double hp_translation_length_on_H1(const HpIsometry& h) {
  const Eigen::MatrixXd& a = h.a();
  if (a.rows() == 2) {
    if (a.determinant() < 0) throw std::domain_error("linear part is a reflection, not a boost");
    double half_trace = a.trace() / 2.0;
    if (half_trace <= 1.0 + 1e-12) throw std::domain_error("linear part is not a boost");
    return std::acosh(half_trace);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  double best = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    auto lambda = es.eigenvalues()[i];
    if (std::abs(lambda.imag()) < 1e-9) best = std::max(best, std::abs(lambda.real()));
  }
  if (best <= 1.0 + 1e-9) throw std::domain_error("linear part is not a boost");
  return std::log(best);
}

bool is_hp_block_matrix(const Eigen::MatrixXd& m, double tol) {
  try {
    HpIsometry::from_matrix(m, tol);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

}  // namespace transition
