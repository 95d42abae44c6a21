#include "transition/transition.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace transition {

RescalingMap::RescalingMap(Rescaling k, double t_value, int size_value) : kind(k), t(t_value), size(size_value) {
  if (t == 0.0) throw std::domain_error("rescaling needs t != 0");
  if (size < 2) throw std::invalid_argument("rescaling needs at least two coordinates");
}

int RescalingMap::weight(int i) const {
  if (kind == Rescaling::gamma) return i == 0 ? 0 : 1;
  return i == size - 1 ? 1 : 0;
}

Eigen::MatrixXd RescalingMap::matrix() const {
  Eigen::VectorXd d(size);
  for (int i = 0; i < size; ++i) d[i] = std::pow(std::abs(t), -weight(i));
  return d.asDiagonal();
}

Eigen::MatrixXd RescalingMap::inverse_matrix() const {
  Eigen::VectorXd d(size);
  for (int i = 0; i < size; ++i) d[i] = std::pow(std::abs(t), weight(i));
  return d.asDiagonal();
}

ProjectivePoint rescale_point(const RescalingMap& r, const ProjectivePoint& x) {
  return ProjectivePoint(r.matrix() * x.coords()).canonical();
}

IsometryPath reflection_path(const HalfSpaceFamily& wall, std::function<QuadraticForm(int)> form_for_side) {
  IsometryPath p;
  p.wall = wall;
  p.form_for_side = form_for_side;
  p.description = "reflection in " + wall.label;
  p.sample = [wall, form_for_side](double t) {
    QuadraticForm q = form_for_side(t < 0 ? -1 : 1);
    return reflection_in_hyperplane(q, DualHalfSpace(family_coefficients(wall, t))).matrix();
  };
  return p;
}

IsometryPath sampled_path(std::function<Eigen::MatrixXd(double)> sample, std::string description) {
  IsometryPath p;
  p.sample = std::move(sample);
  p.description = std::move(description);
  return p;
}

Eigen::MatrixXd normalize_unimodular(const Eigen::MatrixXd& m) {
  double det = m.determinant();
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) throw std::domain_error("singular matrix");
  Eigen::MatrixXd out = m / std::pow(std::abs(det), 1.0 / static_cast<double>(m.rows()));
  // Same sign convention as canonical_matrix.
  return canonical_matrix(out).cwiseProduct(out).sum() < 0 ? Eigen::MatrixXd(-out) : out;
}

namespace {

[[noreturn]] void no_limit(const IsometryPath& p, const std::string& why) {
  throw std::runtime_error("no transitional limit for " + p.description + ": " + why);
}

std::optional<ExactMat> symbolic_limit(const IsometryPath& p, Rescaling r, Side side) {
  if (!p.wall || !p.form_for_side) return std::nullopt;
  const int sigma = sign_of(side);
  const QuadraticForm q = p.form_for_side(sigma);
  if (q.is_degenerate()) return std::nullopt;
  const auto& coeffs = p.wall->branch_for_side(sigma);
  const int n = static_cast<int>(coeffs.size());
  std::vector<Series> a;
  for (const auto& c : coeffs) a.push_back(c.series(sigma));
  Series norm;
  for (int i = 0; i < n; ++i) norm = norm + Series::constant(q.sign(i)) * a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
  if (norm.is_zero()) return std::nullopt;
  Series inv = norm.inverse();
  RescalingMap rm(r, 1.0, n);

  std::vector<Series> entries(static_cast<std::size_t>(n * n));
  int lowest = std::numeric_limits<int>::max();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Series e = Series::constant(QSqrt2(-2 * q.sign(i))) * a[static_cast<std::size_t>(i)] *
                 a[static_cast<std::size_t>(j)] * inv;
      if (i == j) e = e + Series::constant(1);
      e = e.shifted(rm.weight(j) - rm.weight(i));
      if (!e.is_zero()) lowest = std::min(lowest, e.valuation());
      entries[static_cast<std::size_t>(i * n + j)] = e;
    }
  }
  if (lowest == std::numeric_limits<int>::max()) return std::nullopt;
  ExactMat lead(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Series& e = entries[static_cast<std::size_t>(i * n + j)];
      if (e.precision() <= lowest) return std::nullopt;  // not enough terms known
      lead(i, j) = e.coeff(lowest);
    }
  }
  QSqrt2 ref = lead(0, 0);
  for (Eigen::Index i = 0; i < lead.rows() && ref.is_zero(); ++i) {
    for (Eigen::Index j = 0; j < lead.cols() && ref.is_zero(); ++j) ref = lead(i, j);
  }
  return ExactMat(lead / abs(ref));
}

struct NumericLimit {
  Eigen::MatrixXd value;
  double d1 = 0.0;
  double d2 = 0.0;
};

NumericLimit numeric_limit(const IsometryPath& p, Rescaling r, Side side) {
  const int sigma = sign_of(side);
  std::vector<Eigen::MatrixXd> c;
  for (double u : {1e-3, 1e-4, 1e-5}) {
    Eigen::MatrixXd m = p.sample(sigma * u);
    RescalingMap rm(r, u, static_cast<int>(m.rows()));
    Eigen::MatrixXd conj = rm.matrix() * m * rm.inverse_matrix();
    if (!conj.allFinite()) no_limit(p, "non-finite sample");
    c.push_back(canonical_matrix(conj));
  }
  NumericLimit out;
  out.d1 = (c[0] - c[1]).cwiseAbs().maxCoeff();
  out.d2 = (c[1] - c[2]).cwiseAbs().maxCoeff();
  if (out.d2 <= 1e-12) {
    out.value = c[2];
  } else if (out.d2 * 5.0 <= out.d1) {
    double rho = out.d2 / out.d1;
    out.value = c[2] + (c[2] - c[1]) * (rho / (1.0 - rho));
  } else {
    std::ostringstream os;
    os << "samples do not settle (successive differences " << out.d1 << ", " << out.d2 << ")";
    no_limit(p, os.str());
  }
  return out;
}

}  // namespace

IsometryLimit limit_conjugated_isometry_detailed(const IsometryPath& p, Rescaling r, Side side) {
  std::optional<ExactMat> exact = symbolic_limit(p, r, side);
  std::optional<NumericLimit> numeric;
  try {
    numeric = numeric_limit(p, r, side);
  } catch (const std::runtime_error&) {
    if (!exact) throw;
  }
  IsometryLimit out{ProjectiveMap::identity(1), exact, exact.has_value()};
  Eigen::MatrixXd value = exact ? to_double(*exact) : numeric->value;
  if (std::abs(canonical_matrix(value).determinant()) < 1e-9) no_limit(p, "the limit matrix is singular");
  out.map = ProjectiveMap(normalize_unimodular(value));
  if (numeric) {
    out.diff_coarse = numeric->d1;
    out.diff_fine = numeric->d2;
    out.numeric_gap = (canonical_matrix(numeric->value) - canonical_matrix(value)).cwiseAbs().maxCoeff();
    if (exact && out.numeric_gap > 1e-6) {
      std::ostringstream os;
      os << "closed form and samples disagree by " << out.numeric_gap;
      no_limit(p, os.str());
    }
  }
  return out;
}

std::string to_string(SurfaceModel m) {
  switch (m) {
    case SurfaceModel::hyperbolic: return "H";
    case SurfaceModel::spherical: return "S";
    case SurfaceModel::anti_de_sitter: return "AdS";
  }
  return "?";
}

SurfaceModel surface_model_from_string(const std::string& s) {
  if (s == "H" || s == "hyperbolic") return SurfaceModel::hyperbolic;
  if (s == "S" || s == "spherical") return SurfaceModel::spherical;
  if (s == "AdS" || s == "anti_de_sitter") return SurfaceModel::anti_de_sitter;
  throw std::invalid_argument("unknown model '" + s + "' (expected H, S or AdS)");
}

namespace {

// Distance in the (x0, rho) half-plane from (a, rho) to the branch a = sqrt(1 + s^2).
double distance_to_hyperbola(double a, double rho) {
  auto f = [&](double s) {
    double da = a - std::sqrt(1.0 + s * s);
    double dr = rho - s;
    return da * da + dr * dr;
  };
  auto best = boost::math::tools::brent_find_minima(f, rho - 1.0, rho + 1.0, std::numeric_limits<double>::digits);
  return std::sqrt(best.second);
}

}  // namespace

double surface_limit_check(SurfaceModel model, Rescaling r, double t, int samples, int dim, std::uint64_t seed) {
  if (t == 0.0) throw std::domain_error("surface_limit_check needs t != 0");
  if (samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (dim < 2) throw std::invalid_argument("dim must be at least 2");
  if (r == Rescaling::gamma && model == SurfaceModel::anti_de_sitter) {
    throw std::invalid_argument("gamma rescaling of anti-de Sitter space is not a transition handled here");
  }
  if (r == Rescaling::eta && model == SurfaceModel::spherical) {
    throw std::invalid_argument("eta rescaling of the sphere is not a transition handled here");
  }
  const double u = std::abs(t);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> window(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd y(dim);
    for (int i = 0; i < dim; ++i) y[i] = window(rng);
    double dev = 0.0;
    if (r == Rescaling::gamma) {
      // Stretched coordinates y; the surface point is (x0, y).
      double s = u * u * y.squaredNorm();
      double x0 = model == SurfaceModel::hyperbolic ? std::sqrt(1.0 + s) : std::sqrt(std::max(0.0, 1.0 - s));
      dev = std::abs(x0 - 1.0);
    } else {
      // y = (xbar, z) with z the stretched last coordinate.
      double z = y[dim - 1];
      double rho = y.head(dim - 1).norm();
      double sgn = model == SurfaceModel::hyperbolic ? 1.0 : -1.0;
      double x0 = std::sqrt(1.0 + rho * rho + sgn * u * u * z * z);
      dev = distance_to_hyperbola(x0, rho);
    }
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace transition
