#include "transition/polytope.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace transition {

namespace {

constexpr double kRankTol = 1e-9;

Eigen::VectorXd e0(int size) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(size);
  v[0] = 1.0;
  return v;
}

template <class S>
double rank_tol() {
  return kRankTol;
}

// Classification of a ray by the geometry of the ambient form.
template <class S>
VertexKind classify(const QuadraticForm& q, const Vec<S>& x, double tol) {
  switch (q.geometry()) {
    case Geometry::spherical: return VertexKind::finite;
    case Geometry::euclidean: return sign_of(x[0], tol) > 0 ? VertexKind::finite : VertexKind::ideal;
    default: {
      S val = eval_form<S>(q, x);
      double scale = magnitude(S(x.dot(x)));
      int s = sign_of(val, tol * scale);
      if (s < 0) return VertexKind::finite;
      if (s == 0) return VertexKind::ideal;
      return VertexKind::exterior;
    }
  }
}

template <class S>
struct RawVertex {
  Vec<S> x;
  std::vector<int> incident;
  double residual = 0.0;
};

template <class S>
std::vector<RawVertex<S>> enumerate_raw(const std::vector<Vec<S>>& walls_in, int size, double tol) {
  const int m = static_cast<int>(walls_in.size());
  const int n = size - 1;
  std::vector<Vec<S>> walls;
  walls.reserve(walls_in.size());
  for (const auto& w : walls_in) walls.push_back(scale_to_unit_max<S>(w));

  Mat<S> all(m, size);
  for (int i = 0; i < m; ++i) all.row(i) = walls[static_cast<std::size_t>(i)].transpose();
  if (m < n || matrix_rank<S>(all, rank_tol<S>()) < size) {
    std::ostringstream os;
    os << "non-simple degenerate configuration: the " << m
       << " walls do not cut a pointed cone, so vertices are not isolated (walls 0.." << m - 1 << ")";
    throw std::domain_error(os.str());
  }

  std::vector<RawVertex<S>> found;
  std::vector<int> subset(static_cast<std::size_t>(n));
  std::iota(subset.begin(), subset.end(), 0);
  Mat<S> a(n, size);
  for (;;) {
    for (int r = 0; r < n; ++r) a.row(r) = all.row(subset[static_cast<std::size_t>(r)]);
    if (auto k = kernel_line<S>(a, rank_tol<S>())) {
      Vec<S> base = scale_to_unit_max<S>(*k);
      for (int sgn : {1, -1}) {
        Vec<S> x = base * S(sgn);
        bool feasible = true;
        for (int i = 0; i < m && feasible; ++i) {
          S v = walls[static_cast<std::size_t>(i)].dot(x);
          if (sign_of(v, tol) > 0) feasible = false;
        }
        if (!feasible) continue;
        bool duplicate = false;
        for (const auto& f : found) {
          if (same_ray<S>(f.x, x, std::max(tol, 1e-12) * 10)) {
            duplicate = true;
            break;
          }
        }
        if (duplicate) continue;
        RawVertex<S> rv;
        rv.x = x;
        for (int i = 0; i < m; ++i) {
          S v = walls[static_cast<std::size_t>(i)].dot(x);
          if (sign_of(v, tol) == 0) {
            rv.incident.push_back(i);
            rv.residual = std::max(rv.residual, magnitude(v));
          }
        }
        found.push_back(std::move(rv));
      }
    }
    // Next n-subset in lexicographic order.
    int i = n - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == m - n + i) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
  return found;
}

template <class S, class VertexT>
std::vector<WallPair> adjacency_generic(const std::vector<VertexT>& vertices, int wall_count, int size,
                                        double tol, const std::vector<Vec<S>>& points) {
  std::vector<WallPair> out;
  const int n = size - 1;
  for (int i = 0; i < wall_count; ++i) {
    for (int j = i + 1; j < wall_count; ++j) {
      std::vector<Vec<S>> common;
      for (std::size_t k = 0; k < vertices.size(); ++k) {
        const auto& inc = vertices[k].incident;
        if (std::binary_search(inc.begin(), inc.end(), i) && std::binary_search(inc.begin(), inc.end(), j)) {
          common.push_back(points[k]);
        }
      }
      if (common.empty()) continue;
      Mat<S> span(static_cast<Eigen::Index>(common.size()), size);
      for (std::size_t k = 0; k < common.size(); ++k) span.row(static_cast<Eigen::Index>(k)) = common[k].transpose();
      if (matrix_rank<S>(span, std::max(tol, kRankTol)) == n - 1) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace

Polytope::Polytope(QuadraticForm form, std::vector<DualHalfSpace> walls, std::vector<std::string> labels,
                   std::optional<ProjectivePoint> interior)
    : form_(std::move(form)),
      walls_(std::move(walls)),
      labels_(std::move(labels)),
      interior_(interior ? *interior : ProjectivePoint(e0(form_.size()))) {
  if (form_.count(1) == 0) throw std::invalid_argument("polytope form must have a positive direction");
  if (labels_.empty()) {
    for (std::size_t i = 0; i < walls_.size(); ++i) labels_.push_back("w" + std::to_string(i));
  }
  if (labels_.size() != walls_.size()) throw std::invalid_argument("one label per wall required");
  if (interior_.size() != form_.size()) throw std::invalid_argument("interior point has wrong dimension");
  Eigen::VectorXd x = interior_.canonical().coords();
  for (std::size_t i = 0; i < walls_.size(); ++i) {
    if (walls_[i].size() != form_.size()) {
      throw std::invalid_argument("wall " + labels_[i] + " has the wrong number of coefficients");
    }
    walls_[i] = walls_[i].canonical();
    if (!(walls_[i](x) < 0.0)) {
      throw std::invalid_argument("interior point is not strictly inside wall " + labels_[i]);
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (walls_[i].equals(walls_[j], 1e-12)) {
        throw std::invalid_argument("walls " + labels_[j] + " and " + labels_[i] + " coincide");
      }
    }
  }
}

int Polytope::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("no wall labelled '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

std::string to_string(VertexKind k) {
  switch (k) {
    case VertexKind::finite: return "finite";
    case VertexKind::ideal: return "ideal";
    case VertexKind::exterior: return "exterior";
  }
  return "unknown";
}

std::vector<Vertex> VertexSet::all() const {
  std::vector<Vertex> out = finite;
  out.insert(out.end(), ideal.begin(), ideal.end());
  out.insert(out.end(), exterior.begin(), exterior.end());
  return out;
}

std::vector<ExactVertex> ExactVertexSet::all() const {
  std::vector<ExactVertex> out = finite;
  out.insert(out.end(), ideal.begin(), ideal.end());
  out.insert(out.end(), exterior.begin(), exterior.end());
  return out;
}

VertexSet enumerate_vertices(const Polytope& p, double tol) {
  if (p.dim() < 2 || p.dim() > 4) throw std::invalid_argument("vertex enumeration supports 2 <= n <= 4");
  if (p.size() > 32) throw std::invalid_argument("vertex enumeration supports at most 32 walls");
  std::vector<Eigen::VectorXd> walls;
  for (const auto& w : p.walls()) walls.push_back(w.coeffs());
  VertexSet out;
  for (auto& rv : enumerate_raw<double>(walls, p.form().size(), tol)) {
    Vertex v{ProjectivePoint(rv.x), classify<double>(p.form(), rv.x, tol), rv.incident, rv.residual};
    switch (v.kind) {
      case VertexKind::finite: out.finite.push_back(std::move(v)); break;
      case VertexKind::ideal: out.ideal.push_back(std::move(v)); break;
      case VertexKind::exterior: out.exterior.push_back(std::move(v)); break;
    }
  }
  return out;
}

ExactVertexSet enumerate_vertices_exact(const ExactPolytope& p) {
  const int size = p.form.size();
  if (size < 3 || size > 5) throw std::invalid_argument("vertex enumeration supports 2 <= n <= 4");
  ExactVertexSet out;
  for (auto& rv : enumerate_raw<QSqrt2>(p.walls, size, 0.0)) {
    ExactVertex v{rv.x, classify<QSqrt2>(p.form, rv.x, 0.0), rv.incident};
    switch (v.kind) {
      case VertexKind::finite: out.finite.push_back(std::move(v)); break;
      case VertexKind::ideal: out.ideal.push_back(std::move(v)); break;
      case VertexKind::exterior: out.exterior.push_back(std::move(v)); break;
    }
  }
  return out;
}

std::vector<WallPair> adjacency(const Polytope& p, const VertexSet& v, double tol) {
  std::vector<Vertex> all = v.all();
  std::vector<Eigen::VectorXd> pts;
  for (const auto& x : all) pts.push_back(scale_to_unit_max<double>(x.point.coords()));
  return adjacency_generic<double>(all, p.size(), p.form().size(), tol, pts);
}

std::vector<WallPair> adjacency_exact(const ExactPolytope& p, const ExactVertexSet& v) {
  std::vector<ExactVertex> all = v.all();
  std::vector<ExactVec> pts;
  for (const auto& x : all) pts.push_back(x.point);
  return adjacency_generic<QSqrt2>(all, static_cast<int>(p.walls.size()), p.form.size(), 0.0, pts);
}

std::string to_string(DihedralAngle::Kind k) {
  switch (k) {
    case DihedralAngle::Kind::angle: return "angle";
    case DihedralAngle::Kind::ultraparallel: return "ultraparallel";
    case DihedralAngle::Kind::asymptotically_parallel: return "asymptotically_parallel";
    case DihedralAngle::Kind::self: return "self";
    case DihedralAngle::Kind::no_riemannian_angle: return "no_riemannian_angle";
  }
  return "unknown";
}

DihedralAngle dihedral_angle(const QuadraticForm& q, const DualHalfSpace& a, const DualHalfSpace& b,
                             double tol) {
  Eigen::VectorXd x = a.canonical().coeffs();
  Eigen::VectorXd y = b.canonical().coeffs();
  double aa = pairing(q, x, x);
  double bb = pairing(q, y, y);
  double ab = pairing(q, x, y);
  DihedralAngle out;
  out.invariant = ab;
  bool ads = !q.is_degenerate() && q.geometry() == Geometry::anti_de_sitter;
  if (ads && (aa < -tol || bb < -tol)) {
    out.kind = DihedralAngle::Kind::no_riemannian_angle;
    out.cosine = ab / std::sqrt(std::abs(aa * bb));
    return out;
  }
  if (aa <= tol || bb <= tol) {
    throw std::domain_error("dihedral angle undefined: degenerate or non-spacelike wall (q* = " +
                            std::to_string(aa <= tol ? aa : bb) + ")");
  }
  double c = ab / std::sqrt(aa * bb);
  out.cosine = c;
  if (a.equals(b, tol)) {
    out.kind = DihedralAngle::Kind::self;
    out.value = 0.0;
    return out;
  }
  if (std::abs(std::abs(c) - 1.0) <= tol) {
    out.kind = DihedralAngle::Kind::asymptotically_parallel;
    out.value = 0.0;
  } else if (std::abs(c) < 1.0) {
    out.kind = DihedralAngle::Kind::angle;
    out.value = std::acos(-c);
  } else {
    out.kind = DihedralAngle::Kind::ultraparallel;
    out.value = std::acosh(std::abs(c));
  }
  return out;
}

double wall_distance(const QuadraticForm& q, const DualHalfSpace& a, const DualHalfSpace& b, double tol) {
  if (q.is_degenerate() || q.geometry() != Geometry::hyperbolic) {
    throw std::domain_error("wall_distance is defined for hyperbolic walls only");
  }
  DihedralAngle d = dihedral_angle(q, a, b, tol);
  if (d.kind != DihedralAngle::Kind::ultraparallel) {
    throw std::domain_error("walls intersect or are tangent (" + to_string(d.kind) + ")");
  }
  return d.value;
}

double timelike_separation(const QuadraticForm& q, const DualHalfSpace& a, const DualHalfSpace& b, double tol) {
  if (q.is_degenerate() || q.geometry() != Geometry::anti_de_sitter) {
    throw std::domain_error("timelike separation is defined in anti-de Sitter space only");
  }
  Eigen::VectorXd x = a.canonical().coeffs();
  Eigen::VectorXd y = b.canonical().coeffs();
  double aa = pairing(q, x, x);
  double bb = pairing(q, y, y);
  if (aa >= -tol || bb >= -tol) throw std::domain_error("both walls must have q* < 0 (spacelike planes)");
  double c = pairing(q, x, y) / std::sqrt(aa * bb);
  if (std::abs(c) > 1.0 + tol) throw std::domain_error("spacelike planes intersect");
  return std::acos(std::clamp(c, -1.0, 1.0));
}

HyperplaneBasis hyperplane_basis(const QuadraticForm& q, const DualHalfSpace& h_in, double tol) {
  if (q.is_degenerate()) throw std::domain_error("sections need a non-degenerate form");
  Eigen::VectorXd h = h_in.canonical().coeffs();
  double hh = pairing(q, h, h);
  if (std::abs(hh) <= tol) throw std::domain_error("degenerate slicing hyperplane (q*(h,h) = 0)");
  const int size = q.size();
  Eigen::VectorXd jh = q.diagonal().cwiseProduct(h);
  HyperplaneBasis out;
  bool fallback = false;
  for (int i = 0; i < size && static_cast<int>(out.basis.size()) < size - 1; ++i) {
    Eigen::VectorXd x = Eigen::VectorXd::Unit(size, i);
    Eigen::VectorXd v = x - (h.dot(x) / hh) * jh;
    for (std::size_t k = 0; k < out.basis.size(); ++k) {
      v -= pairing(q, v, out.basis[k]) * out.signs[k] * out.basis[k];
    }
    if (v.norm() <= 1e-9) continue;
    double vv = pairing(q, v, v);
    if (std::abs(vv) <= 1e-9 * v.squaredNorm()) {
      fallback = true;
      break;
    }
    out.basis.push_back(v / std::sqrt(std::abs(vv)));
    out.signs.push_back(vv > 0 ? 1 : -1);
  }
  if (fallback || static_cast<int>(out.basis.size()) != size - 1) {
    // Diagonalize the induced form on an orthonormal basis of ker h.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h.transpose(), Eigen::ComputeFullV);
    Eigen::MatrixXd k = svd.matrixV().rightCols(size - 1);
    Eigen::MatrixXd g = k.transpose() * q.gram() * k;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    out.basis.clear();
    out.signs.clear();
    std::vector<int> order(static_cast<std::size_t>(size - 1));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return (eig.eigenvalues()[x] < 0) > (eig.eigenvalues()[y] < 0); });
    for (int idx : order) {
      double lambda = eig.eigenvalues()[idx];
      if (std::abs(lambda) <= tol) throw std::domain_error("slicing hyperplane is degenerate");
      out.basis.push_back(k * eig.eigenvectors().col(idx) / std::sqrt(std::abs(lambda)));
      out.signs.push_back(lambda > 0 ? 1 : -1);
    }
  }
  return out;
}

Polytope cross_section(const Polytope& p, const DualHalfSpace& h, double tol) {
  const QuadraticForm& q = p.form();
  HyperplaneBasis hb = hyperplane_basis(q, h, tol);
  const int size = static_cast<int>(hb.basis.size());
  QuadraticForm induced(hb.signs);

  std::vector<Eigen::VectorXd> restricted;
  std::vector<std::string> labels;
  for (int i = 0; i < p.size(); ++i) {
    const Eigen::VectorXd& a = p.walls()[static_cast<std::size_t>(i)].coeffs();
    Eigen::VectorXd r(size);
    for (int k = 0; k < size; ++k) r[k] = a.dot(hb.basis[static_cast<std::size_t>(k)]);
    if (r.cwiseAbs().maxCoeff() <= 1e-9 * a.cwiseAbs().maxCoeff()) continue;
    r = scale_to_unit_max<double>(r);
    bool repeated = std::any_of(restricted.begin(), restricted.end(),
                                [&](const Eigen::VectorXd& s) { return same_ray<double>(s, r, 1e-9); });
    if (repeated) continue;
    restricted.push_back(r);
    labels.push_back(p.labels()[static_cast<std::size_t>(i)]);
  }

  std::vector<RawVertex<double>> verts = enumerate_raw<double>(restricted, size, tol);
  std::vector<Eigen::VectorXd> kept;
  std::vector<std::string> kept_labels;
  for (std::size_t i = 0; i < restricted.size(); ++i) {
    std::vector<Eigen::VectorXd> inc;
    for (const auto& v : verts) {
      if (std::find(v.incident.begin(), v.incident.end(), static_cast<int>(i)) != v.incident.end()) {
        inc.push_back(v.x);
      }
    }
    if (inc.empty()) continue;
    Eigen::MatrixXd span(static_cast<Eigen::Index>(inc.size()), size);
    for (std::size_t k = 0; k < inc.size(); ++k) span.row(static_cast<Eigen::Index>(k)) = inc[k].transpose();
    if (matrix_rank<double>(span, kRankTol) == size - 1) {
      kept.push_back(restricted[i]);
      kept_labels.push_back(labels[i]);
    }
  }
  if (kept.empty()) throw std::domain_error("section has empty interior");

  auto strictly_inside = [&](const Eigen::VectorXd& y) {
    return std::all_of(kept.begin(), kept.end(), [&](const Eigen::VectorXd& w) {
      return w.dot(y) < -1e-12 * y.cwiseAbs().maxCoeff();
    });
  };
  // Coordinates of the projected interior point, then the vertex barycentre.
  Eigen::VectorXd x = p.interior().coords();
  Eigen::VectorXd hv = h.coeffs();
  Eigen::VectorXd jh = q.diagonal().cwiseProduct(hv);
  Eigen::VectorXd proj = x - (hv.dot(x) / pairing(q, hv, hv)) * jh;
  Eigen::VectorXd y(size);
  for (int k = 0; k < size; ++k) y[k] = pairing(q, proj, hb.basis[static_cast<std::size_t>(k)]) * hb.signs[static_cast<std::size_t>(k)];
  if (!strictly_inside(y)) {
    y = Eigen::VectorXd::Zero(size);
    for (const auto& v : verts) y += v.x / v.x.norm();
    if (!strictly_inside(y)) throw std::domain_error("section has empty interior");
  }
  std::vector<DualHalfSpace> walls;
  for (const auto& w : kept) walls.emplace_back(w);
  return Polytope(induced, std::move(walls), std::move(kept_labels), ProjectivePoint(y));
}

Eigen::MatrixXd normalized_gram(const Polytope& p) {
  const int m = p.size();
  Eigen::MatrixXd g(m, m);
  std::vector<double> norms(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto& a = p.walls()[static_cast<std::size_t>(i)].coeffs();
    double n = std::sqrt(std::abs(pairing(p.form(), a, a)));
    norms[static_cast<std::size_t>(i)] = n > 1e-12 ? n : 1.0;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      g(i, j) = pairing(p.form(), p.walls()[static_cast<std::size_t>(i)].coeffs(),
                        p.walls()[static_cast<std::size_t>(j)].coeffs()) /
                (norms[static_cast<std::size_t>(i)] * norms[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

namespace {

bool rows_match(std::vector<double> a, std::vector<double> b, double tol) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

bool extend(const Eigen::MatrixXd& gp, const Eigen::MatrixXd& gq, const std::vector<std::vector<int>>& candidates,
            std::vector<int>& perm, std::vector<bool>& used, int i, double tol) {
  const int m = static_cast<int>(gp.rows());
  if (i == m) return true;
  for (int j : candidates[static_cast<std::size_t>(i)]) {
    if (used[static_cast<std::size_t>(j)]) continue;
    bool ok = true;
    for (int k = 0; k < i && ok; ++k) {
      ok = std::abs(gp(i, k) - gq(j, perm[static_cast<std::size_t>(k)])) <= tol;
    }
    if (!ok) continue;
    perm[static_cast<std::size_t>(i)] = j;
    used[static_cast<std::size_t>(j)] = true;
    if (extend(gp, gq, candidates, perm, used, i + 1, tol)) return true;
    used[static_cast<std::size_t>(j)] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> gram_compare(const Polytope& p, const Polytope& q, double tol) {
  if (p.size() != q.size()) return std::nullopt;
  std::vector<int> sp = p.form().signs();
  std::vector<int> sq = q.form().signs();
  std::sort(sp.begin(), sp.end());
  std::sort(sq.begin(), sq.end());
  if (sp != sq) return std::nullopt;
  Eigen::MatrixXd gp = normalized_gram(p);
  Eigen::MatrixXd gq = normalized_gram(q);
  const int m = p.size();
  std::vector<std::vector<int>> candidates(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    std::vector<double> ri(gp.row(i).data(), gp.row(i).data() + 0);
    ri.assign(m, 0.0);
    for (int k = 0; k < m; ++k) ri[static_cast<std::size_t>(k)] = gp(i, k);
    for (int j = 0; j < m; ++j) {
      if (std::abs(gp(i, i) - gq(j, j)) > tol) continue;
      std::vector<double> rj(static_cast<std::size_t>(m));
      for (int k = 0; k < m; ++k) rj[static_cast<std::size_t>(k)] = gq(j, k);
      if (rows_match(ri, rj, tol)) candidates[static_cast<std::size_t>(i)].push_back(j);
    }
    if (candidates[static_cast<std::size_t>(i)].empty()) return std::nullopt;
  }
  std::vector<int> perm(static_cast<std::size_t>(m), -1);
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  if (!extend(gp, gq, candidates, perm, used, 0, tol)) return std::nullopt;
  return perm;
}

}  // namespace transition
