#include "transition/holonomy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace transition {

LoopWord LoopWord::parse(std::string_view text) {
  LoopWord w;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    Letter l;
    auto caret = tok.find('^');
    l.label = tok.substr(0, caret);
    if (caret != std::string::npos) {
      std::string e = tok.substr(caret + 1);
      if (e == "-1") {
        l.exponent = -1;
      } else if (e != "1" && e != "+1") {
        throw std::invalid_argument("bad exponent in loop letter '" + tok + "' (expected ^-1 or ^1)");
      }
    }
    if (l.label.empty()) throw std::invalid_argument("empty label in loop word");
    w.letters.push_back(l);
  }
  return w;
}

std::string LoopWord::str() const {
  std::string s;
  for (const auto& l : letters) s += (s.empty() ? "" : " ") + l.label + (l.exponent < 0 ? "^-1" : "");
  return s;
}

LoopWord LoopWord::inverse() const {
  LoopWord w;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back({it->label, -it->exponent});
  return w;
}

LoopWord operator*(const LoopWord& a, const LoopWord& b) {
  LoopWord w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

LoopWord commutator(const LoopWord& a, const LoopWord& b) { return a * b * a.inverse() * b.inverse(); }

ProjectiveMap holonomy(const LoopWord& w, const PairingScheme& s, const Polytope& p) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(p.form().size(), p.form().size());
  for (const auto& l : w.letters) {
    Eigen::MatrixXd g = s.matrix(s.pairing(l.label), p);
    m = m * (l.exponent < 0 ? Eigen::MatrixXd(g.inverse()) : g);
  }
  return ProjectiveMap(m);
}

ProjectiveMap holonomy(const LoopWord& w, const PairingScheme& s, double t) {
  for (const auto& l : w.letters) s.pairing(l.label);  // resolve labels before evaluating
  return holonomy(w, s, make_family(s.family).at(t));
}

namespace {

// Flips commute with the diagonal rescalings, so a recipe's limit is the
// product of the limits of its steps; reflections in symbolic walls then use
// the closed-form path.
ProjectiveMap limit_of_recipe(const Pairing& p, const FamilyRecord& f, Rescaling r, Side side) {
  const int size = f.dim + 1;
  ProjectiveMap m = ProjectiveMap::identity(size);
  for (const auto& step : p.steps) {
    switch (step.kind) {
      case RecipeStep::Kind::flip: m = m * ProjectiveMap(coordinate_flip(size, step.index)); break;
      case RecipeStep::Kind::reflect: {
        IsometryPath path =
            f.symbolic()
                ? reflection_path(f.wall(step.wall), [&f](int sign) { return f.form_for_side(sign); })
                : sampled_path(
                      [&f, &step](double t) {
                        Polytope poly = f.at(t);
                        return reflection_in_hyperplane(poly.form(), poly.wall(step.wall)).matrix();
                      },
                      "reflection in " + step.wall);
        m = m * limit_conjugated_isometry(path, r, side);
        break;
      }
      case RecipeStep::Kind::matrix: {
        IsometryPath path = sampled_path([&step](double) { return step.fixed; }, "fixed step of " + p.label);
        m = m * limit_conjugated_isometry(path, r, side);
        break;
      }
    }
  }
  return m;
}

}  // namespace

ProjectiveMap limit_holonomy(const LoopWord& w, const PairingScheme& s, Rescaling r, Side side) {
  const FamilyRecord& f = make_family(s.family);
  ProjectiveMap m = ProjectiveMap::identity(f.dim + 1);
  for (const auto& l : w.letters) {
    ProjectiveMap g = limit_of_recipe(s.pairing(l.label), f, r, side);
    m = m * (l.exponent < 0 ? g.inverse() : g);
  }
  return m;
}

bool cycle_is_closed(const EdgeCycle& c, const PairingScheme& s) {
  const auto n = c.entries.size();
  if (n == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = c.entries[i];
    const auto& b = c.entries[(i + 1) % n];
    auto has = [](const EdgeCycle::Entry& e, const std::string& w) { return e.wall_a == w || e.wall_b == w; };
    bool linked = a.copy == b.copy && (has(b, a.wall_a) || has(b, a.wall_b));
    for (const auto& p : s.pairings) {
      bool forward = a.copy == p.source_copy && b.copy == p.target_copy && has(a, p.source) && has(b, p.target);
      bool backward = b.copy == p.source_copy && a.copy == p.target_copy && has(b, p.source) && has(a, p.target);
      linked = linked || forward || backward;
    }
    if (!linked) return false;
  }
  return true;
}

double cone_angle(const EdgeCycle& c, const PairingScheme& s, double t) {
  if (!cycle_is_closed(c, s)) throw std::invalid_argument("edge cycle " + c.label + " does not close up");
  Polytope p = make_family(s.family).at(t);
  double sum = 0.0;
  for (const auto& e : c.entries) {
    DihedralAngle d = dihedral_angle(p.form(), p.wall(e.wall_a), p.wall(e.wall_b));
    if (d.kind == DihedralAngle::Kind::angle) {
      sum += d.value;
    } else if (d.kind != DihedralAngle::Kind::asymptotically_parallel) {
      throw std::domain_error("no dihedral angle between " + e.wall_a + " and " + e.wall_b + " (" +
                              to_string(d.kind) + ")");
    }
  }
  return sum;
}

std::string to_string(Singularity::Kind k) {
  switch (k) {
    case Singularity::Kind::trivial: return "trivial";
    case Singularity::Kind::cone: return "cone";
    case Singularity::Kind::other: return "other";
  }
  return "?";
}

Singularity detect_singularity(const ProjectiveMap& h, Geometry g, double tol) {
  Singularity out;
  const int n = h.size();
  const Eigen::MatrixXd& raw = h.matrix();
  const double det = raw.determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-300) {
    out.descriptor = "singular matrix";
    return out;
  }
  Eigen::MatrixXd m = raw / std::pow(std::abs(det), 1.0 / n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  if ((m - id).cwiseAbs().maxCoeff() <= tol) {
    out.kind = Singularity::Kind::trivial;
    out.descriptor = "identity";
    return out;
  }

  if (g == Geometry::half_pipe) {
    try {
      HpClassification c = classify_hp(HpIsometry::from_matrix(raw), tol);
      out.hp = c;
      if (c.kind == HpClassification::Kind::identity) {
        out.kind = Singularity::Kind::trivial;
      } else if (c.kind == HpClassification::Kind::hp_rotation) {
        out.kind = Singularity::Kind::cone;
      }
      out.descriptor = c.descriptor;
    } catch (const std::exception& e) {
      out.descriptor = std::string("not classified: ") + e.what();
    }
    return out;
  }
  if (g == Geometry::anti_de_sitter) {
    out.descriptor = "nontrivial anti-de Sitter isometry";
    return out;
  }
  if (det < 0) {
    out.descriptor = "orientation reversing";
    return out;
  }

  // A rotation fixes a codimension-2 subspace and turns its complement.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m - id, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cut = std::sqrt(tol) * std::max(1.0, sv[0]);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv[i] > cut ? 1 : 0;
  if (rank != 2) {
    out.descriptor = "fixed set has codimension " + std::to_string(rank);
    return out;
  }
  Eigen::MatrixXd fixed = svd.matrixV().rightCols(n - 2);
  QuadraticForm q = QuadraticForm::for_geometry(g, n - 1);
  if (g == Geometry::hyperbolic) {
    Eigen::MatrixXd gram = fixed.transpose() * q.gram() * fixed;
    if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues().minCoeff() >= -cut) {
      out.descriptor = "fixed set misses hyperbolic space";
      return out;
    }
  } else if (g == Geometry::euclidean && fixed.row(0).cwiseAbs().maxCoeff() <= cut) {
    out.descriptor = "fixed set lies at infinity";
    return out;
  }
  double c = (m.trace() - (n - 2)) / 2.0;
  out.kind = Singularity::Kind::cone;
  out.angle = std::acos(std::clamp(c, -1.0, 1.0));
  std::ostringstream os;
  os << "rotation by " << out.angle;
  out.descriptor = os.str();
  return out;
}

}  // namespace transition
