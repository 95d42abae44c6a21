#include "transition/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace transition {

namespace {

void emit(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(k).dump();
        out += ':';
        emit(v, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        emit(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (v == 0.0) v = 0.0;  // "-0" would read back as the integer 0
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      break;
    }
    default: out += j.dump(); break;
  }
}

Json vec_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json mat_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
  return a;
}

Json exact_json(const ExactVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i].str());
  return a;
}

// Positive rescaling that makes the first nonzero entry +1 or -1, the usual
// way of writing a wall.
ExactVec unit_leading(const ExactVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) {
      QSqrt2 a = v[i].sign() < 0 ? QSqrt2(-v[i]) : v[i];
      return ExactVec(v / a);
    }
  }
  return v;
}

Json labels_json(const std::vector<int>& idx, const std::vector<std::string>& labels) {
  Json a = Json::array();
  for (int i : idx) a.push_back(labels[static_cast<std::size_t>(i)]);
  return a;
}

CheckOutcome outcome(std::string name, double residual, double tol, std::string detail = {}) {
  return CheckOutcome{std::move(name), residual <= tol, residual, tol, std::move(detail)};
}

double symmetry_residual(const Polytope& p, const Eigen::MatrixXd& s) {
  ProjectiveMap m(s);
  double worst = 0.0;
  for (const auto& w : p.walls()) {
    Eigen::VectorXd img = m.apply(w).canonical().coeffs();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : p.walls()) best = std::min(best, (img - v.canonical().coeffs()).cwiseAbs().maxCoeff());
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

std::string canonical_json(const Json& j) {
  std::string out;
  emit(j, out);
  return out;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

Json Report::to_json() const {
  Json j = body;
  j["report"] = kind;
  Json cs = Json::array();
  for (const auto& c : checks) {
    cs.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}, {"tol", c.tol}, {"detail", c.detail}});
  }
  j["checks"] = cs;
  j["passed"] = passed();
  return j;
}

std::string Report::text() const {
  std::ostringstream os;
  os << kind;
  for (const char* key : {"family", "scheme", "t", "geometry", "word"}) {
    if (body.contains(key)) os << "  " << key << "=" << canonical_json(body[key]);
  }
  os << "\n";
  if (body.contains("vertex_counts")) os << "vertices " << canonical_json(body["vertex_counts"]) << "\n";
  if (body.contains("adjacency")) os << "adjacent pairs " << body["adjacency"].size() << "\n";
  if (body.contains("walls") && body["walls"].is_array()) {
    for (const auto& w : body["walls"]) {
      os << "  " << w["label"].get<std::string>() << " -> " << canonical_json(w["exact"]);
      if (w.contains("degenerate")) os << (w["degenerate"].get<bool>() ? "  degenerate" : "  non-degenerate");
      os << "  [" << w["provenance"].get<std::string>() << "]\n";
    }
  }
  if (body.contains("distinct_limit_walls")) {
    for (const auto& w : body["distinct_limit_walls"]) os << "limit wall " << canonical_json(w) << "\n";
  }
  if (body.contains("singularity")) os << "singularity " << canonical_json(body["singularity"]) << "\n";
  for (const auto& c : checks) {
    os << (c.passed ? "ok   " : "FAIL ") << c.name << "  residual " << c.residual << " (tol " << c.tol << ")";
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  return os.str();
}

Report check_report(const FamilyRecord& f, double t, const CheckOptions& opt) {
  const double tol = opt.tol > 0 ? opt.tol : default_tol();
  Report r;
  r.kind = "check";
  Polytope p = f.at(t);
  const auto& labels = p.labels();
  r.body["family"] = f.name;
  r.body["source"] = f.source;
  r.body["t"] = t;
  r.body["geometry"] = to_string(p.form().geometry());
  r.body["exact"] = opt.exact;
  r.body["tol"] = tol;

  VertexSet vs = enumerate_vertices(p, tol);
  Json verts = Json::array();
  double vres = 0.0;
  for (const auto& v : vs.all()) {
    verts.push_back({{"point", vec_json(v.point.coords())}, {"kind", to_string(v.kind)}, {"walls", labels_json(v.incident, labels)}});
    vres = std::max(vres, v.residual);
  }
  r.body["vertices"] = verts;
  r.body["vertex_counts"] = {{"finite", vs.finite.size()}, {"ideal", vs.ideal.size()}, {"exterior", vs.exterior.size()}};
  r.checks.push_back(outcome("vertex_residual", vres, tol));

  std::vector<WallPair> adj = adjacency(p, vs, tol);
  Json adj_json = Json::array();
  Json angles = Json::array();
  for (auto [a, b] : adj) {
    const std::string& la = labels[static_cast<std::size_t>(a)];
    const std::string& lb = labels[static_cast<std::size_t>(b)];
    adj_json.push_back({la, lb});
    Json entry = {{"walls", {la, lb}}};
    try {
      DihedralAngle d = dihedral_angle(p.form(), p.walls()[static_cast<std::size_t>(a)], p.walls()[static_cast<std::size_t>(b)], tol);
      entry["kind"] = to_string(d.kind);
      entry["value"] = d.value;
      entry["cosine"] = d.cosine;
    } catch (const std::exception& e) {
      entry["kind"] = "undefined";
      entry["detail"] = e.what();
    }
    angles.push_back(entry);
  }
  r.body["adjacency"] = adj_json;
  r.body["angles"] = angles;
  r.body["orthogonality"] = mat_json(normalized_gram(p));

  auto pair_cosine = [&](int a, int b) {
    const auto& x = p.walls()[static_cast<std::size_t>(a)].coeffs();
    const auto& y = p.walls()[static_cast<std::size_t>(b)].coeffs();
    return std::abs(pairing(p.form(), x, y)) / (x.norm() * y.norm());
  };
  for (const auto& [a, b] : f.orthogonal) {
    r.checks.push_back(outcome("orthogonal " + a + " " + b, pair_cosine(p.index_of(a), p.index_of(b)), tol));
  }
  if (f.right_angled) {
    double worst = 0.0;
    for (auto [a, b] : adj) worst = std::max(worst, pair_cosine(a, b));
    r.checks.push_back(outcome("right_angled", worst, tol, std::to_string(adj.size()) + " adjacent pairs"));
  }
  for (const auto& word : f.symmetries) {
    Symmetry s = parse_symmetry(word, p.form().size());
    r.checks.push_back(outcome("symmetry " + word, symmetry_residual(p, s.matrix), tol));
  }

  if (opt.exact) {
    Rational te = parse_rational(opt.t_text.empty() ? std::to_string(t) : opt.t_text);
    ExactPolytope ep = f.exact_at(te);
    ExactVertexSet ev = enumerate_vertices_exact(ep);
    Json everts = Json::array();
    for (const auto& v : ev.all()) {
      everts.push_back({{"point", exact_json(v.point)}, {"kind", to_string(v.kind)}, {"walls", labels_json(v.incident, labels)}});
    }
    r.body["exact_vertices"] = everts;
    r.body["exact_vertex_counts"] = {{"finite", ev.finite.size()}, {"ideal", ev.ideal.size()}, {"exterior", ev.exterior.size()}};
    std::vector<WallPair> eadj = adjacency_exact(ep, ev);
    Json pairings = Json::array();
    int nonzero = 0;
    for (auto [a, b] : eadj) {
      QSqrt2 v = pairing(ep.form, ep.walls[static_cast<std::size_t>(a)], ep.walls[static_cast<std::size_t>(b)]);
      pairings.push_back({{"walls", {labels[static_cast<std::size_t>(a)], labels[static_cast<std::size_t>(b)]}}, {"pairing", v.str()}});
      nonzero += v.is_zero() ? 0 : 1;
    }
    r.body["exact_pairings"] = pairings;
    r.checks.push_back(CheckOutcome{"exact_adjacency_matches", eadj == adj, eadj == adj ? 0.0 : 1.0, 0.0,
                                    std::to_string(eadj.size()) + " exact adjacent pairs"});
    r.checks.push_back(CheckOutcome{"exact_vertex_count_matches", ev.count() == vs.count(),
                                    ev.count() == vs.count() ? 0.0 : 1.0, 0.0, {}});
    if (f.right_angled) {
      r.checks.push_back(CheckOutcome{"exact_right_angles", nonzero == 0, static_cast<double>(nonzero), 0.0,
                                      "adjacent pairings equal to 0 in Q(sqrt 2)"});
    }
  }
  return r;
}

Report limit_report(const FamilyRecord& f, Rescaling resc, Side side) {
  if (!f.symbolic()) throw std::invalid_argument(f.name + " has no symbolic walls to take limits of");
  Report r;
  r.kind = "limit";
  r.body["family"] = f.name;
  r.body["source"] = f.source;
  r.body["rescale"] = to_string(resc);
  r.body["side"] = to_string(side);
  const Geometry limit_geometry = resc == Rescaling::gamma ? Geometry::euclidean : Geometry::half_pipe;
  r.body["geometry"] = to_string(limit_geometry);

  Json walls = Json::array();
  std::vector<DualHalfSpace> distinct;
  Json distinct_json = Json::array();
  double worst_gap = 0.0;
  for (const auto& w : f.walls) {
    WallLimit lim = rescaled_limit_detailed(w, resc, side);
    worst_gap = std::max(worst_gap, lim.sample_gap);
    Json entry = {{"label", w.label}, {"wall", vec_json(lim.wall.coeffs())}, {"exact", exact_json(unit_leading(lim.exact))},
                  {"sample_gap", lim.sample_gap}, {"provenance", f.name + ":" + w.label}};
    if (limit_geometry == Geometry::half_pipe) {
      const bool degenerate = std::abs(lim.wall.coeffs()[f.dim]) <= default_tol();
      entry["degenerate"] = degenerate;
      if (!degenerate) {
        try {
          IsometryPath path = reflection_path(w, [&f](int s) { return f.form_for_side(s); });
          ProjectiveMap m = limit_conjugated_isometry(path, resc, side);
          entry["reflection_limit"] = mat_json(m.matrix());
          entry["reflection_is_hp_block"] = is_hp_block_matrix(m.matrix(), 1e-8);
        } catch (const std::exception& e) {
          entry["reflection_limit_error"] = e.what();
        }
      }
    }
    walls.push_back(entry);
    bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const DualHalfSpace& d) { return d.equals(lim.wall, 1e-10); });
    if (!seen) {
      distinct.push_back(lim.wall);
      distinct_json.push_back(exact_json(unit_leading(lim.exact)));
    }
  }
  r.body["walls"] = walls;
  r.body["distinct_limit_walls"] = distinct_json;
  r.checks.push_back(outcome("sample_agreement", worst_gap, 1e-4, "closed-form limits against the sample at |t| = 1e-5"));
  return r;
}

namespace {

Json singularity_json(const Singularity& s) {
  Json j = {{"kind", to_string(s.kind)}, {"descriptor", s.descriptor}};
  if (!s.hp) j["angle"] = s.angle;
  if (s.hp) {
    j["hp_kind"] = to_string(s.hp->kind);
    j["hp_magnitude"] = s.hp->magnitude;
    j["hp_magnitude_convention"] = "Minkowski length sqrt(q(b)) of the translation part";
    j["mink_linear"] = mat_json(s.hp->linear);
    j["mink_translation"] = vec_json(s.hp->translation);
  }
  return j;
}

}  // namespace

Report holonomy_report(const PairingScheme& s, double t, const LoopWord& w) {
  Report r;
  r.kind = "holonomy";
  const FamilyRecord& f = make_family(s.family);
  Polytope p = f.at(t);
  r.body["scheme"] = s.name;
  r.body["family"] = s.family;
  r.body["t"] = t;
  r.body["word"] = w.str();
  r.body["geometry"] = to_string(p.form().geometry());

  for (const auto& c : validate_scheme(s, t)) {
    r.checks.push_back(CheckOutcome{"recipe " + c.label, c.ok(), c.residual, default_tol(),
                                    c.isometry ? "" : "not an isometry"});
  }
  ProjectiveMap h = holonomy(w, s, p);
  r.body["matrix"] = mat_json(h.matrix());
  IsometryCheck iso = is_isometry(p.form(), h);
  r.checks.push_back(CheckOutcome{"holonomy_is_isometry", iso.isometry, iso.isometry ? 0.0 : 1.0, default_tol(), {}});
  r.body["singularity"] = singularity_json(detect_singularity(h, p.form().geometry()));

  Json cones = Json::array();
  for (const auto& c : s.cycles) {
    Json entry = {{"cycle", c.label}};
    try {
      entry["cone_angle"] = cone_angle(c, s, t);
    } catch (const std::exception& e) {
      entry["error"] = e.what();
    }
    cones.push_back(entry);
  }
  r.body["cone_angles"] = cones;
  return r;
}

Report limit_holonomy_report(const PairingScheme& s, const LoopWord& w, Rescaling resc, Side side) {
  Report r;
  r.kind = "holonomy";
  const FamilyRecord& f = make_family(s.family);
  r.body["scheme"] = s.name;
  r.body["family"] = s.family;
  r.body["word"] = w.str();
  r.body["rescale"] = to_string(resc);
  r.body["side"] = to_string(side);
  const Geometry g = resc == Rescaling::gamma ? Geometry::euclidean : Geometry::half_pipe;
  r.body["geometry"] = to_string(g);
  ProjectiveMap h = limit_holonomy(w, s, resc, side);
  r.body["matrix"] = mat_json(h.matrix());
  IsometryCheck iso = is_isometry(QuadraticForm::for_geometry(g, f.dim), h, 1e-8);
  r.checks.push_back(CheckOutcome{"holonomy_is_isometry", iso.isometry, iso.isometry ? 0.0 : 1.0, 1e-8, {}});
  r.body["singularity"] = singularity_json(detect_singularity(h, g, 1e-8));
  return r;
}

std::string plot_csv(const Polytope& p) {
  std::ostringstream os;
  os.precision(17);
  os << "object,kind,x0,x1,x2,x3,x4\n";
  auto row = [&](const std::string& id, const std::string& kind, const Eigen::VectorXd& x) {
    os << id << "," << kind;
    for (int i = 0; i < 5; ++i) {
      os << ",";
      if (i < x.size()) os << x[i];
    }
    os << "\n";
  };
  for (int i = 0; i < p.size(); ++i) {
    row(p.labels()[static_cast<std::size_t>(i)], "wall", p.walls()[static_cast<std::size_t>(i)].coeffs());
  }
  int k = 0;
  for (const auto& v : enumerate_vertices(p).all()) {
    Eigen::VectorXd x = v.point.coords();
    x = std::abs(x[0]) > default_tol() ? Eigen::VectorXd(x / x[0]) : v.point.canonical().coords();
    row("v" + std::to_string(k++), "vertex_" + to_string(v.kind), x);
  }
  return os.str();
}

}  // namespace transition
