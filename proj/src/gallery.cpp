#include "transition/gallery.hpp"

#include "family_data.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace transition {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

// Splits at top-level whitespace, keeping parenthesized groups together.
std::vector<std::string> split_expressions(std::string_view s, int line) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw std::invalid_argument("line " + std::to_string(line) + ": unbalanced ')'");
    if ((c == ' ' || c == '\t') && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw std::invalid_argument("line " + std::to_string(line) + ": unbalanced '('");
  if (!cur.empty()) out.push_back(cur);
  return out;
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw std::invalid_argument("family data, line " + std::to_string(line) + ": " + what);
}

void finish_record(FamilyRecord& r, std::map<std::string, std::pair<bool, bool>>& seen, int line) {
  if (r.walls.empty()) parse_error(line, "family " + r.name + " has no walls");
  for (const auto& w : r.walls) {
    if (!seen[w.label].first) parse_error(line, "wall " + w.label + " has a neg branch but no pos branch");
  }
  for (const auto& [a, b] : r.orthogonal) {
    for (const auto& l : {a, b}) {
      if (std::find(r.labels.begin(), r.labels.end(), l) == r.labels.end()) {
        parse_error(line, "orthogonal pair names unknown wall " + l);
      }
    }
  }
  for (const auto& s : r.symmetries) parse_symmetry(s, r.dim + 1);
}

Domain quadrilateral_domain() {
  Domain d;
  d.lo = -std::numbers::pi / 2;
  d.hi = std::numeric_limits<double>::infinity();
  d.lo_closed = false;
  d.hi_closed = false;
  d.text = "(-pi/2,inf)";
  return d;
}

}  // namespace

Symmetry parse_symmetry(const std::string& word, int size) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(size, size);
  std::size_t start = 0;
  while (start <= word.size()) {
    std::size_t star = word.find('*', start);
    std::string f = word.substr(start, star == std::string::npos ? std::string::npos : star - start);
    auto index = [&](const std::string& digits) {
      int k = 0;
      try {
        k = std::stoi(digits);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad symmetry factor '" + f + "'");
      }
      if (k < 1 || k >= size) throw std::invalid_argument("symmetry coordinate out of range in '" + f + "'");
      return k;
    };
    Eigen::MatrixXd step = Eigen::MatrixXd::Identity(size, size);
    if (f.rfind("flip", 0) == 0) {
      int k = index(f.substr(4));
      step(k, k) = -1;
    } else if (f.rfind("swap", 0) == 0 && f.size() == 6) {
      int i = index(f.substr(4, 1));
      int j = index(f.substr(5, 1));
      step.row(i).swap(step.row(j));
    } else {
      throw std::invalid_argument("bad symmetry factor '" + f + "' (expected flipK or swapIJ)");
    }
    m = m * step;
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return Symmetry{word, m};
}

std::vector<FamilyRecord> parse_family_data(std::string_view text) {
  std::vector<FamilyRecord> out;
  std::optional<FamilyRecord> cur;
  std::map<std::string, std::pair<bool, bool>> seen;
  bool have_format = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::vector<std::string> words = split_words(line);
    const std::string& key = words[0];
    if (key == "format") {
      if (words.size() != 2 || words[1] != "1") parse_error(line_no, "unsupported format (expected 'format 1')");
      have_format = true;
      continue;
    }
    if (!have_format) parse_error(line_no, "missing 'format 1' header");
    if (key == "family") {
      if (cur) parse_error(line_no, "family " + cur->name + " is not closed by 'end'");
      if (words.size() != 2) parse_error(line_no, "expected 'family <name>'");
      for (const auto& r : out) {
        if (r.name == words[1]) parse_error(line_no, "duplicate family " + words[1]);
      }
      cur = FamilyRecord{};
      cur->name = words[1];
      seen.clear();
      continue;
    }
    if (!cur) parse_error(line_no, "'" + key + "' outside a family record");
    if (key == "end") {
      finish_record(*cur, seen, line_no);
      out.push_back(std::move(*cur));
      cur.reset();
    } else if (key == "dim") {
      if (words.size() != 2) parse_error(line_no, "expected 'dim <n>'");
      cur->dim = std::stoi(words[1]);
      if (cur->dim < 2 || cur->dim > 4) parse_error(line_no, "dimension must be 2, 3 or 4");
    } else if (key == "domain") {
      if (words.size() != 2) parse_error(line_no, "expected 'domain <interval>'");
      try {
        cur->domain = Domain::parse(words[1]);
      } catch (const std::exception& e) {
        parse_error(line_no, e.what());
      }
    } else if (key == "geometry") {
      if (words.size() != 4) parse_error(line_no, "expected 'geometry <pos> <zero> <neg>'");
      try {
        cur->geometry_pos = geometry_from_string(words[1]);
        cur->geometry_zero = geometry_from_string(words[2]);
        cur->geometry_neg = geometry_from_string(words[3]);
      } catch (const std::exception& e) {
        parse_error(line_no, e.what());
      }
    } else if (key == "source") {
      cur->source = trim(line.substr(6));
    } else if (key == "wall") {
      std::size_t colon = line.find(':');
      if (colon == std::string::npos) parse_error(line_no, "wall line needs ':' before the coefficients");
      std::vector<std::string> head = split_words(line.substr(4, colon - 4));
      if (head.empty() || head.size() > 2) parse_error(line_no, "expected 'wall <label> [pos|neg] : ...'");
      const std::string& label = head[0];
      bool neg = false;
      if (head.size() == 2) {
        if (head[1] != "pos" && head[1] != "neg") parse_error(line_no, "branch must be pos or neg");
        neg = head[1] == "neg";
      }
      std::vector<ParamScalar> coeffs;
      try {
        for (const auto& e : split_expressions(line.substr(colon + 1), line_no)) coeffs.push_back(ParamScalar::parse(e));
      } catch (const std::exception& e) {
        parse_error(line_no, e.what());
      }
      if (static_cast<int>(coeffs.size()) != cur->dim + 1) {
        parse_error(line_no, "wall " + label + " has " + std::to_string(coeffs.size()) + " coefficients, expected " +
                                 std::to_string(cur->dim + 1));
      }
      auto& flags = seen[label];
      bool& slot = neg ? flags.second : flags.first;
      if (slot) parse_error(line_no, "wall " + label + " given twice");
      slot = true;
      auto it = std::find_if(cur->walls.begin(), cur->walls.end(), [&](const auto& w) { return w.label == label; });
      if (it == cur->walls.end()) {
        HalfSpaceFamily f;
        f.label = label;
        f.domain = cur->domain;
        cur->walls.push_back(std::move(f));
        cur->labels.push_back(label);
        it = cur->walls.end() - 1;
      }
      (neg ? it->neg : it->pos) = std::move(coeffs);
      it->domain = cur->domain;
    } else if (key == "orthogonal") {
      if (words.size() != 3) parse_error(line_no, "expected 'orthogonal <label> <label>'");
      cur->orthogonal.emplace_back(words[1], words[2]);
    } else if (key == "right_angled") {
      cur->right_angled = true;
    } else if (key == "symmetry") {
      cur->symmetries.insert(cur->symmetries.end(), words.begin() + 1, words.end());
    } else {
      parse_error(line_no, "unknown keyword '" + key + "'");
    }
  }
  if (cur) parse_error(line_no, "family " + cur->name + " is not closed by 'end'");
  for (auto& r : out) {
    for (auto& w : r.walls) w.domain = r.domain;
  }
  return out;
}

std::string_view family_data_text() { return generated::kFamilyData; }

Geometry FamilyRecord::geometry_at(double t) const {
  if (t > 0) return geometry_pos;
  if (t < 0) return geometry_neg;
  return geometry_zero;
}

QuadraticForm FamilyRecord::form_at(double t) const { return QuadraticForm::for_geometry(geometry_at(t), dim); }

QuadraticForm FamilyRecord::form_for_side(int side) const {
  return QuadraticForm::for_geometry(side < 0 ? geometry_neg : geometry_pos, dim);
}

const HalfSpaceFamily& FamilyRecord::wall(const std::string& label) const {
  for (const auto& w : walls) {
    if (w.label == label) return w;
  }
  throw UnknownName("family " + name + " has no symbolic wall '" + label + "'");
}

Polytope FamilyRecord::at(double t) const {
  if (!domain.contains(t)) {
    std::ostringstream os;
    os << "t = " << t << " is outside the domain " << domain.text << " of " << name;
    throw std::domain_error(os.str());
  }
  if (transitional() && t == 0.0) {
    throw std::domain_error(name + " collapses at t = 0; use the rescaled limit there");
  }
  std::vector<DualHalfSpace> w;
  if (symbolic()) {
    for (const auto& f : walls) w.push_back(family_eval(f, t));
  } else {
    for (auto& c : evaluator(t)) w.emplace_back(std::move(c));
  }
  return Polytope(form_at(t), std::move(w), labels);
}

ExactPolytope FamilyRecord::exact_at(const Rational& t) const {
  if (!symbolic()) throw std::domain_error(name + " has no exact form (computed family)");
  double td = static_cast<double>(t);
  if (!domain.contains(td)) throw std::domain_error("t is outside the domain " + domain.text + " of " + name);
  if (transitional() && t == 0) throw std::domain_error(name + " collapses at t = 0");
  ExactPolytope p{form_at(td), {}, labels};
  for (const auto& f : walls) p.walls.push_back(family_eval_exact(f, t));
  return p;
}

std::vector<ProjectivePoint> exp_deform_vertices(double t, Curvature c) {
  if (c == Curvature::hyp && !(t > 0)) throw std::domain_error("hyperbolic exp-deformed vertices need t > 0");
  if (c == Curvature::sph && !(t > 0 && t < std::numbers::pi)) {
    throw std::domain_error("spherical exp-deformed vertices need 0 < t < pi");
  }
  const double h = std::numbers::sqrt2 / 2;
  double ch = c == Curvature::hyp ? std::cosh(t) : std::cos(t);
  double sh = c == Curvature::hyp ? std::sinh(t) : std::sin(t);
  std::vector<ProjectivePoint> out;
  for (auto [a, b] : {std::pair{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}) {
    Eigen::Vector3d x(ch, sh * a * h, sh * b * h);
    out.emplace_back(Eigen::VectorXd(x));
  }
  return out;
}

const std::vector<FamilyRecord>& catalog() {
  static const std::vector<FamilyRecord> records = [] {
    std::vector<FamilyRecord> r = parse_family_data(family_data_text());

    // Quadrilaterals with vertices exp_{e0}(t v_i): the side through two
    // adjacent vertices is (-k r2/2 : +-1 : 0) or (-k r2/2 : 0 : +-1) with
    // k = tanh|t| (hyperbolic) or tan|t| (spherical).
    FamilyRecord q;
    q.name = "exp_quadrilateral";
    q.dim = 2;
    q.domain = quadrilateral_domain();
    q.geometry_pos = Geometry::hyperbolic;
    q.geometry_zero = Geometry::euclidean;
    q.geometry_neg = Geometry::spherical;
    q.source = "quadrilaterals with vertices at distance |t| from e0, spherical for t < 0";
    q.labels = {"left", "right", "bottom", "top"};
    q.symmetries = {"flip1", "flip2", "swap12"};
    q.evaluator = [](double t) {
      double u = std::abs(t);
      double k = (t > 0 ? std::tanh(u) : std::tan(u)) * std::numbers::sqrt2 / 2;
      return std::vector<Eigen::VectorXd>{Eigen::Vector3d(-k, -1, 0), Eigen::Vector3d(-k, 1, 0),
                                          Eigen::Vector3d(-k, 0, -1), Eigen::Vector3d(-k, 0, 1)};
    };
    r.push_back(q);

    // The section of the 4-polytopes at x4 = 0, which does not depend on t.
    auto ks = std::find_if(r.begin(), r.end(), [](const FamilyRecord& f) { return f.name == "ks_polytope"; });
    if (ks == r.end()) throw std::logic_error("family data lacks ks_polytope");
    Eigen::VectorXd h = Eigen::VectorXd::Zero(5);
    h[4] = 1;
    Polytope section = cross_section(ks->at(0.3), DualHalfSpace(h));
    std::vector<Eigen::VectorXd> walls;
    for (const auto& w : section.walls()) walls.push_back(w.coeffs());
    FamilyRecord c;
    c.name = "cuboctahedron";
    c.dim = 3;
    c.source = "section x4 = 0 of ks_polytope (any t)";
    c.labels = section.labels();
    c.right_angled = true;
    c.symmetries = {"flip1", "flip2", "flip3", "swap12"};
    c.evaluator = [walls](double) { return walls; };
    r.push_back(c);

    for (const auto& s : scheme_catalog()) {
      for (auto& f : r) {
        if (f.name == s.family) f.pairings.push_back(s.name);
      }
    }
    return r;
  }();
  return records;
}

const FamilyRecord& make_family(const std::string& name) {
  for (const auto& f : catalog()) {
    if (f.name == name) return f;
  }
  std::string names;
  for (const auto& f : catalog()) names += (names.empty() ? "" : ", ") + f.name;
  throw UnknownName("unknown family '" + name + "' (known: " + names + ")");
}

std::string RecipeStep::str() const {
  switch (kind) {
    case Kind::flip: return "F" + std::to_string(index);
    case Kind::reflect: return "rho(" + wall + ")";
    case Kind::matrix: return "M";
  }
  return "?";
}

std::string Pairing::recipe_text() const {
  std::string s;
  for (const auto& step : steps) s += (s.empty() ? "" : " * ") + step.str();
  return s;
}

const Pairing& PairingScheme::pairing(const std::string& label) const {
  for (const auto& p : pairings) {
    if (p.label == label) return p;
  }
  throw UnknownName("scheme " + name + " has no pairing '" + label + "'");
}

const EdgeCycle& PairingScheme::cycle(const std::string& label) const {
  for (const auto& c : cycles) {
    if (c.label == label) return c;
  }
  throw UnknownName("scheme " + name + " has no edge cycle '" + label + "'");
}

Eigen::MatrixXd PairingScheme::matrix(const Pairing& p, const Polytope& poly) const {
  const int size = poly.form().size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(size, size);
  for (const auto& step : p.steps) {
    switch (step.kind) {
      case RecipeStep::Kind::flip: m = m * coordinate_flip(size, step.index); break;
      case RecipeStep::Kind::reflect:
        m = m * reflection_in_hyperplane(poly.form(), poly.wall(step.wall)).matrix();
        break;
      case RecipeStep::Kind::matrix: m = m * step.fixed; break;
    }
  }
  return m;
}

Eigen::MatrixXd PairingScheme::matrix(const std::string& label, double t) const {
  return matrix(pairing(label), make_family(family).at(t));
}

namespace {

RecipeStep flip(int i) { return RecipeStep{RecipeStep::Kind::flip, i, {}, {}}; }
RecipeStep reflect(const std::string& w) { return RecipeStep{RecipeStep::Kind::reflect, 0, w, {}}; }

Pairing glide(const std::string& label, const std::string& src, const std::string& tgt, int axis) {
  return Pairing{label, src, tgt, 0, 0, {reflect(tgt), flip(axis)}};
}

EdgeCycle corner_cycle(const std::string& label, const std::vector<std::array<std::string, 2>>& walls) {
  EdgeCycle c;
  c.label = label;
  for (const auto& w : walls) c.entries.push_back({0, w[0], w[1]});
  return c;
}

}  // namespace

const std::vector<PairingScheme>& scheme_catalog() {
  static const std::vector<PairingScheme> schemes = [] {
    std::vector<PairingScheme> s;
    const auto puncture = corner_cycle("puncture", {{{"right", "top"}}, {{"left", "top"}}, {{"left", "bottom"}}, {{"right", "bottom"}}});

    PairingScheme q;
    q.name = "torus_from_quadrilateral";
    q.family = "exp_quadrilateral";
    q.description = "punctured torus: opposite sides of the quadrilateral glued by an axis flip and a side reflection";
    q.pairings = {glide("LR", "left", "right", 1), glide("TB", "bottom", "top", 2)};
    q.cycles = {puncture};
    q.default_loop = "LR TB LR^-1 TB^-1";
    s.push_back(q);

    PairingScheme qp = q;
    qp.name = "torus_from_quad_prime";
    qp.family = "quad_prime";
    qp.description = "punctured torus from the quadrilaterals collapsing to a half-pipe limit";
    s.push_back(qp);

    PairingScheme b;
    b.name = "borromean_double";
    b.family = "oct_collapse";
    b.description =
        "right-column faces paired (first with third, second with fourth), then the result doubled along the "
        "left-column faces";
    b.pairings = {glide("R1R3", "R1", "R3", 1), glide("R2R4", "R2", "R4", 2)};
    for (const std::string l : {"L1", "L2", "L3", "L4"}) {
      b.pairings.push_back(Pairing{"double_" + l, l, l, 0, 1, {reflect(l)}});
    }
    b.cycles = {EdgeCycle{"lower_edge", {{0, "L1", "L3"}, {1, "L1", "L3"}}},
                EdgeCycle{"upper_edge", {{0, "L2", "L4"}, {1, "L2", "L4"}}}};
    b.default_loop = "R1R3 R2R4 R1R3^-1 R2R4^-1";
    s.push_back(b);

    PairingScheme e;
    e.name = "three_torus_translations";
    e.family = "eucl_parallelepiped";
    e.description = "opposite faces of the parallelepiped glued by translations";
    e.pairings = {glide("X1", "x1-", "x1+", 1), glide("X2", "x2-", "x2+", 2), glide("X3", "x3-", "x3+", 3)};
    e.cycles = {corner_cycle("edge12", {{{"x1+", "x2+"}}, {{"x1-", "x2+"}}, {{"x1-", "x2-"}}, {{"x1+", "x2-"}}}),
                corner_cycle("edge13", {{{"x1+", "x3+"}}, {{"x1-", "x3+"}}, {{"x1-", "x3-"}}, {{"x1+", "x3-"}}}),
                corner_cycle("edge23", {{{"x2+", "x3+"}}, {{"x2-", "x3+"}}, {{"x2-", "x3-"}}, {{"x2+", "x3-"}}})};
    e.default_loop = "X1 X2 X1^-1 X2^-1";
    s.push_back(e);
    return s;
  }();
  return schemes;
}

const PairingScheme& pairing_scheme(const std::string& name) {
  for (const auto& s : scheme_catalog()) {
    if (s.name == name) return s;
  }
  std::string names;
  for (const auto& s : scheme_catalog()) names += (names.empty() ? "" : ", ") + s.name;
  throw UnknownName("unknown pairing scheme '" + name + "' (known: " + names + ")");
}

std::vector<RecipeCheck> validate_scheme(const PairingScheme& s, double t, double tol) {
  Polytope poly = make_family(s.family).at(t);
  std::vector<RecipeCheck> out;
  for (const auto& p : s.pairings) {
    Eigen::MatrixXd m = s.matrix(p, poly);
    RecipeCheck c;
    c.label = p.label;
    c.isometry = is_isometry(poly.form(), m, tol).isometry;
    DualHalfSpace image = ProjectiveMap(m).apply(poly.wall(p.source)).canonical();
    DualHalfSpace want = poly.wall(p.target).opposite().canonical();
    c.residual = (image.coeffs() - want.coeffs()).cwiseAbs().maxCoeff();
    c.maps_source_to_target = c.residual <= tol;
    out.push_back(c);
  }
  return out;
}

}  // namespace transition
