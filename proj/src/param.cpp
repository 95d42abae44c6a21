#include "transition/param.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace transition {

struct ParamScalar::Node {
  Kind kind = Kind::constant;
  QSqrt2 value;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const ParamScalar::Node>;

enum class Parity { even, odd, mixed };

Parity combine_sum(Parity a, Parity b) { return a == b ? a : Parity::mixed; }

Parity combine_product(Parity a, Parity b) {
  if (a == Parity::mixed || b == Parity::mixed) return Parity::mixed;
  return a == b ? Parity::even : Parity::odd;
}

const char* atom_name(ParamScalar::Kind k) {
  switch (k) {
    case ParamScalar::Kind::t: return "t";
    case ParamScalar::Kind::abs_t: return "|t|";
    case ParamScalar::Kind::t_squared: return "t^2";
    case ParamScalar::Kind::sqrt_one_plus_t2: return "sqrt(1+t^2)";
    case ParamScalar::Kind::sqrt_one_minus_t2: return "sqrt(1-t^2)";
    default: return nullptr;
  }
}

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string constant_text(const QSqrt2& c) {
  const Rational& a = c.rational_part();
  const Rational& b = c.sqrt2_part();
  std::string root;
  if (b == 1) {
    root = "r2";
  } else if (b == -1) {
    root = "-r2";
  } else if (b != 0) {
    root = "(* " + rational_text(b) + " r2)";
  }
  if (root.empty()) return rational_text(a);
  if (a == 0) return root;
  return "(+ " + rational_text(a) + " " + root + ")";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParamScalar parse_all() {
    ParamScalar out = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse coefficient '" + std::string(text_) + "' at offset " +
                                std::to_string(pos_) + ": " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  ParamScalar parse_expr() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (text_[pos_] == '(') return parse_call();
    return parse_atom();
  }

  ParamScalar parse_call() {
    ++pos_;  // '('
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end after '('");
    char op = text_[pos_++];
    if (op != '+' && op != '-' && op != '*') fail(std::string("unknown operator '") + op + "'");
    std::vector<ParamScalar> args;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      args.push_back(parse_expr());
    }
    if (args.empty()) fail("operator without arguments");
    if (op == '-') {
      if (args.size() == 1) return -args[0];
      if (args.size() != 2) fail("'-' takes one or two arguments");
      return args[0] - args[1];
    }
    ParamScalar acc = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) acc = op == '+' ? acc + args[i] : acc * args[i];
    return acc;
  }

  ParamScalar parse_atom() {
    std::size_t start = pos_;
    // Radical atoms contain parentheses, so they are matched literally.
    for (const char* rad : {"sqrt(1+t^2)", "sqrt(1-t^2)", "-sqrt(1+t^2)", "-sqrt(1-t^2)"}) {
      std::string_view r(rad);
      if (text_.substr(pos_, r.size()) == r) {
        pos_ += r.size();
        bool negated = r[0] == '-';
        auto kind = r.find('+') != std::string_view::npos ? Kind::sqrt_one_plus_t2 : Kind::sqrt_one_minus_t2;
        ParamScalar a = ParamScalar::atom(kind);
        return negated ? -a : a;
      }
    }
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    std::string tok(text_.substr(start, pos_ - start));
    if (tok.empty()) fail("empty atom");
    bool negated = false;
    std::string body = tok;
    if (body.size() > 1 && body[0] == '-' && !std::isdigit(static_cast<unsigned char>(body[1])) &&
        body[1] != '.') {
      negated = true;
      body = body.substr(1);
    }
    ParamScalar a;
    if (body == "t") {
      a = ParamScalar::atom(Kind::t);
    } else if (body == "|t|") {
      a = ParamScalar::atom(Kind::abs_t);
    } else if (body == "t^2") {
      a = ParamScalar::atom(Kind::t_squared);
    } else if (body == "r2") {
      a = ParamScalar::constant(QSqrt2::sqrt2());
    } else {
      try {
        a = ParamScalar::constant(QSqrt2(parse_rational(body)));
      } catch (const std::invalid_argument&) {
        pos_ = start;
        fail("unsupported atom '" + tok + "'");
      }
    }
    return negated ? -a : a;
  }

  using Kind = ParamScalar::Kind;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParamScalar ParamScalar::constant(const QSqrt2& c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = c;
  return ParamScalar(std::move(n));
}

ParamScalar ParamScalar::atom(Kind kind) {
  if (atom_name(kind) == nullptr) throw std::invalid_argument("not an atom kind");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return ParamScalar(std::move(n));
}

ParamScalar ParamScalar::parse(std::string_view text) { return Parser(text).parse_all(); }

ParamScalar::Kind ParamScalar::kind() const { return node_->kind; }

namespace {

ParamScalar::Node make_node(ParamScalar::Kind k, std::vector<NodePtr> args) {
  ParamScalar::Node n;
  n.kind = k;
  n.args = std::move(args);
  return n;
}

std::string node_text(const NodePtr& n) {
  using K = ParamScalar::Kind;
  switch (n->kind) {
    case K::constant: return constant_text(n->value);
    case K::add:
    case K::mul: {
      std::string s = n->kind == K::add ? "(+" : "(*";
      for (const auto& a : n->args) s += " " + node_text(a);
      return s + ")";
    }
    case K::sub: return "(- " + node_text(n->args[0]) + " " + node_text(n->args[1]) + ")";
    case K::neg: {
      const auto& a = n->args[0];
      if (atom_name(a->kind) != nullptr) return std::string("-") + atom_name(a->kind);
      return "(- " + node_text(a) + ")";
    }
    default: return atom_name(n->kind);
  }
}

double node_eval(const NodePtr& n, double t) {
  using K = ParamScalar::Kind;
  switch (n->kind) {
    case K::constant: return n->value.to_double();
    case K::t: return t;
    case K::abs_t: return std::abs(t);
    case K::t_squared: return t * t;
    case K::sqrt_one_plus_t2: return std::sqrt(1.0 + t * t);
    case K::sqrt_one_minus_t2: {
      double r = 1.0 - t * t;
      if (r < 0) throw std::domain_error("sqrt(1-t^2) is undefined for |t| > 1");
      return std::sqrt(r);
    }
    case K::add: {
      double acc = 0.0;
      for (const auto& a : n->args) acc += node_eval(a, t);
      return acc;
    }
    case K::mul: {
      double acc = 1.0;
      for (const auto& a : n->args) acc *= node_eval(a, t);
      return acc;
    }
    case K::sub: return node_eval(n->args[0], t) - node_eval(n->args[1], t);
    case K::neg: return -node_eval(n->args[0], t);
  }
  return 0.0;
}

QSqrt2 node_exact(const NodePtr& n, const Rational& t) {
  using K = ParamScalar::Kind;
  switch (n->kind) {
    case K::constant: return n->value;
    case K::t: return QSqrt2(t);
    case K::abs_t: return QSqrt2(t < 0 ? Rational(-t) : t);
    case K::t_squared: return QSqrt2(t * t);
    case K::sqrt_one_plus_t2:
    case K::sqrt_one_minus_t2: {
      Rational r = n->kind == K::sqrt_one_plus_t2 ? Rational(1 + t * t) : Rational(1 - t * t);
      auto s = exact_sqrt(r);
      if (!s) {
        std::ostringstream os;
        os << "sqrt(" << r << ") at t = " << t << " is not in Q(sqrt 2)";
        throw NotRepresentable(os.str());
      }
      return *s;
    }
    case K::add: {
      QSqrt2 acc = 0;
      for (const auto& a : n->args) acc += node_exact(a, t);
      return acc;
    }
    case K::mul: {
      QSqrt2 acc = 1;
      for (const auto& a : n->args) acc *= node_exact(a, t);
      return acc;
    }
    case K::sub: return node_exact(n->args[0], t) - node_exact(n->args[1], t);
    case K::neg: return -node_exact(n->args[0], t);
  }
  return 0;
}

Series node_series(const NodePtr& n, int side) {
  using K = ParamScalar::Kind;
  switch (n->kind) {
    case K::constant: return n->value.is_zero() ? Series() : Series::constant(n->value);
    case K::t: return Series::monomial(QSqrt2(side), 1);
    case K::abs_t: return Series::monomial(1, 1);
    case K::t_squared: return Series::monomial(1, 2);
    case K::sqrt_one_plus_t2: return Series::sqrt_one_plus(1);
    case K::sqrt_one_minus_t2: return Series::sqrt_one_plus(-1);
    case K::add: {
      Series acc;
      for (const auto& a : n->args) acc = acc + node_series(a, side);
      return acc;
    }
    case K::mul: {
      Series acc = Series::constant(1);
      for (const auto& a : n->args) acc = acc * node_series(a, side);
      return acc;
    }
    case K::sub: return node_series(n->args[0], side) - node_series(n->args[1], side);
    case K::neg: return -node_series(n->args[0], side);
  }
  return Series();
}

Parity node_parity(const NodePtr& n) {
  using K = ParamScalar::Kind;
  switch (n->kind) {
    case K::t: return Parity::odd;
    case K::add: {
      Parity p = node_parity(n->args[0]);
      for (std::size_t i = 1; i < n->args.size(); ++i) p = combine_sum(p, node_parity(n->args[i]));
      return p;
    }
    case K::sub: return combine_sum(node_parity(n->args[0]), node_parity(n->args[1]));
    case K::mul: {
      Parity p = node_parity(n->args[0]);
      for (std::size_t i = 1; i < n->args.size(); ++i) p = combine_product(p, node_parity(n->args[i]));
      return p;
    }
    case K::neg: return node_parity(n->args[0]);
    default: return Parity::even;
  }
}

bool node_constant(const NodePtr& n) {
  if (n->kind == ParamScalar::Kind::constant) return true;
  if (n->args.empty()) return false;
  return std::all_of(n->args.begin(), n->args.end(), node_constant);
}

}  // namespace

std::string ParamScalar::str() const { return node_text(node_); }
double ParamScalar::eval(double t) const { return node_eval(node_, t); }
QSqrt2 ParamScalar::eval_exact(const Rational& t) const { return node_exact(node_, t); }
Series ParamScalar::series(int side) const {
  if (side != 1 && side != -1) throw std::invalid_argument("side must be +1 or -1");
  return node_series(node_, side);
}
bool ParamScalar::is_even() const { return node_parity(node_) == Parity::even; }
bool ParamScalar::is_constant() const { return node_constant(node_); }

ParamScalar operator+(const ParamScalar& a, const ParamScalar& b) {
  return ParamScalar(std::make_shared<ParamScalar::Node>(make_node(ParamScalar::Kind::add, {a.node_, b.node_})));
}
ParamScalar operator-(const ParamScalar& a, const ParamScalar& b) {
  return ParamScalar(std::make_shared<ParamScalar::Node>(make_node(ParamScalar::Kind::sub, {a.node_, b.node_})));
}
ParamScalar operator*(const ParamScalar& a, const ParamScalar& b) {
  return ParamScalar(std::make_shared<ParamScalar::Node>(make_node(ParamScalar::Kind::mul, {a.node_, b.node_})));
}
ParamScalar operator-(const ParamScalar& a) {
  if (a.node_->kind == ParamScalar::Kind::constant) return ParamScalar::constant(-a.node_->value);
  return ParamScalar(std::make_shared<ParamScalar::Node>(make_node(ParamScalar::Kind::neg, {a.node_})));
}

Domain Domain::everything() {
  Domain d;
  d.lo = -std::numeric_limits<double>::infinity();
  d.hi = std::numeric_limits<double>::infinity();
  d.lo_closed = false;
  d.hi_closed = false;
  d.text = "(-inf,inf)";
  return d;
}

namespace {

double parse_endpoint(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  auto root = s.find("sqrt(");
  if (root != std::string::npos) {
    // p/sqrt(q) or sqrt(q)
    auto close = s.find(')', root);
    if (close == std::string::npos) throw std::invalid_argument("bad endpoint '" + s + "'");
    double q = parse_rational(s.substr(root + 5, close - root - 5)).convert_to<double>();
    double p = 1.0;
    if (root > 0) {
      if (s[root - 1] != '/') throw std::invalid_argument("bad endpoint '" + s + "'");
      p = parse_rational(s.substr(0, root - 1)).convert_to<double>();
      return p / std::sqrt(q);
    }
    return std::sqrt(q);
  }
  return parse_rational(s).convert_to<double>();
}

}  // namespace

Domain Domain::parse(std::string_view text) {
  std::string s(text);
  if (s.size() < 5) throw std::invalid_argument("bad domain '" + s + "'");
  Domain d;
  d.text = s;
  char open = s.front();
  char close = s.back();
  if ((open != '(' && open != '[') || (close != ')' && close != ']')) {
    throw std::invalid_argument("bad domain '" + s + "'");
  }
  auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("bad domain '" + s + "'");
  d.lo = parse_endpoint(s.substr(1, comma - 1));
  d.hi = parse_endpoint(s.substr(comma + 1, s.size() - comma - 2));
  d.lo_closed = open == '[';
  d.hi_closed = close == ']';
  if (!(d.lo < d.hi)) throw std::invalid_argument("empty domain '" + s + "'");
  return d;
}

bool Domain::contains(double t) const {
  if (!std::isfinite(t)) return false;
  bool above = lo_closed ? t >= lo : t > lo;
  bool below = hi_closed ? t <= hi : t < hi;
  return above && below;
}

std::string to_string(Rescaling r) { return r == Rescaling::gamma ? "gamma" : "eta"; }
std::string to_string(Side s) { return s == Side::pos ? "pos" : "neg"; }

Rescaling rescaling_from_string(const std::string& s) {
  if (s == "gamma") return Rescaling::gamma;
  if (s == "eta") return Rescaling::eta;
  throw std::invalid_argument("rescaling must be 'gamma' or 'eta', got '" + s + "'");
}

Side side_from_string(const std::string& s) {
  if (s == "pos") return Side::pos;
  if (s == "neg") return Side::neg;
  throw std::invalid_argument("side must be 'pos' or 'neg', got '" + s + "'");
}

namespace {

void require_in_domain(const HalfSpaceFamily& f, double t) {
  if (!f.domain.contains(t)) {
    std::ostringstream os;
    os << "t = " << t << " is outside the domain " << f.domain.text << " of wall " << f.label;
    throw std::out_of_range(os.str());
  }
}

}  // namespace

Eigen::VectorXd family_coefficients(const HalfSpaceFamily& f, double t) {
  require_in_domain(f, t);
  const auto& coeffs = f.branch(t);
  Eigen::VectorXd v(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) v[static_cast<Eigen::Index>(i)] = coeffs[i].eval(t);
  return v;
}

DualHalfSpace family_eval(const HalfSpaceFamily& f, double t) {
  return DualHalfSpace(family_coefficients(f, t)).canonical();
}

ExactVec family_eval_exact(const HalfSpaceFamily& f, const Rational& t) {
  require_in_domain(f, t.convert_to<double>());
  const auto& coeffs = f.branch(t < 0 ? -1.0 : 1.0);
  ExactVec v(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) v[static_cast<Eigen::Index>(i)] = coeffs[i].eval_exact(t);
  return v;
}

DualHalfSpace dual_rescale(const HalfSpaceFamily& f, Rescaling r, double t) {
  if (t == 0.0) throw std::domain_error("dual_rescale needs t != 0; use rescaled_limit at t = 0");
  Eigen::VectorXd v = family_coefficients(f, t);
  double u = std::abs(t);
  if (r == Rescaling::gamma) {
    v[0] /= u;
  } else {
    v[v.size() - 1] *= u;
  }
  return DualHalfSpace(v).canonical();
}

ExactVec leading_vector(const std::vector<Series>& v) {
  int lowest = Series::kExact;
  for (const auto& s : v) {
    if (!s.is_zero()) lowest = std::min(lowest, s.valuation());
  }
  if (lowest == Series::kExact) throw std::domain_error("no projective limit: all coefficients vanish");
  ExactVec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].precision() <= lowest) {
      throw std::domain_error("no projective limit: series precision exhausted before the leading order");
    }
    out[static_cast<Eigen::Index>(i)] = v[i].coeff(lowest);
  }
  return out;
}

WallLimit rescaled_limit_detailed(const HalfSpaceFamily& f, Rescaling r, Side side) {
  const int sigma = sign_of(side);
  const auto& coeffs = f.branch_for_side(sigma);
  std::vector<Series> s;
  s.reserve(coeffs.size());
  for (const auto& c : coeffs) s.push_back(c.series(sigma));
  if (r == Rescaling::gamma) {
    s.front() = s.front().shifted(-1);
  } else {
    s.back() = s.back().shifted(1);
  }
  ExactVec lead = scale_to_unit_max<QSqrt2>(leading_vector(s));
  DualHalfSpace wall(to_double(lead));
  // The samples must approach the leading-order wall: the gap at the finest
  // sample is small and has shrunk by at least a factor 5 from the coarsest.
  std::vector<double> gaps;
  for (double u : {1e-3, 1e-4, 1e-5}) {
    DualHalfSpace sample = dual_rescale(f, r, sigma * u);
    gaps.push_back((sample.coeffs() - wall.coeffs()).cwiseAbs().maxCoeff());
  }
  const double gap = gaps.back();
  if (gap > 1e-4 || (gap > 1e-12 && gap * 5.0 > gaps.front())) {
    std::ostringstream os;
    os << "no projective limit for wall " << f.label << ": samples differ from the leading-order limit by "
       << gaps.front() << ", " << gaps[1] << ", " << gap;
    throw std::runtime_error(os.str());
  }
  return WallLimit{wall, lead, gap};
}

}  // namespace transition
