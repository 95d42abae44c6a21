#include "transition/param.hpp"

#include <doctest.h>

#include <cmath>

using namespace transition;

namespace {

HalfSpaceFamily wall(const std::string& label, std::vector<std::string> pos, std::vector<std::string> neg = {}) {
  HalfSpaceFamily f;
  f.label = label;
  for (const auto& p : pos) f.pos.push_back(ParamScalar::parse(p));
  for (const auto& n : neg) f.neg.push_back(ParamScalar::parse(n));
  f.domain = Domain::parse("(-1,1]");
  return f;
}

}  // namespace

TEST_CASE("expression syntax") {
  ParamScalar e = ParamScalar::parse("(* -r2 t^2)");
  CHECK(e.eval(0.5) == doctest::Approx(-std::sqrt(2.0) / 4));
  CHECK(e.eval_exact(Rational(1) / 2) == QSqrt2(0, Rational(-1) / 4));
  CHECK(e.is_even());
  CHECK_FALSE(ParamScalar::parse("t").is_even());
  CHECK(ParamScalar::parse("(* t t)").is_even());
  CHECK(ParamScalar::parse("|t|").eval(-0.3) == doctest::Approx(0.3));
  CHECK(ParamScalar::parse("sqrt(1+t^2)").eval_exact(Rational(3) / 4) == QSqrt2(Rational(5) / 4));
  CHECK_THROWS_AS(ParamScalar::parse("sqrt(1+t^2)").eval_exact(Rational(1) / 2), NotRepresentable);
  CHECK_THROWS(ParamScalar::parse("(+ t"));
  CHECK_THROWS(ParamScalar::parse("cos(t)"));
}

TEST_CASE("round trip through text") {
  for (const char* text : {"(- (* r2 |t|) 1/3)", "(* -1 sqrt(1-t^2))", "-t"}) {
    ParamScalar e = ParamScalar::parse(text);
    ParamScalar again = ParamScalar::parse(e.str());
    CHECK(again.eval(0.37) == doctest::Approx(e.eval(0.37)));
    CHECK(again.eval(-0.21) == doctest::Approx(e.eval(-0.21)));
  }
}

TEST_CASE("domains") {
  Domain d = Domain::parse("(-1,1]");
  CHECK(d.contains(1.0));
  CHECK_FALSE(d.contains(-1.0));
  CHECK(Domain::everything().contains(1e9));
  CHECK(Domain::parse("(-1,1/sqrt(3))").contains(0.57));
  CHECK_FALSE(Domain::parse("(-1,1/sqrt(3))").contains(0.58));
}

TEST_CASE("series of atoms on both sides") {
  ParamScalar t = ParamScalar::atom(ParamScalar::Kind::t);
  CHECK(t.series(1).leading() == QSqrt2(1));
  CHECK(t.series(-1).leading() == QSqrt2(-1));
  CHECK(ParamScalar::parse("|t|").series(-1).leading() == QSqrt2(1));
  CHECK(ParamScalar::parse("sqrt(1-t^2)").series(1).coeff(2) == QSqrt2(Rational(-1) / 2));
}

TEST_CASE("gamma limit of a collapsing wall") {
  // (-t, -r2 t^2, 0, -1): the x0 coefficient dominates after division by |t|.
  HalfSpaceFamily f = wall("L1", {"-t", "(* -r2 t^2)", "0", "-1"}, {"-|t|", "(* -r2 t^2)", "0", "-1"});
  for (Side s : {Side::pos, Side::neg}) {
    WallLimit l = rescaled_limit_detailed(f, Rescaling::gamma, s);
    CHECK(l.wall.equals(DualHalfSpace(Eigen::Vector4d(-1, 0, 0, -1)), 1e-12));
    CHECK(l.exact[0] == QSqrt2(-1));
    CHECK(l.exact[1].is_zero());
    CHECK(l.sample_gap < 1e-4);
  }
}

TEST_CASE("eta limit keeps the last coordinate when it has the same order") {
  HalfSpaceFamily f = wall("L1", {"-|t|", "(* -r2 |t|)", "0", "-1"});
  WallLimit l = rescaled_limit_detailed(f, Rescaling::eta, Side::pos);
  CHECK(l.wall.equals(DualHalfSpace(Eigen::Vector4d(-1, -std::sqrt(2.0), 0, -1)), 1e-12));
  HalfSpaceFamily g = wall("R1", {"-1", "-r2", "0", "t"});
  WallLimit m = rescaled_limit_detailed(g, Rescaling::eta, Side::neg);
  CHECK(m.exact[3].is_zero());
}

TEST_CASE("rescaled samples converge to the limit") {
  HalfSpaceFamily f = wall("x", {"-t", "(* -r2 t^2)", "0", "-1"}, {"-|t|", "(* -r2 t^2)", "0", "-1"});
  DualHalfSpace lim = rescaled_limit(f, Rescaling::gamma, Side::pos);
  double prev = 1.0;
  for (double t : {1e-1, 1e-2, 1e-3}) {
    double d = (dual_rescale(f, Rescaling::gamma, t).canonical().coeffs() - lim.canonical().coeffs()).norm();
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("names of rescalings and sides") {
  CHECK(rescaling_from_string("eta") == Rescaling::eta);
  CHECK(side_from_string("neg") == Side::neg);
  CHECK_THROWS(rescaling_from_string("delta"));
  CHECK(sign_of(Side::neg) == -1);
}
