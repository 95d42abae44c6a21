#include "transition/suite.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace transition;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("loop words") {
  LoopWord w = LoopWord::parse("LR TB^-1");
  REQUIRE(w.letters.size() == 2);
  CHECK(w.letters[1].exponent == -1);
  CHECK(w.inverse().str() == "TB LR^-1");
  CHECK(commutator(LoopWord::parse("A"), LoopWord::parse("B")).str() == "A B A^-1 B^-1");
  CHECK_THROWS(LoopWord::parse("A^2"));
  CHECK(LoopWord::parse("  ").empty());
}

TEST_CASE("cone angle of the punctured torus from the exp-deformed quadrilateral") {
  const PairingScheme& s = pairing_scheme("torus_from_quadrilateral");
  const EdgeCycle& c = s.cycles.front();
  CHECK(cycle_is_closed(c, s));
  // frozen from the first evaluation
  CHECK(cone_angle(c, s, 0.25) == doctest::Approx(6.159).epsilon(1e-3));
  CHECK(cone_angle(c, s, 1.0) == doctest::Approx(4.600).epsilon(1e-3));
  CHECK(cone_angle(c, s, 4.0) == doctest::Approx(0.293).epsilon(1e-2));
  CHECK(cone_angle(c, s, -0.6) == doctest::Approx(7.046).epsilon(1e-3));
}

TEST_CASE("the holonomy rotation matches the cone angle up to sign mod 2 pi") {
  const PairingScheme& s = pairing_scheme("torus_from_quadrilateral");
  LoopWord w = LoopWord::parse(s.default_loop);
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    CAPTURE(t);
    Singularity sing = detect_singularity(holonomy(w, s, t), Geometry::hyperbolic);
    REQUIRE(sing.kind == Singularity::Kind::cone);
    double cone = cone_angle(s.cycles.front(), s, t);
    double a = std::remainder(cone - sing.angle, 2 * kPi);
    double b = std::remainder(cone + sing.angle, 2 * kPi);
    CHECK(std::min(std::abs(a), std::abs(b)) < 1e-8);
  }
}

TEST_CASE("the quad_prime torus: rotation at t = 1/2 and half-pipe limit") {
  const PairingScheme& s = pairing_scheme("torus_from_quad_prime");
  LoopWord w = LoopWord::parse(s.default_loop);
  Singularity sing = detect_singularity(holonomy(w, s, 0.5), Geometry::hyperbolic);
  CHECK(sing.angle == doctest::Approx(2 * kPi - 4 * std::acos(0.5)));

  ProjectiveMap lim = limit_holonomy(w, s, Rescaling::eta, Side::pos);
  Singularity hp = detect_singularity(lim, Geometry::half_pipe, 1e-8);
  REQUIRE(hp.hp.has_value());
  CHECK(hp.hp->kind == HpClassification::Kind::hp_rotation);
  // frozen: translation -(4, 4 r2), which is Rb - b for b = (-2, 0)
  CHECK(hp.hp->translation[0] == doctest::Approx(-4.0));
  CHECK(hp.hp->translation[1] == doctest::Approx(-4 * std::sqrt(2.0)));
  CHECK(hp.hp->magnitude == doctest::Approx(4.0));

  MinkIsometry tb = hp_to_mink(HpIsometry::from_matrix(limit_holonomy(LoopWord::parse("TB"), s, Rescaling::eta, Side::pos).matrix()));
  CHECK(tb.linear().isApprox(Eigen::Matrix2d::Identity()));
  CHECK(tb.translation().isApprox(Eigen::Vector2d(-2, 0)));
}

TEST_CASE("Borromean cone angles grow toward 2 pi as t decreases") {
  const PairingScheme& s = pairing_scheme("borromean_double");
  const EdgeCycle& c = s.cycles.front();
  CHECK(cone_angle(c, s, 1.0) == doctest::Approx(0.0));
  double prev = 0.0;
  for (double t : {0.8, 0.6, 0.4, 0.2}) {
    double a = cone_angle(c, s, t);
    CHECK(a > prev);
    CHECK(a < 2 * kPi);
    prev = a;
  }
  CHECK(cone_angle(c, s, 0.5) == doctest::Approx(4.733).epsilon(1e-3));
  Polytope p = make_family("oct_collapse").at(0.5);
  CHECK(cone_angle(c, s, 0.5) ==
        doctest::Approx(2 * dihedral_angle(p.form(), p.wall("L1"), p.wall("L3")).value));
}

TEST_CASE("three-torus: flat edges and commuting translations") {
  const PairingScheme& s = pairing_scheme("three_torus_translations");
  for (const auto& c : s.cycles) CHECK(cone_angle(c, s, 0.0) == doctest::Approx(2 * kPi));
  ProjectiveMap h = holonomy(commutator(LoopWord::parse("X1"), LoopWord::parse("X3")), s, 0.0);
  CHECK(detect_singularity(h, Geometry::euclidean).kind == Singularity::Kind::trivial);
}

TEST_CASE("singularity detection") {
  const auto id = ProjectiveMap::identity(3);
  CHECK(detect_singularity(id, Geometry::hyperbolic).kind == Singularity::Kind::trivial);
  Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
  rot(1, 1) = rot(2, 2) = std::cos(0.9);
  rot(1, 2) = -std::sin(0.9);
  rot(2, 1) = std::sin(0.9);
  Singularity s = detect_singularity(ProjectiveMap(rot), Geometry::hyperbolic);
  CHECK(s.kind == Singularity::Kind::cone);
  CHECK(s.angle == doctest::Approx(0.9));
  Eigen::Matrix3d boost = Eigen::Matrix3d::Identity();
  boost(0, 0) = boost(1, 1) = std::cosh(0.5);
  boost(0, 1) = boost(1, 0) = std::sinh(0.5);
  CHECK(detect_singularity(ProjectiveMap(boost), Geometry::hyperbolic).kind == Singularity::Kind::other);
  CHECK(detect_singularity(ProjectiveMap(boost), Geometry::anti_de_sitter).kind == Singularity::Kind::other);
}

TEST_CASE("an open cycle is refused") {
  const PairingScheme& s = pairing_scheme("borromean_double");
  EdgeCycle broken{"broken", {{0, "L1", "L3"}, {1, "R2", "R4"}}};
  CHECK_FALSE(cycle_is_closed(broken, s));
  CHECK_THROWS_AS(cone_angle(broken, s, 0.5), std::invalid_argument);
}

TEST_CASE("the collapsing edges separate like 2 artanh t") {
  for (double t : {0.1, 0.5, 0.8}) CHECK(collapsing_edge_distance(t) == doctest::Approx(2 * std::atanh(t)).epsilon(1e-9));
}
