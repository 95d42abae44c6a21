#include "transition/gallery.hpp"

#include <doctest.h>

#include <cmath>

using namespace transition;

namespace {

const double kR2 = std::sqrt(2.0);

Polytope ideal_square() {
  return Polytope(QuadraticForm::hyperbolic(2),
                  {DualHalfSpace(Eigen::Vector3d(-1, -kR2, 0)), DualHalfSpace(Eigen::Vector3d(-1, kR2, 0)),
                   DualHalfSpace(Eigen::Vector3d(-1, 0, -kR2)), DualHalfSpace(Eigen::Vector3d(-1, 0, kR2))},
                  {"left", "right", "bottom", "top"});
}

}  // namespace

TEST_CASE("construction checks the interior point and distinct walls") {
  CHECK_THROWS(Polytope(QuadraticForm::hyperbolic(2),
                        {DualHalfSpace(Eigen::Vector3d(-1, 1, 0)), DualHalfSpace(Eigen::Vector3d(-2, 2, 0))}));
  CHECK_THROWS(Polytope(QuadraticForm::hyperbolic(2), {DualHalfSpace(Eigen::Vector3d(1, 0, 0))}, {},
                        ProjectivePoint(Eigen::Vector3d(1, 0, 0))));
  CHECK(ideal_square().index_of("bottom") == 2);
  CHECK_THROWS(ideal_square().index_of("middle"));
}

TEST_CASE("the ideal square has four ideal vertices at [1 : +-r2/2 : +-r2/2]") {
  VertexSet v = enumerate_vertices(ideal_square());
  CHECK(v.ideal.size() == 4);
  CHECK(v.finite.empty());
  for (const auto& x : v.ideal) {
    Eigen::VectorXd c = x.point.coords() / x.point.coords()[0];
    CHECK(std::abs(c[1]) == doctest::Approx(kR2 / 2));
    CHECK(std::abs(c[2]) == doctest::Approx(kR2 / 2));
  }
  auto adj = adjacency(ideal_square(), v);
  CHECK(adj.size() == 4);
  DihedralAngle a = dihedral_angle(QuadraticForm::hyperbolic(2), ideal_square().wall("left"), ideal_square().wall("top"));
  CHECK(a.kind == DihedralAngle::Kind::asymptotically_parallel);
}

TEST_CASE("opposite sides of the ideal square are ultraparallel at distance 2 asinh 1") {
  Polytope p = ideal_square();
  DihedralAngle d = dihedral_angle(p.form(), p.wall("left"), p.wall("right"));
  CHECK(d.kind == DihedralAngle::Kind::ultraparallel);
  const double want = std::acosh(3.0);  // frozen: cosh d = 3
  CHECK(wall_distance(p.form(), p.wall("left"), p.wall("right")) == doctest::Approx(want).epsilon(1e-14));
  CHECK(wall_distance_oracle(p.form(), p.wall("left"), p.wall("right"), 0) == doctest::Approx(want).epsilon(1e-7));
  CHECK_THROWS(wall_distance(p.form(), p.wall("left"), p.wall("top")));
}

TEST_CASE("the wall distance oracle agrees away from symmetric cases") {
  const auto q = QuadraticForm::hyperbolic(3);
  DualHalfSpace a(Eigen::Vector4d(-1, -0.21, 0.05, -2.14));
  DualHalfSpace b(Eigen::Vector4d(-1, 0.5, -0.98, 1.29));
  CHECK(wall_distance_oracle(q, a, b, 7) == doctest::Approx(wall_distance(q, a, b)).epsilon(1e-7));
}

TEST_CASE("exact enumeration agrees with the floating point one") {
  ExactPolytope e = make_family("ideal_octahedron").exact_at(Rational(1));
  ExactVertexSet v = enumerate_vertices_exact(e);
  CHECK(v.ideal.size() == 6);
  CHECK(adjacency_exact(e, v).size() == 12);
  for (const auto& x : v.ideal) CHECK(eval_form(e.form, x.point).is_zero());
}

TEST_CASE("vertex counts of the catalog polytopes") {
  struct Case {
    const char* family;
    double t;
    std::size_t finite, ideal, edges;
  };
  // frozen from the first full evaluation of the catalog
  for (const Case& c : {Case{"ideal_octahedron", 1.0, 0, 6, 12}, Case{"ks_polytope", 0.3, 34, 12, 0},
                        Case{"cuboctahedron", 0.0, 0, 12, 24}, Case{"oct_prime", 0.5, 4, 4, 14}}) {
    CAPTURE(c.family);
    Polytope p = make_family(c.family).at(c.t);
    VertexSet v = enumerate_vertices(p);
    CHECK(v.finite.size() == c.finite);
    CHECK(v.ideal.size() == c.ideal);
    if (c.edges) CHECK(adjacency(p, v).size() == c.edges);
  }
}

TEST_CASE("anti-de Sitter separation") {
  Polytope p = make_family("quad_prime").at(-0.5);
  CHECK(timelike_separation(p.form(), p.wall("top"), p.wall("bottom")) == doctest::Approx(2 * std::asin(0.5)));
}

TEST_CASE("hyperplane bases are orthonormal for the induced form") {
  const auto q = QuadraticForm::hyperbolic(3);
  DualHalfSpace h(Eigen::Vector4d(0, 0, 0, 1));
  HyperplaneBasis b = hyperplane_basis(q, h);
  REQUIRE(b.basis.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(pairing(q, b.basis[i], b.basis[i]) == doctest::Approx(b.signs[i]));
    for (std::size_t j = i + 1; j < 3; ++j) CHECK(std::abs(pairing(q, b.basis[i], b.basis[j])) < 1e-14);
  }
}

TEST_CASE("a slice of the four-dimensional polytope matches the octahedra") {
  for (double t : {0.1, 0.3, -0.3}) {
    CAPTURE(t);
    Polytope ks = make_family("ks_polytope").at(t);
    Polytope slice = cross_section(ks, ks.wall("ellA"));
    CHECK(slice.size() == 8);
    CHECK(gram_compare(slice, make_family("oct_prime").at(t)).has_value());
  }
  Polytope a = make_family("oct_prime").at(0.3);
  CHECK_FALSE(gram_compare(a, make_family("oct_prime").at(0.5)).has_value());
}

TEST_CASE("normalized Gram matrices have unit diagonal for spacelike walls") {
  Eigen::MatrixXd g = normalized_gram(ideal_square());
  CHECK(g.diagonal().isApprox(Eigen::Vector4d::Ones()));
  CHECK(g(0, 1) == doctest::Approx(-3.0));
}
