#include "transition/suite.hpp"

#include <Eigen/LU>
#include <doctest.h>

#include <cmath>

using namespace transition;

TEST_CASE("every catalog family evaluates and every symmetry holds") {
  for (const auto& f : catalog()) {
    CAPTURE(f.name);
    double t = f.domain.contains(0.3) ? 0.3 : 0.0;
    if (f.transitional() && t == 0) t = 0.3;
    Polytope p = f.at(t);
    CHECK(p.size() == static_cast<int>(f.labels.size()));
    CHECK(p.form() == f.form_at(t));
    for (const auto& s : f.symmetries) {
      Symmetry sym = parse_symmetry(s, f.dim + 1);
      CHECK(is_isometry(p.form(), sym.matrix).isometry);
    }
  }
}

TEST_CASE("table data agrees with the written-out tables") {
  for (const auto& g : golden_tables()) {
    const FamilyRecord& f = make_family(g.family);
    for (const auto& t : g.sample_t) {
      CAPTURE(g.family);
      CAPTURE(t);
      ExactPolytope p = f.exact_at(t);
      auto want = g.walls(t);
      REQUIRE(p.walls.size() == want.size());
      for (std::size_t i = 0; i < want.size(); ++i) CHECK(p.walls[i] == want[i]);
    }
  }
}

TEST_CASE("domains and collapse points") {
  CHECK_THROWS_AS(make_family("oct_collapse").at(0.0), std::domain_error);
  CHECK_THROWS_AS(make_family("oct_prime").at(-1.0), std::domain_error);
  CHECK_THROWS_AS(make_family("ks_polytope").at(0.6), std::domain_error);
  CHECK_NOTHROW(make_family("ks_polytope").at(0.57));
  CHECK_THROWS_AS(make_family("exp_quadrilateral").exact_at(Rational(1)), std::domain_error);
  CHECK_THROWS_AS(make_family("nosuchfamily"), UnknownName);
  CHECK(make_family("oct_prime").geometry_at(-0.5) == Geometry::anti_de_sitter);
  CHECK(make_family("oct_collapse").geometry_at(-0.5) == Geometry::spherical);
}

TEST_CASE("orthogonality declared in the data holds") {
  const FamilyRecord& f = make_family("ks_polytope");
  REQUIRE(f.orthogonal.size() >= 8);
  for (double t : {0.1, 0.3, -0.3}) {
    Polytope p = f.at(t);
    for (const auto& [a, b] : f.orthogonal) {
      CHECK(std::abs(pairing(p.form(), p.wall(a).coeffs(), p.wall(b).coeffs())) < 1e-12);
    }
  }
}

TEST_CASE("the quadrilateral angle and side length in closed form") {
  const FamilyRecord& f = make_family("quad_prime");
  for (double t : {0.25, 0.5, 0.75}) {
    Polytope p = f.at(t);
    CHECK(dihedral_angle(p.form(), p.wall("left"), p.wall("top")).value == doctest::Approx(std::acos(t)));
    CHECK(wall_distance(p.form(), p.wall("bottom"), p.wall("top")) == doctest::Approx(2 * std::asinh(t)));
  }
}

TEST_CASE("oct_prime is right-angled except along two edges") {
  Polytope p = make_family("oct_prime").at(0.5);
  VertexSet v = enumerate_vertices(p);
  int non_right = 0;
  for (auto [a, b] : adjacency(p, v)) {
    DihedralAngle d = dihedral_angle(p.form(), p.walls()[a], p.walls()[b]);
    if (std::abs(d.cosine) > 1e-12) {
      ++non_right;
      const std::string pair = p.labels()[a] + p.labels()[b];
      CHECK((pair == "L1L3" || pair == "L2L4"));
    }
  }
  CHECK(non_right == 2);
}

TEST_CASE("the exp-deformed vertices") {
  auto v = exp_deform_vertices(0.4, Curvature::hyp);
  REQUIRE(v.size() == 4);
  Polytope p = make_family("exp_quadrilateral").at(0.4);
  for (const auto& x : v) {
    double on_walls = 0;
    for (const auto& w : p.walls()) on_walls += std::abs(w(x.coords())) < 1e-12 ? 1 : 0;
    CHECK(on_walls == 2);
  }
  CHECK_THROWS(exp_deform_vertices(-0.4, Curvature::hyp));
  CHECK_NOTHROW(exp_deform_vertices(0.4, Curvature::sph));
}

TEST_CASE("family data parser") {
  const char* good = R"(format 1
family tiny
dim 2
domain (-1,1]
geometry hyperbolic euclidean spherical
source a tiny test family
wall a : -1 -r2 0
wall b : -1 r2 0
wall c : -1 0 -r2
wall d : -1 0 r2
symmetry flip1
end
)";
  auto recs = parse_family_data(good);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].labels.size() == 4);
  CHECK(recs[0].symmetries == std::vector<std::string>{"flip1"});

  std::string missing_format = std::string(good).substr(std::string("format 1\n").size());
  CHECK_THROWS_WITH_AS(parse_family_data(missing_format), doctest::Contains("format"), std::invalid_argument);
  std::string bad_coeff = good;
  bad_coeff.replace(bad_coeff.find("-1 r2 0"), 7, "-1 (+ r2");
  CHECK_THROWS_WITH(parse_family_data(bad_coeff), doctest::Contains("line 8"));
  CHECK_THROWS(parse_symmetry("flip7", 3));
  CHECK_THROWS(parse_symmetry("rotate12", 3));
  CHECK(parse_symmetry("flip1*swap12", 3).matrix.determinant() == doctest::Approx(1.0));
}

TEST_CASE("pairing schemes map their faces") {
  for (const auto& s : scheme_catalog()) {
    CAPTURE(s.name);
    const FamilyRecord& f = make_family(s.family);
    std::vector<double> ts = f.transitional() ? std::vector<double>{0.5, -0.3} : std::vector<double>{0.0};
    if (s.family == "exp_quadrilateral") ts = {0.5, 2.0, -0.3};
    for (double t : ts) {
      for (const auto& c : validate_scheme(s, t)) {
        CAPTURE(c.label);
        CHECK(c.ok());
      }
    }
  }
  CHECK_THROWS_AS(pairing_scheme("nosuchscheme"), UnknownName);
  CHECK_THROWS_AS(pairing_scheme("torus_from_quadrilateral").pairing("XY"), UnknownName);
}
