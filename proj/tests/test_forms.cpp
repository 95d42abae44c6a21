#include "transition/forms.hpp"

#include <doctest.h>

#include <cmath>

using namespace transition;

TEST_CASE("signatures of the model forms") {
  CHECK(QuadraticForm::hyperbolic(3).signs() == std::vector<int>{-1, 1, 1, 1});
  CHECK(QuadraticForm::spherical(2).signs() == std::vector<int>{1, 1, 1});
  CHECK(QuadraticForm::anti_de_sitter(3).signs() == std::vector<int>{-1, 1, 1, -1});
  CHECK(QuadraticForm::half_pipe(3).signs() == std::vector<int>{-1, 1, 1, 0});
  CHECK(QuadraticForm::euclidean(3).signs() == std::vector<int>{0, 1, 1, 1});
  CHECK(QuadraticForm::half_pipe(2).is_degenerate());
  CHECK(QuadraticForm::for_geometry(Geometry::anti_de_sitter, 2).geometry() == Geometry::anti_de_sitter);
  for (Geometry g : {Geometry::hyperbolic, Geometry::spherical, Geometry::anti_de_sitter, Geometry::euclidean,
                     Geometry::half_pipe}) {
    CHECK(geometry_from_string(to_string(g)) == g);
  }
}

TEST_CASE("pairing rejects mismatched sizes") {
  Eigen::VectorXd a(3), b(4);
  a.setOnes();
  b.setOnes();
  CHECK_THROWS_AS(pairing(QuadraticForm::hyperbolic(2), a, b), std::invalid_argument);
}

TEST_CASE("directions") {
  const auto q = QuadraticForm::hyperbolic(2);
  CHECK(classify_direction(q, Eigen::Vector3d(1, 0, 0)) == Direction::negative);
  CHECK(classify_direction(q, Eigen::Vector3d(1, 1, 0)) == Direction::null);
  CHECK(classify_direction(q, Eigen::Vector3d(0, 1, 0)) == Direction::positive);
}

TEST_CASE("projective equality is up to a positive scalar") {
  DualHalfSpace a(Eigen::Vector3d(-1, 2, 0));
  CHECK(a.equals(DualHalfSpace(Eigen::Vector3d(-3, 6, 0))));
  CHECK_FALSE(a.equals(a.opposite()));
  CHECK(a.same_hyperplane(a.opposite()));
  ProjectivePoint x(Eigen::Vector3d(2, 0, -4));
  CHECK(x.canonical().coords().isApprox(Eigen::Vector3d(0.5, 0, -1)));
}

TEST_CASE("reflections are involutive isometries fixing their wall") {
  const auto q = QuadraticForm::hyperbolic(2);
  DualHalfSpace w(Eigen::Vector3d(-1, std::sqrt(2.0), 0));
  ProjectiveMap r = reflection_in_hyperplane(q, w);
  CHECK((r.matrix() * r.matrix() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(is_isometry(q, r).isometry);
  CHECK(r.apply(w).equals(w.opposite(), 1e-12));
  // frozen: the matrix of this reflection
  Eigen::Matrix3d want;
  want << 3, -2 * std::sqrt(2.0), 0, 2 * std::sqrt(2.0), -3, 0, 0, 0, 1;
  CHECK((r.matrix() - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lightlike walls have no reflection") {
  DualHalfSpace w(Eigen::Vector3d(-1, 1, 0));
  CHECK_THROWS(reflection_in_hyperplane(QuadraticForm::hyperbolic(2), w));
}

TEST_CASE("half-pipe reflections exist only for walls transverse to the degenerate direction") {
  const auto q = QuadraticForm::half_pipe(2);
  ProjectiveMap r = reflection_in_hyperplane(q, DualHalfSpace(Eigen::Vector3d(-1, 0, 1)));
  CHECK(is_isometry(q, r).isometry);
  CHECK_THROWS(reflection_in_hyperplane(q, DualHalfSpace(Eigen::Vector3d(-1, 2, 0))));
}

TEST_CASE("canonical matrices fix the sign by the (0,0) entry") {
  Eigen::Matrix2d m;
  m << -2, 1, 0, -4;
  Eigen::MatrixXd c = canonical_matrix(m);
  CHECK(c(0, 0) == doctest::Approx(0.5));
  CHECK(c(1, 1) == doctest::Approx(1.0));
  Eigen::Matrix2d z;
  z << 0, -3, 1, 0;
  CHECK(canonical_matrix(z)(1, 0) > 0);  // column-major scan
}

TEST_CASE("isometry test for the Euclidean dual form accepts translations") {
  Eigen::Matrix3d tr = Eigen::Matrix3d::Identity();
  tr(1, 0) = 0.7;
  tr(2, 0) = -1.3;
  CHECK(is_isometry(QuadraticForm::euclidean(2), tr).isometry);
  Eigen::Matrix3d scale = Eigen::Matrix3d::Identity();
  scale(1, 1) = 2;
  CHECK_FALSE(is_isometry(QuadraticForm::euclidean(2), scale).isometry);
}

TEST_CASE("sheet preservation is reported for Lorentzian forms") {
  IsometryCheck c = is_isometry(QuadraticForm::hyperbolic(2), Eigen::Matrix3d(-Eigen::Matrix3d::Identity()));
  REQUIRE(c.sheet_preserving.has_value());
  CHECK_FALSE(*c.sheet_preserving);
}
