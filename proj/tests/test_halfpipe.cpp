#include "transition/halfpipe.hpp"

#include <doctest.h>

#include <cmath>

using namespace transition;

namespace {

Eigen::Matrix2d boost2(double phi) {
  Eigen::Matrix2d b;
  b << std::cosh(phi), std::sinh(phi), std::sinh(phi), std::cosh(phi);
  return b;
}

}  // namespace

TEST_CASE("the dictionary is a homomorphism") {
  MinkIsometry g(boost2(0.7), Eigen::Vector2d(1.0, -0.5));
  MinkIsometry h(-boost2(-0.2), Eigen::Vector2d(0.3, 2.0));
  Eigen::MatrixXd lhs = mink_to_hp(g * h).matrix();
  Eigen::MatrixXd rhs = mink_to_hp(g).matrix() * mink_to_hp(h).matrix();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
  MinkIsometry back = hp_to_mink(mink_to_hp(h));
  CHECK(back.linear().isApprox(h.linear()));
  CHECK(back.translation().isApprox(h.translation()));
}

TEST_CASE("minus the identity becomes a block with eps = -1") {
  HpIsometry m = mink_to_hp(MinkIsometry(-Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 0)));
  CHECK(m.eps() == -1);
  CHECK(m.a().isApprox(Eigen::Matrix2d::Identity()));
  CHECK(m.v().isApprox(Eigen::Vector2d(-1, 0)));  // b^T J A with b = (1, 0)
}

TEST_CASE("non-Lorentzian linear parts are refused") {
  Eigen::Matrix2d rot;
  rot << 0, -1, 1, 0;
  CHECK_THROWS(MinkIsometry(rot, Eigen::Vector2d::Zero()));
}

TEST_CASE("points and planes") {
  Eigen::Vector3d xbar(std::cosh(0.4), std::sinh(0.4), 0);
  HpPoint p{xbar, 0.8};
  MinkPlane plane = hp_point_to_plane(p);
  MinkIsometry g(Eigen::Matrix3d::Identity(), Eigen::Vector3d(0.5, 0.1, -0.2));
  HpPoint img = apply(mink_to_hp(g), p);
  MinkPlane moved = apply(g, plane);
  MinkPlane via = hp_point_to_plane(img);
  CHECK(via.normal.isApprox(moved.normal));
  CHECK(via.offset == doctest::Approx(moved.offset));
  HpPoint back = hp_point_from_projective(p.projective());
  CHECK(back.height == doctest::Approx(0.8));
}

TEST_CASE("walls dual to Minkowski points") {
  DualHalfSpace w = mink_point_to_hp_wall(Eigen::Vector2d(2, 3));
  CHECK(w.coeffs().isApprox(Eigen::Vector3d(-2, 3, -1)));
  ExactVec e(2);
  e << QSqrt2(1), QSqrt2::sqrt2();
  ExactVec ew = mink_point_to_hp_wall_exact(e);
  CHECK(ew[0] == QSqrt2(-1));
  CHECK(ew[2] == QSqrt2(-1));
}

TEST_CASE("incidence of walls follows the causal type of the difference") {
  CHECK(*hp_walls_meet(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(0, 2, 0)));
  CHECK_FALSE(*hp_walls_meet(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(2, 0, 0)));
  CHECK_FALSE(hp_walls_meet(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 1, 0)).has_value());
}

TEST_CASE("classification") {
  CHECK(classify_hp(mink_to_hp(MinkIsometry::identity(2))).kind == HpClassification::Kind::identity);

  HpClassification refl = classify_hp(mink_to_hp(MinkIsometry(-Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 0))));
  CHECK(refl.kind == HpClassification::Kind::nondegenerate_reflection);
  REQUIRE(refl.wall);
  CHECK(refl.wall->same_hyperplane(mink_point_to_hp_wall(Eigen::Vector2d(0.5, 0)), 1e-12));

  HpClassification rot = classify_hp(mink_to_hp(MinkIsometry::translation_by(Eigen::Vector2d(1, 2))));
  CHECK(rot.kind == HpClassification::Kind::hp_rotation);
  CHECK(rot.magnitude == doctest::Approx(std::sqrt(3.0)));

  HpClassification deg = classify_hp(degenerate_reflection_family(Eigen::Vector2d(0, 1), 0.6));
  CHECK(deg.kind == HpClassification::Kind::degenerate_reflection);
  CHECK(deg.parameter == doctest::Approx(0.6));

  // a timelike translation is not a half-pipe rotation
  CHECK(classify_hp(mink_to_hp(MinkIsometry::translation_by(Eigen::Vector2d(2, 1)))).kind ==
        HpClassification::Kind::other);
}

TEST_CASE("translation length of a boost") {
  HpIsometry b = mink_to_hp(MinkIsometry::linear_map(boost2(2 * std::asinh(1.0))));
  CHECK(hp_translation_length_on_H1(b) == doctest::Approx(2 * std::asinh(1.0)).epsilon(1e-14));
  CHECK_THROWS(hp_translation_length_on_H1(mink_to_hp(MinkIsometry::identity(2))));
}

TEST_CASE("block shape detection") {
  CHECK(is_hp_block_matrix(mink_to_hp(MinkIsometry(boost2(0.3), Eigen::Vector2d(1, 1))).matrix() * 5.0, 1e-10));
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 2) = 0.1;
  CHECK_FALSE(is_hp_block_matrix(m, 1e-10));
}
