#include "transition/gallery.hpp"
#include "transition/halfpipe.hpp"
#include "transition/transition.hpp"

#include <doctest.h>

#include <cmath>

using namespace transition;

TEST_CASE("rescaling maps") {
  RescalingMap g(Rescaling::gamma, -0.5, 3);
  CHECK(g.matrix().diagonal().isApprox(Eigen::Vector3d(1, 2, 2)));
  CHECK((g.matrix() * g.inverse_matrix()).isApprox(Eigen::Matrix3d::Identity()));
  RescalingMap e(Rescaling::eta, 0.25, 4);
  CHECK(e.matrix().diagonal().isApprox(Eigen::Vector4d(1, 1, 1, 4)));
  CHECK(e.weight(3) == 1);
  CHECK(e.weight(0) == 0);
}

TEST_CASE("reflection limits of the exp-deformed quadrilateral, both sides") {
  const FamilyRecord& f = make_family("exp_quadrilateral");
  IsometryPath path = sampled_path(
      [&f](double t) {
        Polytope p = f.at(t);
        return reflection_in_hyperplane(p.form(), p.wall("right")).matrix();
      },
      "right side");
  Eigen::Matrix3d want;
  want << 1, 0, 0, std::sqrt(2.0), -1, 0, 0, 0, 1;  // frozen
  for (Side s : {Side::pos, Side::neg}) {
    IsometryLimit l = limit_conjugated_isometry_detailed(path, Rescaling::gamma, s);
    CHECK((l.map.matrix() - want).cwiseAbs().maxCoeff() < 1e-8);
    CHECK_FALSE(l.symbolic);
    CHECK(is_isometry(QuadraticForm::euclidean(2), l.map, 1e-8).isometry);
  }
}

TEST_CASE("closed-form reflection limits are exact") {
  const FamilyRecord& f = make_family("oct_prime");
  IsometryPath path = reflection_path(f.wall("L1"), [&f](int s) { return f.form_for_side(s); });
  IsometryLimit l = limit_conjugated_isometry_detailed(path, Rescaling::eta, Side::pos);
  CHECK(l.symbolic);
  REQUIRE(l.exact.has_value());
  CHECK(l.numeric_gap < 1e-6);
  CHECK(is_hp_block_matrix(l.map.matrix(), 1e-10));
}

TEST_CASE("a path without a limit is refused") {
  IsometryPath spin = sampled_path(
      [](double t) {
        Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
        const double a = 1.0 / t;
        m(1, 1) = m(2, 2) = std::cos(a);
        m(1, 2) = -std::sin(a);
        m(2, 1) = std::sin(a);
        return Eigen::MatrixXd(m);
      },
      "fast rotation");
  CHECK_THROWS(limit_conjugated_isometry(spin, Rescaling::gamma, Side::pos));
}

TEST_CASE("unimodular normalization") {
  Eigen::Matrix2d m;
  m << -4, 0, 0, -1;
  Eigen::MatrixXd n = normalize_unimodular(m);
  CHECK(n(0, 0) == doctest::Approx(2.0));
  CHECK(n(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("rescaled model surfaces approach their limits at rate t^2") {
  // frozen ratios from the seeded run: 3.986, 4.014, 3.993, 4.007
  for (auto [m, r] : std::vector<std::pair<SurfaceModel, Rescaling>>{{SurfaceModel::hyperbolic, Rescaling::gamma},
                                                                      {SurfaceModel::spherical, Rescaling::gamma},
                                                                      {SurfaceModel::hyperbolic, Rescaling::eta},
                                                                      {SurfaceModel::anti_de_sitter, Rescaling::eta}}) {
    double a = surface_limit_check(m, r, 0.1, 200, 2, 0);
    double b = surface_limit_check(m, r, 0.05, 200, 2, 0);
    CHECK(a / b == doctest::Approx(4.0).epsilon(0.02));
  }
  CHECK_THROWS(surface_limit_check(SurfaceModel::spherical, Rescaling::eta, 0.1, 10));
  CHECK_THROWS(surface_limit_check(SurfaceModel::anti_de_sitter, Rescaling::gamma, 0.1, 10));
}

TEST_CASE("gamma limits preserve the chart and act as Euclidean isometries") {
  const FamilyRecord& f = make_family("oct_collapse");
  for (const auto& w : f.walls) {
    IsometryPath path = reflection_path(w, [&f](int s) { return f.form_for_side(s); });
    Eigen::MatrixXd m = limit_conjugated_isometry(path, Rescaling::gamma, Side::pos).matrix();
    CHECK(m.row(0).tail(3).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::Matrix3d lin = m.bottomRightCorner(3, 3) / m(0, 0);
    CHECK((lin.transpose() * lin - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-8);
  }
}
