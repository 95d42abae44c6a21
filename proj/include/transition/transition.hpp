#pragma once

// Rescaling maps and limits of rescaled objects as the parameter goes to 0.

#include "transition/forms.hpp"
#include "transition/param.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace transition {

/// gamma_t = diag(1, 1/|t|, ..., 1/|t|) or eta_t = diag(1, ..., 1, 1/|t|)
/// on R^{size}. The absolute value keeps both sides of the transition in the
/// same affine chart; the dual action agrees with dual_rescale.
struct RescalingMap {
  Rescaling kind = Rescaling::gamma;
  double t = 1.0;
  int size = 3;

  RescalingMap(Rescaling k, double t_value, int size_value);
  Eigen::MatrixXd matrix() const;
  Eigen::MatrixXd inverse_matrix() const;
  ProjectiveMap map() const { return ProjectiveMap(matrix()); }
  /// Power of |t| by which coordinate i is divided.
  int weight(int i) const;
};

ProjectivePoint rescale_point(const RescalingMap& r, const ProjectivePoint& x);

/// A one-parameter family of maps t -> M(t), sampled numerically, optionally
/// with a closed form as the reflection in a parametrized wall.
struct IsometryPath {
  std::function<Eigen::MatrixXd(double)> sample;
  /// Set for reflection paths: the wall, and the form on each side (+1/-1).
  std::optional<HalfSpaceFamily> wall;
  std::function<QuadraticForm(int)> form_for_side;
  std::string description;
};

/// Reflection in a parametrized wall; the form depends on the sign of t.
IsometryPath reflection_path(const HalfSpaceFamily& wall, std::function<QuadraticForm(int)> form_for_side);
/// A sampled path with no closed form.
IsometryPath sampled_path(std::function<Eigen::MatrixXd(double)> sample, std::string description);

struct IsometryLimit {
  /// Normalized to |det| = 1 with a positive (0,0) entry (first nonzero
  /// entry when (0,0) vanishes).
  ProjectiveMap map;
  /// Present when the limit came from the closed form.
  std::optional<ExactMat> exact;
  bool symbolic = false;
  /// Successive differences of the canonical samples at 1e-3, 1e-4, 1e-5.
  double diff_coarse = 0.0;
  double diff_fine = 0.0;
  /// Distance between the numeric extrapolation and the reported limit.
  double numeric_gap = 0.0;
};

/// lim r(t) p(t) r(t)^{-1} as t -> 0 from one side, projectively.
/// Throws "no transitional limit" when the samples do not settle or the
/// limit is singular.
IsometryLimit limit_conjugated_isometry_detailed(const IsometryPath& p, Rescaling r, Side side);
inline ProjectiveMap limit_conjugated_isometry(const IsometryPath& p, Rescaling r, Side side) {
  return limit_conjugated_isometry_detailed(p, r, side).map;
}

/// Positive rescaling to |det| = 1 with the sign convention above.
Eigen::MatrixXd normalize_unimodular(const Eigen::MatrixXd& m);

enum class SurfaceModel { hyperbolic, spherical, anti_de_sitter };
std::string to_string(SurfaceModel m);
SurfaceModel surface_model_from_string(const std::string& s);

/// Largest Euclidean distance from seeded samples of the rescaled model
/// surface (window [-1, 1] in the stretched coordinates) to the limit locus:
/// the plane x0 = 1 for gamma, the cylinder -x0^2 + x1^2 + ... = -1 for eta.
/// Spherical/eta and anti-de Sitter/gamma are refused.
double surface_limit_check(SurfaceModel model, Rescaling r, double t, int samples, int dim = 2,
                           std::uint64_t seed = 0);

}  // namespace transition
