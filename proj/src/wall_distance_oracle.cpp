#include "transition/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace transition {

namespace {

// Point of the hyperboloid inside ker(alpha): exp_{b0}(sum y_i b_i).
struct HyperplaneChart {
  Eigen::VectorXd origin;
  std::vector<Eigen::VectorXd> tangent;

  Eigen::VectorXd point(const Eigen::VectorXd& y) const {
    double r = y.norm();
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(origin.size());
    for (std::size_t i = 0; i < tangent.size(); ++i) dir += y[static_cast<Eigen::Index>(i)] * tangent[i];
    double shc = r < 1e-12 ? 1.0 : std::sinh(r) / r;
    return std::cosh(r) * origin + shc * dir;
  }
};

HyperplaneChart chart_for(const QuadraticForm& q, const DualHalfSpace& a) {
  HyperplaneBasis hb = hyperplane_basis(q, a);
  HyperplaneChart c;
  for (std::size_t k = 0; k < hb.basis.size(); ++k) {
    if (hb.signs[k] < 0) {
      c.origin = hb.basis[k][0] < 0 ? Eigen::VectorXd(-hb.basis[k]) : hb.basis[k];
    } else {
      c.tangent.push_back(hb.basis[k]);
    }
  }
  if (c.origin.size() == 0) throw std::domain_error("wall does not meet hyperbolic space");
  return c;
}

}  // namespace

double wall_distance_oracle(const QuadraticForm& q, const DualHalfSpace& a, const DualHalfSpace& b,
                            std::uint64_t seed) {
  if (q.is_degenerate() || q.geometry() != Geometry::hyperbolic) {
    throw std::domain_error("the distance oracle works in hyperbolic space only");
  }
  const HyperplaneChart ca = chart_for(q, a);
  const HyperplaneChart cb = chart_for(q, b);
  const int k = static_cast<int>(ca.tangent.size());

  auto f = [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd x = ca.point(z.head(k));
    Eigen::VectorXd y = cb.point(z.tail(k));
    return std::acosh(std::max(1.0, -pairing(q, x, y)));
  };
  auto grad = [&](const Eigen::VectorXd& z) {
    const double h = 1e-6;
    Eigen::VectorXd g(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      Eigen::VectorXd zp = z;
      Eigen::VectorXd zm = z;
      zp[i] += h;
      zm[i] -= h;
      g[i] = (f(zp) - f(zm)) / (2 * h);
    }
    return g;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 0.5);
  double best = std::numeric_limits<double>::infinity();
  for (int start = 0; start < 4; ++start) {
    Eigen::VectorXd z(2 * k);
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
    double fz = f(z);
    double step = 1.0;
    for (int iter = 0; iter < 20000; ++iter) {
      Eigen::VectorXd g = grad(z);
      double gn = g.squaredNorm();
      if (gn < 1e-24) break;
      // Armijo backtracking, starting from a slightly enlarged previous step.
      step = std::min(step * 2.0, 10.0);
      bool moved = false;
      while (step > 1e-16) {
        Eigen::VectorXd cand = z - step * g;
        double fc = f(cand);
        if (fc <= fz - 1e-4 * step * gn) {
          z = cand;
          fz = fc;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    best = std::min(best, fz);
  }
  return best;
}

}  // namespace transition
