#pragma once

// The acceptance checks, one function per criterion, plus the independent
// reference data they compare against.

#include "transition/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace transition {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
};

/// Runs criteria 1..11 in order.
std::vector<CriterionResult> run_suite(const SuiteOptions& opt = {});
/// Runs one criterion; throws std::out_of_range for ids outside 1..11.
CriterionResult run_criterion(int id, const SuiteOptions& opt = {});

/// Reference wall coefficients, typed in independently of the family data
/// file and evaluated in Q(sqrt 2) at a rational t, so the two can be compared.
struct GoldenTable {
  std::string family;
  std::function<std::vector<ExactVec>(const Rational&)> walls;
  /// Parameter values at which every entry lies in Q(sqrt 2).
  std::vector<Rational> sample_t;
};
const std::vector<GoldenTable>& golden_tables();

/// Positive multiple test for exact vectors.
bool exact_same_ray(const ExactVec& a, const ExactVec& b);

/// Distance in the hyperbolic space of q between the geodesics spanned by the
/// 2-planes with bases (columns) u and v, by nested one-dimensional
/// minimization along both lines.
double geodesic_line_distance(const QuadraticForm& q, const Eigen::MatrixXd& u, const Eigen::MatrixXd& v);

/// Distance between the lower edge (L1, L3) and the upper edge (L2, L4) of
/// oct_collapse at t.
double collapsing_edge_distance(double t);

}  // namespace transition
