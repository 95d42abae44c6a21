#pragma once

// Named polytope families and face-pairing schemes.

#include "transition/param.hpp"
#include "transition/polytope.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace transition {

/// Raised for names absent from a catalog.
class UnknownName : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A coordinate symmetry: a product of sign flips and coordinate swaps.
struct Symmetry {
  std::string word;
  Eigen::MatrixXd matrix;
};
Symmetry parse_symmetry(const std::string& word, int size);

struct FamilyRecord {
  std::string name;
  int dim = 2;
  Domain domain = Domain::everything();
  Geometry geometry_pos = Geometry::hyperbolic;
  Geometry geometry_zero = Geometry::hyperbolic;
  Geometry geometry_neg = Geometry::hyperbolic;
  std::string source;
  std::vector<std::string> labels;
  /// Symbolic walls; empty for families computed by `evaluator`.
  std::vector<HalfSpaceFamily> walls;
  std::function<std::vector<Eigen::VectorXd>(double)> evaluator;
  std::vector<std::pair<std::string, std::string>> orthogonal;
  bool right_angled = false;
  std::vector<std::string> symmetries;
  /// Pairing schemes built on this family.
  std::vector<std::string> pairings;

  bool symbolic() const { return !walls.empty(); }
  /// True when the geometry at t = 0 differs from the t > 0 side; such
  /// families collapse at 0 and are only studied through limits there.
  bool transitional() const { return geometry_zero != geometry_pos; }
  Geometry geometry_at(double t) const;
  QuadraticForm form_at(double t) const;
  /// Form used on the side of sign `side` (+1 or -1).
  QuadraticForm form_for_side(int side) const;
  const HalfSpaceFamily& wall(const std::string& label) const;

  /// The member at t. Throws std::domain_error outside the domain or at the
  /// transition point.
  Polytope at(double t) const;
  ExactPolytope exact_at(const Rational& t) const;
};

/// Parses the family data format; errors carry line numbers.
std::vector<FamilyRecord> parse_family_data(std::string_view text);
/// Contents of data/families.txt as compiled into the library.
std::string_view family_data_text();

const std::vector<FamilyRecord>& catalog();
const FamilyRecord& make_family(const std::string& name);

/// Vertices p_i(t) = cosh(t) e0 + sinh(t) v_i (cos/sin for the sphere),
/// v_i = (0, +-r2/2, +-r2/2), listed counterclockwise from (+, +).
enum class Curvature { hyp, sph };
std::vector<ProjectivePoint> exp_deform_vertices(double t, Curvature c);

struct RecipeStep {
  enum class Kind { flip, reflect, matrix };
  Kind kind = Kind::flip;
  int index = 0;
  std::string wall;
  Eigen::MatrixXd fixed;
  std::string str() const;
};

/// A face pairing. Steps are written as a matrix product, so the last step
/// acts first. Copy ids distinguish the two copies of a doubled polytope.
struct Pairing {
  std::string label;
  std::string source;
  std::string target;
  int source_copy = 0;
  int target_copy = 0;
  std::vector<RecipeStep> steps;
  std::string recipe_text() const;
};

/// Codimension-2 faces around one edge (vertex, in dimension 2), as
/// (copy id, wall label, wall label) triples in cyclic order.
struct EdgeCycle {
  struct Entry {
    int copy = 0;
    std::string wall_a;
    std::string wall_b;
  };
  std::string label;
  std::vector<Entry> entries;
};

struct PairingScheme {
  std::string name;
  std::string family;
  std::string description;
  std::vector<Pairing> pairings;
  std::vector<EdgeCycle> cycles;
  std::string default_loop;

  const Pairing& pairing(const std::string& label) const;
  const EdgeCycle& cycle(const std::string& label) const;
  Eigen::MatrixXd matrix(const Pairing& p, const Polytope& poly) const;
  Eigen::MatrixXd matrix(const std::string& label, double t) const;
};

const std::vector<PairingScheme>& scheme_catalog();
const PairingScheme& pairing_scheme(const std::string& name);

struct RecipeCheck {
  std::string label;
  bool isometry = false;
  bool maps_source_to_target = false;
  double residual = 0.0;
  bool ok() const { return isometry && maps_source_to_target; }
};
/// Checks each recipe at t: an isometry of the form carrying the source wall
/// onto the target wall with the opposite orientation.
std::vector<RecipeCheck> validate_scheme(const PairingScheme& s, double t, double tol = default_tol());

}  // namespace transition
