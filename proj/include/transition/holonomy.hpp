#pragma once

// Words in the face pairings of a scheme, their holonomy, edge-cycle angle
// sums and the detection of cone singularities.

#include "transition/gallery.hpp"
#include "transition/halfpipe.hpp"
#include "transition/transition.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace transition {

/// A word in pairing labels, e.g. "LR TB LR^-1 TB^-1".
struct LoopWord {
  struct Letter {
    std::string label;
    int exponent = 1;  // +1 or -1
  };
  std::vector<Letter> letters;

  static LoopWord parse(std::string_view text);
  std::string str() const;
  LoopWord inverse() const;
  bool empty() const { return letters.empty(); }
};
LoopWord operator*(const LoopWord& a, const LoopWord& b);
/// a b a^-1 b^-1.
LoopWord commutator(const LoopWord& a, const LoopWord& b);

/// Product of the recipe matrices, leftmost letter outermost.
ProjectiveMap holonomy(const LoopWord& w, const PairingScheme& s, double t);
ProjectiveMap holonomy(const LoopWord& w, const PairingScheme& s, const Polytope& p);

/// Product of the one-sided rescaled limits of the letters' recipes.
ProjectiveMap limit_holonomy(const LoopWord& w, const PairingScheme& s, Rescaling r, Side side);

/// Whether consecutive entries (cyclically) share a wall or are related by a
/// pairing of the scheme.
bool cycle_is_closed(const EdgeCycle& c, const PairingScheme& s);

/// Sum of the dihedral angles around the cycle; an asymptotically parallel
/// pair (ideal edge) contributes 0. Throws std::domain_error when an angle is
/// undefined.
double cone_angle(const EdgeCycle& c, const PairingScheme& s, double t);

struct Singularity {
  enum class Kind { trivial, cone, other };
  Kind kind = Kind::other;
  /// Rotation angle in [0, pi] for Riemannian cones. It agrees with the cone
  /// angle up to sign modulo 2 pi.
  double angle = 0.0;
  /// Half-pipe classification when the geometry is half-pipe.
  std::optional<HpClassification> hp;
  std::string descriptor;
};
std::string to_string(Singularity::Kind k);

/// Classifies a holonomy element of the given geometry. Half-pipe elements go
/// through classify_hp; the reported magnitude is its sqrt(q) convention.
Singularity detect_singularity(const ProjectiveMap& h, Geometry g, double tol = 1e-9);

}  // namespace transition
