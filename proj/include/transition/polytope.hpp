#pragma once

// Finite intersections of half-spaces in the projective sphere: vertices,
// adjacency, dihedral angles, distances, sections and Gram comparison.

#include "transition/forms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace transition {

class Polytope {
 public:
  /// Validates that the interior point is strictly inside every wall and that
  /// walls are pairwise distinct. Labels default to w0, w1, ...
  Polytope(QuadraticForm form, std::vector<DualHalfSpace> walls, std::vector<std::string> labels = {},
           std::optional<ProjectivePoint> interior = std::nullopt);

  const QuadraticForm& form() const { return form_; }
  const std::vector<DualHalfSpace>& walls() const { return walls_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const ProjectivePoint& interior() const { return interior_; }
  /// Dimension n of the polytope; walls have n + 1 coefficients.
  int dim() const { return form_.dim(); }
  int size() const { return static_cast<int>(walls_.size()); }
  /// Index of a wall label; throws if absent.
  int index_of(const std::string& label) const;
  const DualHalfSpace& wall(const std::string& label) const { return walls_[static_cast<std::size_t>(index_of(label))]; }

 private:
  QuadraticForm form_;
  std::vector<DualHalfSpace> walls_;
  std::vector<std::string> labels_;
  ProjectivePoint interior_;
};

/// Walls as exact Q(sqrt 2) vectors; used by exact-mode checks.
struct ExactPolytope {
  QuadraticForm form;
  std::vector<ExactVec> walls;
  std::vector<std::string> labels;
};

enum class VertexKind { finite, ideal, exterior };
std::string to_string(VertexKind k);

struct Vertex {
  ProjectivePoint point;
  VertexKind kind = VertexKind::finite;
  /// Indices of the walls vanishing at the vertex.
  std::vector<int> incident;
  /// Largest |alpha(x)| over incident walls (unit max-norm scaling).
  double residual = 0.0;
};

/// Finite vertices have q < 0 (x0 > 0 in the Euclidean chart; every vertex
/// in spherical geometry), ideal vertices q = 0 and exterior ones q > 0.
struct VertexSet {
  std::vector<Vertex> finite;
  std::vector<Vertex> ideal;
  std::vector<Vertex> exterior;

  std::vector<Vertex> all() const;
  std::size_t count() const { return finite.size() + ideal.size() + exterior.size(); }
};

struct ExactVertex {
  ExactVec point;
  VertexKind kind = VertexKind::finite;
  std::vector<int> incident;
};

struct ExactVertexSet {
  std::vector<ExactVertex> finite;
  std::vector<ExactVertex> ideal;
  std::vector<ExactVertex> exterior;

  std::vector<ExactVertex> all() const;
  std::size_t count() const { return finite.size() + ideal.size() + exterior.size(); }
};

/// Solves every n-subset of wall equations and keeps the feasible rays.
/// Throws "non-simple degenerate configuration" when the walls do not cut a
/// pointed cone (so some face carries no vertex).
VertexSet enumerate_vertices(const Polytope& p, double tol = default_tol());
ExactVertexSet enumerate_vertices_exact(const ExactPolytope& p);

using WallPair = std::pair<int, int>;

/// Wall pairs whose common vertices span a codimension-2 face.
std::vector<WallPair> adjacency(const Polytope& p, const VertexSet& v, double tol = default_tol());
std::vector<WallPair> adjacency_exact(const ExactPolytope& p, const ExactVertexSet& v);

struct DihedralAngle {
  enum class Kind { angle, ultraparallel, asymptotically_parallel, self, no_riemannian_angle };
  Kind kind = Kind::angle;
  /// The angle in (0, pi) or the distance for ultraparallel walls.
  double value = 0.0;
  /// Normalized pairing q*(a,b) / sqrt(|q*(a,a) q*(b,b)|).
  double cosine = 0.0;
  /// Raw pairing q*(a,b) of the unit max-norm representatives.
  double invariant = 0.0;
};
std::string to_string(DihedralAngle::Kind k);

DihedralAngle dihedral_angle(const QuadraticForm& q, const DualHalfSpace& a, const DualHalfSpace& b,
                             double tol = default_tol());

/// Hyperbolic distance arccosh|c| between ultraparallel walls.
double wall_distance(const QuadraticForm& q, const DualHalfSpace& a, const DualHalfSpace& b,
                     double tol = default_tol());

/// Independent estimate of wall_distance: minimizes the distance between
/// points of the two hyperplanes, each parametrized by the exponential map
/// of the hyperboloid, with seeded multi-start gradient descent.
double wall_distance_oracle(const QuadraticForm& q, const DualHalfSpace& a, const DualHalfSpace& b,
                            std::uint64_t seed = 0);

/// Timelike separation arccos(c) between two walls with q* < 0 in
/// anti-de Sitter space (both boundary planes spacelike).
double timelike_separation(const QuadraticForm& q, const DualHalfSpace& a, const DualHalfSpace& b,
                           double tol = default_tol());

/// A q-orthonormal basis of ker h. signs[k] = q(basis[k], basis[k]).
struct HyperplaneBasis {
  std::vector<Eigen::VectorXd> basis;
  std::vector<int> signs;
};
HyperplaneBasis hyperplane_basis(const QuadraticForm& q, const DualHalfSpace& h, double tol = default_tol());

/// P intersected with ker h, expressed in hyperplane_basis(q, h) with the
/// induced form. Restrictions that vanish, repeat, or do not support a facet
/// of the section are dropped; labels are kept.
Polytope cross_section(const Polytope& p, const DualHalfSpace& h, double tol = default_tol());

/// Normalized Gram matrix q*(a_i, a_j) / sqrt(|q*(a_i,a_i) q*(a_j,a_j)|).
Eigen::MatrixXd normalized_gram(const Polytope& p);

/// A permutation perm with gram(P)(i,j) = gram(Q)(perm[i], perm[j]) within
/// tol, found by pruned backtracking; nullopt if none exists.
std::optional<std::vector<int>> gram_compare(const Polytope& p, const Polytope& q, double tol = 1e-9);

}  // namespace transition
