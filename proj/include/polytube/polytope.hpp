#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace polytube {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class VPolytope;

// Convex polytope in facet form, {y : A (y - c) <= b}. The center offset c
// exists so scaled templates Poly(A, m*b, c) keep their anchor point; most
// operations work on the folded form {y : A y <= b + A c}.
class HPolytope {
 public:
  HPolytope(Matrix a, Vector b);
  HPolytope(Matrix a, Vector b, Vector c);

  static HPolytope empty(int dim);
  static HPolytope box(const Vector& lo, const Vector& hi);
  static HPolytope cube(int dim, double half_width);
  static HPolytope singleton(const Vector& point);

  int dim() const { return dim_; }
  int num_facets() const { return static_cast<int>(b_.size()); }

  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  const Vector& center() const { return c_; }

  // Right-hand side with the center folded in: {y : A y <= folded_b()}.
  Vector folded_b() const { return b_ + a_ * c_; }

  bool contains(const Vector& y, double tol = 1e-9) const;
  // Signed violation: max_i (a_i'y - b_i) over unit-normalized rows; negative
  // inside, positive outside.
  double violation(const Vector& y) const;

  bool is_empty(double tol = 1e-9) const;  // one feasibility LP
  bool flagged_empty() const { return flagged_empty_; }

  double support(const Vector& direction) const;  // -inf when empty
  Vector support_point(const Vector& direction) const;

  bool is_bounded() const;
  // Componentwise min/max; throws UnboundedPolytope.
  std::pair<Vector, Vector> bounding_box() const;

  // Largest inscribed ball; returns center (empty optional when empty set).
  std::optional<Vector> chebyshev_center() const;

  // Unit rows, duplicates merged, redundant facets removed, emptiness
  // decided, center folded to zero. Idempotent.
  HPolytope normalized() const;

 private:
  HPolytope() = default;

  int dim_ = 0;
  Matrix a_;   // q x n
  Vector b_;   // q
  Vector c_;   // n
  bool flagged_empty_ = false;
};

// Convex polytope as the hull of finitely many points. An empty vertex list
// encodes the empty set.
class VPolytope {
 public:
  // Vertices are the rows of `vertices`.
  VPolytope(Matrix vertices, int dim);
  explicit VPolytope(Matrix vertices);

  static VPolytope empty(int dim);
  static VPolytope singleton(const Vector& point);

  int dim() const { return dim_; }
  int num_vertices() const { return static_cast<int>(vertices_.rows()); }
  const Matrix& vertices() const { return vertices_; }
  Vector vertex(int i) const { return vertices_.row(i); }

  bool is_empty() const { return vertices_.rows() == 0; }
  bool contains(const Vector& y, double tol = 1e-9) const;  // one LP
  double support(const Vector& direction) const;            // -inf when empty
  Vector support_point(const Vector& direction) const;

  // Duplicates removed and non-extreme points dropped. Idempotent.
  VPolytope normalized() const;

 private:
  int dim_ = 0;
  Matrix vertices_;  // v x n
};

// --- Representation conversion (vertex/facet enumeration) ------------------

inline constexpr int kDefaultDimensionCap = 6;

// Vertex enumeration of a bounded H-polytope by incremental halfspace
// insertion. Throws UnboundedPolytope / DimensionCapExceeded.
VPolytope to_vrep(const HPolytope& p, int dim_cap = kDefaultDimensionCap);

// Facet enumeration of a V-polytope via the polar dual; lower-dimensional
// hulls get equality facet pairs for the affine-hull complement.
HPolytope to_hrep(const VPolytope& p, int dim_cap = kDefaultDimensionCap);

// --- Set operations ---------------------------------------------------------

// {M x + t : x in P}. H-rep requires square invertible M; the condition
// number of M is written to *cond when given.
HPolytope affine_map(const HPolytope& p, const Matrix& m, const Vector& t,
                     double* cond = nullptr);
VPolytope affine_map(const VPolytope& p, const Matrix& m, const Vector& t);

// {x : M x in P}, exact row transform.
HPolytope preimage_under_linear(const HPolytope& p, const Matrix& m);

VPolytope minkowski_sum(const VPolytope& p, const VPolytope& q);

class Ellipsoid;
HPolytope pontryagin_diff(const HPolytope& p, const HPolytope& q);
HPolytope pontryagin_diff(const HPolytope& p, const VPolytope& q);
HPolytope pontryagin_diff(const HPolytope& p, const Ellipsoid& q);

HPolytope intersect(const HPolytope& p, const HPolytope& q);

VPolytope convex_hull(const std::vector<VPolytope>& parts);

// Substitutes fixed coordinate values, returning the cross-section in the
// remaining coordinates (ordered as in the original).
HPolytope slice(const HPolytope& p, const std::vector<int>& coords,
                const std::vector<double>& values);

}  // namespace polytube
