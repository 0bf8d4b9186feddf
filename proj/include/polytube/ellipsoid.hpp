#pragma once

#include <Eigen/Dense>

#include "polytube/polytope.hpp"

namespace polytube {

// {y : (y - mu)' Sigma^-1 (y - mu) <= R^2} with Sigma symmetric positive
// definite. R^2 = 0 is the point {mu}.
class Ellipsoid {
 public:
  Ellipsoid(Vector center, Matrix shape, double radius_sq);

  int dim() const { return static_cast<int>(center_.size()); }
  const Vector& center() const { return center_; }
  const Matrix& shape() const { return shape_; }
  double radius_sq() const { return radius_sq_; }

  bool contains(const Vector& y, double tol = 1e-9) const;
  double support(const Vector& direction) const;
  Vector support_point(const Vector& direction) const;

 private:
  Vector center_;
  Matrix shape_;
  Matrix shape_inv_;
  double radius_sq_;
};

// A set of unit directions that positively spans R^n. Used to sandwich
// ellipsoids between polytopes.
class DirectionSet {
 public:
  // m equiangular unit vectors in the plane (n = 2).
  static DirectionSet equiangular(int count);
  // Seeded Gaussian-normalized directions for n > 2 (works for any n >= 1);
  // the +/- coordinate axes are always included so the set positively spans.
  static DirectionSet random(int dim, int count, unsigned seed);
  // Validates caller-supplied rows.
  static DirectionSet from_rows(Matrix directions, unsigned seed = 0);

  int dim() const { return static_cast<int>(directions_.cols()); }
  int count() const { return static_cast<int>(directions_.rows()); }
  const Matrix& directions() const { return directions_; }
  unsigned seed() const { return seed_; }

 private:
  DirectionSet(Matrix dirs, unsigned seed);
  void validate() const;

  Matrix directions_;  // m x n, unit rows
  unsigned seed_ = 0;
};

// Facets tangent to E along each direction; contains E.
HPolytope outer_polytope(const Ellipsoid& e, const DirectionSet& d);
// Hull of the support points; contained in E.
VPolytope inner_polytope(const Ellipsoid& e, const DirectionSet& d);

}  // namespace polytube
