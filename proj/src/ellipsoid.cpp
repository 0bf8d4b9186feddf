#include "polytube/ellipsoid.hpp"

#include <cmath>
#include <random>

#include "polytube/errors.hpp"
#include "polytube/lp.hpp"

namespace polytube {

Ellipsoid::Ellipsoid(Vector center, Matrix shape, double radius_sq)
    : center_(std::move(center)),
      shape_(std::move(shape)),
      radius_sq_(radius_sq) {
  const int n = dim();
  if (shape_.rows() != n || shape_.cols() != n)
    throw DimensionMismatch("Ellipsoid: shape matrix size vs center");
  if ((shape_ - shape_.transpose()).lpNorm<Eigen::Infinity>() > 1e-9)
    throw Error("Ellipsoid: shape matrix not symmetric");
  shape_ = 0.5 * (shape_ + shape_.transpose());
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(shape_);
  if (eig.eigenvalues().minCoeff() <= 0.0)
    throw Error("Ellipsoid: shape matrix not positive definite");
  if (radius_sq_ < 0.0) throw Error("Ellipsoid: negative squared radius");
  shape_inv_ = eig.operatorInverseSqrt() * eig.operatorInverseSqrt();
}

bool Ellipsoid::contains(const Vector& y, double tol) const {
  if (y.size() != dim()) throw DimensionMismatch("Ellipsoid::contains");
  const Vector d = y - center_;
  return d.dot(shape_inv_ * d) <= radius_sq_ + tol;
}

double Ellipsoid::support(const Vector& direction) const {
  if (direction.size() != dim()) throw DimensionMismatch("Ellipsoid::support");
  return direction.dot(center_) +
         std::sqrt(radius_sq_ * direction.dot(shape_ * direction));
}

Vector Ellipsoid::support_point(const Vector& direction) const {
  if (direction.size() != dim())
    throw DimensionMismatch("Ellipsoid::support_point");
  const double s = std::sqrt(radius_sq_ * direction.dot(shape_ * direction));
  if (s <= 0.0) return center_;
  return center_ + (radius_sq_ / s) * (shape_ * direction);
}

DirectionSet::DirectionSet(Matrix dirs, unsigned seed)
    : directions_(std::move(dirs)), seed_(seed) {
  validate();
}

DirectionSet DirectionSet::equiangular(int count) {
  if (count < 3) throw DegenerateDirections("equiangular: need >= 3");
  Matrix d(count, 2);
  for (int i = 0; i < count; ++i) {
    const double theta = 2.0 * M_PI * i / count;
    d(i, 0) = std::cos(theta);
    d(i, 1) = std::sin(theta);
  }
  return DirectionSet(std::move(d), 0);
}

DirectionSet DirectionSet::random(int dim, int count, unsigned seed) {
  if (count < dim + 1)
    throw DegenerateDirections("random directions: need >= n+1");
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int axes = 2 * dim;
  Matrix d(axes + count, dim);
  d.topRows(dim) = Matrix::Identity(dim, dim);
  d.middleRows(dim, dim) = -Matrix::Identity(dim, dim);
  for (int i = 0; i < count; ++i) {
    Vector v(dim);
    do {
      for (int j = 0; j < dim; ++j) v(j) = gauss(rng);
    } while (v.norm() < 1e-6);
    d.row(axes + i) = v.transpose() / v.norm();
  }
  return DirectionSet(std::move(d), seed);
}

DirectionSet DirectionSet::from_rows(Matrix directions, unsigned seed) {
  return DirectionSet(std::move(directions), seed);
}

void DirectionSet::validate() const {
  const int n = dim();
  const int m = count();
  if (m < n + 1)
    throw DegenerateDirections("DirectionSet: fewer than n+1 directions");
  for (int i = 0; i < m; ++i) {
    if (std::abs(directions_.row(i).norm() - 1.0) > 1e-12)
      throw DegenerateDirections("DirectionSet: non-unit direction");
  }
  // Positive span check: max t s.t. sum lambda_i d_i = 0, sum lambda_i = 1,
  // lambda_i >= t. Directions span positively iff the optimum is > 0.
  LpProblem prob;
  prob.c = Vector::Zero(m + 1);
  prob.c(m) = 1.0;
  prob.a_eq = Matrix(n + 1, m + 1);
  prob.a_eq.setZero();
  prob.a_eq.block(0, 0, n, m) = directions_.transpose();
  prob.a_eq.block(n, 0, 1, m).setOnes();
  prob.b_eq = Vector::Zero(n + 1);
  prob.b_eq(n) = 1.0;
  prob.a_ub = Matrix(m, m + 1);
  prob.a_ub.leftCols(m) = -Matrix::Identity(m, m);
  prob.a_ub.rightCols(1).setOnes();
  prob.b_ub = Vector::Zero(m);
  const LpResult r = solve_lp(prob);
  if (r.status != LpStatus::Optimal || r.value <= 0.0)
    throw DegenerateDirections("DirectionSet: directions do not span R^n positively");
}

HPolytope outer_polytope(const Ellipsoid& e, const DirectionSet& d) {
  if (d.dim() != e.dim())
    throw DimensionMismatch("outer_polytope: direction dimension");
  const int m = d.count();
  Vector b(m);
  for (int i = 0; i < m; ++i)
    b(i) = e.support(d.directions().row(i).transpose()) -
           d.directions().row(i).dot(e.center());
  return HPolytope(d.directions(), std::move(b), e.center()).normalized();
}

VPolytope inner_polytope(const Ellipsoid& e, const DirectionSet& d) {
  if (d.dim() != e.dim())
    throw DimensionMismatch("inner_polytope: direction dimension");
  Matrix pts(d.count(), e.dim());
  for (int i = 0; i < d.count(); ++i)
    pts.row(i) =
        e.support_point(d.directions().row(i).transpose()).transpose();
  return VPolytope(std::move(pts), e.dim()).normalized();
}

}  // namespace polytube
