#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "polytube/polytope.hpp"

// Shared generators and independent geometric helpers for tests. Everything
// here is deliberately naive (brute force) so it cannot share a failure mode
// with the library code it checks.

namespace testsupport {

using polytube::HPolytope;
using polytube::Matrix;
using polytube::Vector;
using polytube::VPolytope;

inline Vector random_direction(std::mt19937& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
  } while (v.norm() < 1e-9);
  return v / v.norm();
}

// Random polygon from points on a noisy circle; at least `verts` candidate
// points, returned un-normalized (callers decide).
inline VPolytope random_polygon(std::mt19937& rng, int verts) {
  std::uniform_real_distribution<double> radius(0.4, 1.6);
  std::uniform_real_distribution<double> jitter(0.0, 2.0 * M_PI / verts);
  Matrix pts(verts, 2);
  for (int i = 0; i < verts; ++i) {
    const double theta = 2.0 * M_PI * i / verts + jitter(rng);
    const double r = radius(rng);
    pts(i, 0) = r * std::cos(theta);
    pts(i, 1) = r * std::sin(theta);
  }
  return VPolytope(std::move(pts), 2);
}

// Bounded nonempty H-polytope: a box plus random cuts that keep a ball
// around the origin inside.
inline HPolytope random_hpolytope(std::mt19937& rng, int dim, int extra_rows) {
  std::uniform_real_distribution<double> offset(0.4, 1.4);
  const int q = 2 * dim + extra_rows;
  Matrix a(q, dim);
  Vector b(q);
  a.topRows(dim) = Matrix::Identity(dim, dim);
  a.middleRows(dim, dim) = -Matrix::Identity(dim, dim);
  b.head(2 * dim).setConstant(1.5);
  for (int i = 0; i < extra_rows; ++i) {
    a.row(2 * dim + i) = random_direction(rng, dim).transpose();
    b(2 * dim + i) = offset(rng);
  }
  return HPolytope(std::move(a), std::move(b));
}

// Random point of the hull as a convex combination with random weights.
inline Vector sample_in_hull(std::mt19937& rng, const VPolytope& p) {
  std::exponential_distribution<double> expo(1.0);
  const int v = p.num_vertices();
  Vector w(v);
  for (int i = 0; i < v; ++i) w(i) = expo(rng);
  w /= w.sum();
  return p.vertices().transpose() * w;
}

// Shoelace area of a 2-D V-polytope (vertices in any order).
inline double polygon_area(const VPolytope& p) {
  const int v = p.num_vertices();
  if (v < 3) return 0.0;
  const Vector c = p.vertices().colwise().mean();
  std::vector<int> order(v);
  for (int i = 0; i < v; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const double ai = std::atan2(p.vertices()(i, 1) - c(1), p.vertices()(i, 0) - c(0));
    const double aj = std::atan2(p.vertices()(j, 1) - c(1), p.vertices()(j, 0) - c(0));
    return ai < aj;
  });
  double area = 0.0;
  for (int i = 0; i < v; ++i) {
    const auto& p1 = p.vertices().row(order[i]);
    const auto& p2 = p.vertices().row(order[(i + 1) % v]);
    area += p1(0) * p2(1) - p2(0) * p1(1);
  }
  return 0.5 * std::abs(area);
}

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (const double x : xs) v(i++) = x;
  return v;
}

}  // namespace testsupport
