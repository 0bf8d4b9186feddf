#pragma once

#include <Eigen/Dense>

#include "polytube/ellipsoid.hpp"
#include "polytube/polytope.hpp"
#include "polytube/stats.hpp"

namespace polytube {

// I.i.d. Gaussian process disturbance w_k ~ N(mean, cov).
class GaussianDisturbance {
 public:
  GaussianDisturbance(Vector mean, Matrix cov);

  int dim() const { return static_cast<int>(mean_.size()); }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }
  const Matrix& chol_lower() const { return chol_lower_; }

 private:
  Vector mean_;
  Matrix cov_;
  Matrix chol_lower_;
};

enum class BoundedSetKind { Ellipsoid, PolyTemplate };

// Request for a bounded disturbance set holding probability mass
// gamma^(1/horizon_steps). PolyTemplate scales Poly(A, m*b0, c); the
// template must satisfy Poly(A, 0) = {0}.
struct BoundedSetSpec {
  BoundedSetKind kind = BoundedSetKind::Ellipsoid;
  Matrix a;     // PolyTemplate only
  Vector b0;    // PolyTemplate only
  Vector c;     // PolyTemplate only
  double gamma = 0.0;
  int horizon_steps = 1;
};

// True when {y : A y <= 0} = {0} (required of polytope templates).
bool template_pins_origin(const Matrix& a);

// Gaussian confidence ellipsoid Q = {y : (y-mu)' Sigma^-1 (y-mu) <= R^2}
// with R^2 = chi2_quantile(n, gamma^(1/steps)).
Ellipsoid gaussian_level_ellipsoid(const GaussianDisturbance& g, double gamma,
                                   int steps);

struct ProbabilityEstimate {
  double value = 0.0;
  double std_error = 0.0;  // zero on the exact path
  bool exact = false;
  long samples = 0;
};

// P(w in p). Exact product of 1-D normal CDF differences when the polytope
// is an axis-aligned box in whitened coordinates; otherwise randomized
// quasi-Monte-Carlo (Halton points with seeded random shifts, mapped through
// the Cholesky factor). Deterministic given the seed.
ProbabilityEstimate polytope_probability(const GaussianDisturbance& g,
                                         const HPolytope& p,
                                         long samples = 1L << 16,
                                         unsigned seed = 0);

struct BisectionResult {
  HPolytope set = HPolytope::empty(0);
  double scale = 0.0;        // multiplier m on the template offsets
  double achieved = 0.0;     // P(w in set)
  double target = 0.0;       // gamma^(1/steps)
  double std_error = 0.0;
  bool exact_path = false;
  int iterations = 0;
};

// Expansion-then-bisection on the offset scale until the membership
// probability is within `tol` of gamma^(1/steps). On the QMC path the
// effective tolerance is max(tol, 3 * std_error).
BisectionResult bisect_bounded_set(const GaussianDisturbance& g,
                                   const BoundedSetSpec& spec,
                                   double tol = 1e-6, int max_iter = 200,
                                   long samples = 1L << 16, unsigned seed = 0);

}  // namespace polytube
