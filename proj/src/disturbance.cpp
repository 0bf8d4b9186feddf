#include "polytube/disturbance.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "polytube/errors.hpp"
#include "polytube/lp.hpp"

namespace polytube {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Radical-inverse (van der Corput) value of index i in the given base.
double radical_inverse(long i, int base) {
  double inv = 1.0 / base;
  double scale = inv;
  double value = 0.0;
  while (i > 0) {
    value += (i % base) * scale;
    i /= base;
    scale *= inv;
  }
  return value;
}

constexpr int kHaltonBases[] = {2, 3, 5, 7, 11, 13, 17, 19};

}  // namespace

GaussianDisturbance::GaussianDisturbance(Vector mean, Matrix cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  const int n = dim();
  if (cov_.rows() != n || cov_.cols() != n)
    throw DimensionMismatch("GaussianDisturbance: covariance size");
  if ((cov_ - cov_.transpose()).lpNorm<Eigen::Infinity>() > 1e-12)
    throw Error("GaussianDisturbance: covariance not symmetric");
  const Eigen::LLT<Matrix> llt(cov_);
  if (llt.info() != Eigen::Success)
    throw Error("GaussianDisturbance: covariance not positive definite");
  chol_lower_ = llt.matrixL();
}

bool template_pins_origin(const Matrix& a) {
  // {y : A y <= 0} = {0} iff no coordinate direction admits a nonzero point;
  // the recession cone degenerates exactly when every support LP is 0.
  const int n = static_cast<int>(a.cols());
  const Vector zeros = Vector::Zero(a.rows());
  for (int j = 0; j < n; ++j) {
    for (const double sign : {1.0, -1.0}) {
      Vector d = Vector::Zero(n);
      d(j) = sign;
      const LpResult r = maximize_over_rows(d, a, zeros);
      if (r.status != LpStatus::Optimal || std::abs(r.value) > 1e-9)
        return false;
    }
  }
  return true;
}

Ellipsoid gaussian_level_ellipsoid(const GaussianDisturbance& g, double gamma,
                                   int steps) {
  if (gamma < 0.0 || gamma >= 1.0)
    throw InvalidProbability("gaussian_level_ellipsoid: gamma must be in [0,1)");
  if (steps < 1) throw Error("gaussian_level_ellipsoid: steps must be >= 1");
  const double level = std::pow(gamma, 1.0 / steps);
  return Ellipsoid(g.mean(), g.cov(), chi2_quantile(g.dim(), level));
}

ProbabilityEstimate polytope_probability(const GaussianDisturbance& g,
                                         const HPolytope& p, long samples,
                                         unsigned seed) {
  ProbabilityEstimate est;
  est.samples = samples;
  if (p.dim() != g.dim())
    throw DimensionMismatch("polytope_probability: dimensions");
  if (p.flagged_empty() || p.is_empty()) {
    est.exact = true;
    return est;
  }

  const int n = g.dim();
  // Whitened membership: w = mean + L z, so A(w - c) <= b becomes
  // (A L) z <= b + A(c - mean).
  const Matrix rows = p.a() * g.chol_lower();
  const Vector rhs = p.folded_b() - p.a() * g.mean();

  // Exact path: every whitened row touches a single coordinate.
  bool axis_aligned = true;
  Vector lo = Vector::Constant(n, -kInf);
  Vector hi = Vector::Constant(n, kInf);
  for (int i = 0; i < rows.rows() && axis_aligned; ++i) {
    int nonzero = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(rows(i, j)) > 1e-12) {
        if (nonzero >= 0) {
          axis_aligned = false;
          break;
        }
        nonzero = j;
      }
    }
    if (!axis_aligned) break;
    if (nonzero < 0) {
      if (rhs(i) < 0) {  // 0 <= negative: empty (normalize would have caught)
        est.exact = true;
        return est;
      }
      continue;
    }
    const double coef = rows(i, nonzero);
    const double bound = rhs(i) / coef;
    if (coef > 0)
      hi(nonzero) = std::min(hi(nonzero), bound);
    else
      lo(nonzero) = std::max(lo(nonzero), bound);
  }

  if (axis_aligned) {
    double prob = 1.0;
    for (int j = 0; j < n; ++j) {
      const double upper = std::isfinite(hi(j)) ? normal_cdf(hi(j)) : 1.0;
      const double lower = std::isfinite(lo(j)) ? normal_cdf(lo(j)) : 0.0;
      prob *= std::max(0.0, upper - lower);
    }
    est.value = prob;
    est.exact = true;
    return est;
  }

  // Randomized QMC: Halton points with Cranley-Patterson shifts, a few
  // independent replicates for a standard error.
  const int replicates = 8;
  const long per_rep = std::max<long>(1, samples / replicates);
  if (n > static_cast<int>(sizeof(kHaltonBases) / sizeof(int)))
    throw DimensionCapExceeded("polytope_probability: QMC dimension cap");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  Eigen::VectorXd means(replicates);
  Vector z(n);
  for (int r = 0; r < replicates; ++r) {
    Vector shift(n);
    for (int j = 0; j < n; ++j) shift(j) = unif(rng);
    long hits = 0;
    for (long i = 1; i <= per_rep; ++i) {
      for (int j = 0; j < n; ++j) {
        double u = radical_inverse(i, kHaltonBases[j]) + shift(j);
        if (u >= 1.0) u -= 1.0;
        u = std::min(std::max(u, 1e-15), 1.0 - 1e-15);
        z(j) = normal_quantile(u);
      }
      if (((rows * z - rhs).array() <= 0.0).all()) ++hits;
    }
    means(r) = static_cast<double>(hits) / static_cast<double>(per_rep);
  }
  est.value = means.mean();
  const double var =
      (means.array() - est.value).square().sum() / (replicates - 1);
  est.std_error = std::sqrt(var / replicates);
  est.samples = per_rep * replicates;
  return est;
}

BisectionResult bisect_bounded_set(const GaussianDisturbance& g,
                                   const BoundedSetSpec& spec, double tol,
                                   int max_iter, long samples, unsigned seed) {
  if (spec.kind != BoundedSetKind::PolyTemplate)
    throw InvalidTemplate("bisect_bounded_set: needs a polytope template");
  if (spec.gamma < 0.0 || spec.gamma > 1.0)
    throw InvalidProbability("bisect_bounded_set: gamma");
  if (spec.horizon_steps < 1)
    throw Error("bisect_bounded_set: horizon_steps must be >= 1");
  if (spec.a.cols() != g.dim() || spec.c.size() != g.dim() ||
      spec.a.rows() != spec.b0.size())
    throw DimensionMismatch("bisect_bounded_set: template sizes");
  if (!template_pins_origin(spec.a))
    throw InvalidTemplate("bisect_bounded_set: Poly(A, 0) != {0}");
  if (tol <= 0.0) throw Error("bisect_bounded_set: tol must be positive");

  BisectionResult out;
  out.target = std::pow(spec.gamma, 1.0 / spec.horizon_steps);

  const auto make = [&spec](double scale) {
    return HPolytope(spec.a, scale * spec.b0, spec.c);
  };
  const auto evaluate = [&](double scale) {
    return polytope_probability(g, make(scale), samples, seed);
  };

  if (spec.gamma == 0.0) {
    out.set = make(0.0);
    out.scale = 0.0;
    out.achieved = 0.0;
    out.exact_path = true;
    return out;
  }

  // Expansion until the template holds enough mass.
  double alpha = 1.0;
  ProbabilityEstimate p = evaluate(alpha);
  out.exact_path = p.exact;
  ++out.iterations;
  while (p.value < out.target) {
    alpha *= 2.0;
    if (alpha > 1e12)
      throw NoConvergence("bisect_bounded_set: expansion failed");
    p = evaluate(alpha);
    ++out.iterations;
  }

  double lo = (alpha == 1.0) ? 0.0 : alpha / 2.0;
  double hi = alpha;
  double mid = 0.5 * (lo + hi);
  p = evaluate(mid);
  ++out.iterations;
  const double eff_tol = p.exact ? tol : std::max(tol, 3.0 * p.std_error);
  while (std::abs(p.value - out.target) > eff_tol) {
    if (out.iterations >= max_iter)
      throw NoConvergence("bisect_bounded_set: iteration budget exhausted");
    if (p.value > out.target)
      hi = mid;
    else
      lo = mid;
    mid = 0.5 * (lo + hi);
    p = evaluate(mid);
    ++out.iterations;
  }

  out.set = make(mid);
  out.scale = mid;
  out.achieved = p.value;
  out.std_error = p.std_error;
  out.exact_path = p.exact;
  return out;
}

}  // namespace polytube
