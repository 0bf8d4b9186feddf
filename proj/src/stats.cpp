#include "polytube/stats.hpp"

#include <cmath>
#include <limits>

#include "polytube/errors.hpp"

namespace polytube {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

namespace {

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

// Acklam's rational approximation of the probit function (~1e-9), used as a
// Newton starting point.
double probit_seed(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw InvalidProbability("normal_quantile: p must lie in (0,1)");
  double x = probit_seed(p);
  for (int i = 0; i < 3; ++i) {
    const double err = normal_cdf(x) - p;
    const double dens = normal_pdf(x);
    if (dens <= 0.0) break;
    x -= err / dens;
  }
  return x;
}

double regularized_gamma_p(double a, double x) {
  if (a <= 0.0) throw Error("regularized_gamma_p: a must be positive");
  if (x < 0.0) throw Error("regularized_gamma_p: x must be nonnegative");
  if (x == 0.0) return 0.0;

  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // Series expansion.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16)
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    throw NoConvergence("regularized_gamma_p: series failed");
  }
  // Continued fraction (modified Lentz) for Q(a, x).
  const double fpmin = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) {
      const double q = std::exp(-x + a * std::log(x) - lg) * h;
      return 1.0 - q;
    }
  }
  throw NoConvergence("regularized_gamma_p: continued fraction failed");
}

double chi2_cdf(int dof, double x) {
  if (dof < 1) throw Error("chi2_cdf: dof must be >= 1");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

double chi2_quantile(int dof, double p) {
  if (dof < 1) throw Error("chi2_quantile: dof must be >= 1");
  if (p < 0.0 || p >= 1.0)
    throw InvalidProbability("chi2_quantile: p must lie in [0,1)");
  if (p == 0.0) return 0.0;

  // Bracket the root, then safeguarded Newton on F(x) - p.
  double lo = 0.0;
  double hi = dof + 10.0 * std::sqrt(2.0 * dof) + 10.0;
  while (chi2_cdf(dof, hi) < p) hi *= 2.0;

  const double half = 0.5 * dof;
  const double log_norm = half * std::log(2.0) + std::lgamma(half);
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    const double err = chi2_cdf(dof, x) - p;
    if (std::abs(err) <= 1e-12) return x;
    if (err > 0)
      hi = x;
    else
      lo = x;
    const double log_pdf = (half - 1.0) * std::log(x) - 0.5 * x - log_norm;
    const double pdf = std::exp(log_pdf);
    double next = (pdf > 0.0) ? x - err / pdf : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  if (std::abs(chi2_cdf(dof, x) - p) <= 1e-10) return x;
  throw NoConvergence("chi2_quantile: did not reach tolerance");
}

}  // namespace polytube
