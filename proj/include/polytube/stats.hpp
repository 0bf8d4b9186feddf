#pragma once

namespace polytube {

// Standard normal CDF and its inverse. The inverse is a rational
// approximation polished with Newton steps on the CDF, accurate to ~1e-12.
double normal_cdf(double x);
double normal_quantile(double p);

// Regularized lower incomplete gamma P(a, x), by series for x < a+1 and by
// continued fraction otherwise.
double regularized_gamma_p(double a, double x);

// Chi-squared distribution with `dof` degrees of freedom.
double chi2_cdf(int dof, double x);

// Quantile: x with F_{chi2(dof)}(x) = p, |F(x) - p| <= 1e-10. Throws
// InvalidProbability unless 0 <= p < 1.
double chi2_quantile(int dof, double p);

}  // namespace polytube
