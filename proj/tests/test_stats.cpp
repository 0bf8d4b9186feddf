#include <doctest.h>

#include <cmath>

#include "polytube/errors.hpp"
#include "polytube/stats.hpp"

using namespace polytube;

TEST_CASE("normal cdf/quantile round trip") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  for (double p : {1e-8, 0.01, 0.3, 0.5, 0.77, 0.999, 1 - 1e-9}) {
    const double x = normal_quantile(p);
    CHECK(normal_cdf(x) == doctest::Approx(p).epsilon(1e-11));
  }
  CHECK_THROWS_AS(normal_quantile(0.0), InvalidProbability);
  CHECK_THROWS_AS(normal_quantile(1.0), InvalidProbability);
}

TEST_CASE("chi-squared cdf matches closed forms") {
  // dof 2: F(x) = 1 - exp(-x/2).
  for (double x : {0.1, 1.0, 2.5, 6.0, 11.0})
    CHECK(chi2_cdf(2, x) ==
          doctest::Approx(1.0 - std::exp(-0.5 * x)).epsilon(1e-12));
  // dof 4: F(x) = 1 - exp(-x/2)(1 + x/2).
  for (double x : {0.5, 3.0, 9.0})
    CHECK(chi2_cdf(4, x) ==
          doctest::Approx(1.0 - std::exp(-0.5 * x) * (1.0 + 0.5 * x))
              .epsilon(1e-12));
  CHECK(chi2_cdf(3, 0.0) == 0.0);
}

TEST_CASE("chi2 quantile: anchor values") {
  // 0.8^(1/5): value quoted for the 2-D disturbance level set.
  const double p = std::pow(0.8, 0.2);
  CHECK(chi2_quantile(2, p) == doctest::Approx(6.263).epsilon(2e-3));
  // Closed form for dof 2: -2 log(1 - p).
  CHECK(chi2_quantile(2, p) ==
        doctest::Approx(-2.0 * std::log(1.0 - p)).epsilon(1e-12));
  // Error-function identity: P(chi2(1) <= 1) = erf(1/sqrt(2)).
  const double p1 = std::erf(1.0 / std::sqrt(2.0));
  CHECK(chi2_quantile(1, p1) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(chi2_quantile(5, 0.0) == 0.0);
  CHECK_THROWS_AS(chi2_quantile(2, 1.0), InvalidProbability);
  CHECK_THROWS_AS(chi2_quantile(2, -0.1), InvalidProbability);
}

TEST_CASE("chi2 quantile/cdf round trip grid") {
  for (int dof = 1; dof <= 8; ++dof) {
    for (double p = 0.1; p < 0.96; p += 0.05) {
      const double x = chi2_quantile(dof, p);
      CHECK(std::abs(chi2_cdf(dof, x) - p) <= 1e-9);
    }
  }
}
