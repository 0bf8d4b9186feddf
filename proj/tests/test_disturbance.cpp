#include <doctest.h>

#include <cmath>
#include <random>

#include "polytube/disturbance.hpp"
#include "polytube/errors.hpp"
#include "support/test_helpers.hpp"

using namespace polytube;
using testsupport::vec;

namespace {

GaussianDisturbance standard2() {
  return GaussianDisturbance(Vector::Zero(2), Matrix::Identity(2, 2));
}

}  // namespace

TEST_CASE("gaussian disturbance validation") {
  CHECK_THROWS(GaussianDisturbance(Vector::Zero(2), -Matrix::Identity(2, 2)));
  Matrix asym(2, 2);
  asym << 1, 0.5, -0.5, 1;
  CHECK_THROWS(GaussianDisturbance(Vector::Zero(2), asym));
}

TEST_CASE("gaussian_level_ellipsoid: anchors") {
  // gamma = 0 collapses to the mean point.
  const auto g = standard2();
  const Ellipsoid point = gaussian_level_ellipsoid(g, 0.0, 5);
  CHECK(point.radius_sq() == 0.0);

  // Double-integrator disturbance level set: R^2 near 6.263.
  const GaussianDisturbance di(Vector::Zero(2),
                               0.005 * Matrix::Identity(2, 2));
  const Ellipsoid e = gaussian_level_ellipsoid(di, 0.8, 5);
  CHECK(e.radius_sq() == doctest::Approx(6.263).epsilon(2e-3));

  CHECK_THROWS_AS(gaussian_level_ellipsoid(g, 1.0, 5), InvalidProbability);
}

TEST_CASE("gaussian_level_ellipsoid: seeded Monte-Carlo frequency") {
  // gamma^(1/steps) = 0.95; frequency of 1e6 draws within 3 standard errors.
  const auto g = standard2();
  const double level = 0.95;
  const Ellipsoid e =
      gaussian_level_ellipsoid(g, std::pow(level, 5.0), 5);
  std::mt19937 rng(424242);
  std::normal_distribution<double> gauss(0.0, 1.0);
  long inside = 0;
  const long n = 1'000'000;
  for (long i = 0; i < n; ++i) {
    const Vector w = vec({gauss(rng), gauss(rng)});
    if (e.contains(w)) ++inside;
  }
  const double freq = static_cast<double>(inside) / n;
  CHECK(freq >= 0.9493);
  CHECK(freq <= 0.9507);
}

TEST_CASE("polytope_probability: exact box path") {
  const auto g = standard2();
  // Very wide box: probability 1.
  const auto whole = polytope_probability(g, HPolytope::cube(2, 10.0));
  CHECK(whole.exact);
  CHECK(whole.value == doctest::Approx(1.0).epsilon(1e-6));

  // Degenerate point: zero.
  const auto none =
      polytope_probability(g, HPolytope::singleton(Vector::Zero(2)));
  CHECK(none.value == doctest::Approx(0.0));

  // Half-width 2.290: (2 Phi(2.290) - 1)^2.
  const auto box = polytope_probability(g, HPolytope::cube(2, 2.290));
  const double expect = std::pow(2.0 * normal_cdf(2.290) - 1.0, 2);
  CHECK(box.exact);
  CHECK(box.value == doctest::Approx(expect).epsilon(1e-12));
  CHECK(box.value == doctest::Approx(0.95635).epsilon(5e-4));
}

TEST_CASE("polytope_probability: QMC path vs exact value") {
  const auto g = standard2();
  // Rotated box (45 degrees): same mass as the axis-aligned one by symmetry.
  const double s = std::sqrt(0.5);
  Matrix a(4, 2);
  a << s, s, -s, -s, s, -s, -s, s;
  const double h = 2.290;
  const HPolytope rot(a, Vector::Constant(4, h));
  const auto est = polytope_probability(g, rot, 1L << 16, 11);
  CHECK_FALSE(est.exact);
  CHECK(est.std_error > 0.0);
  const double expect = std::pow(2.0 * normal_cdf(h) - 1.0, 2);
  CHECK(std::abs(est.value - expect) <= 4.0 * est.std_error + 1e-4);
  // Deterministic given the seed.
  const auto again = polytope_probability(g, rot, 1L << 16, 11);
  CHECK(again.value == est.value);
}

TEST_CASE("template_pins_origin") {
  Matrix good(4, 2);
  good << 1, 0, -1, 0, 0, 1, 0, -1;
  CHECK(template_pins_origin(good));
  Matrix open(3, 2);  // one quadrant unbounded
  open << 1, 0, 0, 1, -1, -1;
  CHECK_FALSE(template_pins_origin(open));
}

TEST_CASE("bisect_bounded_set: symmetric box hits the 1-D inverse-CDF value") {
  const auto g = standard2();
  BoundedSetSpec spec;
  spec.kind = BoundedSetKind::PolyTemplate;
  spec.a = Matrix(4, 2);
  spec.a << 1, 0, -1, 0, 0, 1, 0, -1;
  spec.b0 = Vector::Ones(4);
  spec.c = Vector::Zero(2);
  spec.gamma = 0.8;
  spec.horizon_steps = 5;
  const BisectionResult r = bisect_bounded_set(g, spec);
  CHECK(r.exact_path);
  CHECK(std::abs(r.achieved - r.target) <= 1e-6);
  CHECK(r.iterations <= 200);
  // Half-width from the exact 1-D route: solve (2 Phi(h) - 1)^2 = 0.8^(1/5).
  CHECK(r.scale == doctest::Approx(2.2889).epsilon(1e-3));

  // gamma = 0 gives the degenerate point at c.
  BoundedSetSpec zero = spec;
  zero.gamma = 0.0;
  const BisectionResult rz = bisect_bounded_set(g, zero);
  CHECK(rz.scale == 0.0);
  CHECK(rz.set.contains(Vector::Zero(2)));
}

TEST_CASE("bisect_bounded_set: whitened template via QMC") {
  Matrix cov(2, 2);
  cov << 0.02, 0.008, 0.008, 0.01;
  const GaussianDisturbance g(vec({0.1, -0.2}), cov);
  // Whitened box template: rows from the inverse Cholesky factor.
  const Matrix li = Matrix(g.chol_lower()).inverse();
  BoundedSetSpec spec;
  spec.kind = BoundedSetKind::PolyTemplate;
  spec.a = Matrix(4, 2);
  spec.a.topRows(2) = li;
  spec.a.bottomRows(2) = -li;
  spec.b0 = Vector::Ones(4);
  spec.c = g.mean();
  spec.gamma = 0.8;
  spec.horizon_steps = 5;
  const BisectionResult r = bisect_bounded_set(g, spec, 1e-6, 200, 1L << 15, 3);
  CHECK_FALSE(r.exact_path);
  CHECK(std::abs(r.achieved - r.target) <= 3.0 * r.std_error + 1e-9);

  // Independent seeded Monte Carlo of the returned set.
  std::mt19937 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Matrix l = g.chol_lower();
  long inside = 0;
  const long n = 200'000;
  const HPolytope& set = r.set;
  for (long i = 0; i < n; ++i) {
    const Vector w = g.mean() + l * vec({gauss(rng), gauss(rng)});
    if (set.contains(w)) ++inside;
  }
  const double freq = static_cast<double>(inside) / n;
  const double se = std::sqrt(r.target * (1 - r.target) / n);
  CHECK(std::abs(freq - r.target) <= 4.0 * se + 3.0 * r.std_error);
}

TEST_CASE("bisect_bounded_set: rejects bad templates") {
  const auto g = standard2();
  BoundedSetSpec spec;
  spec.kind = BoundedSetKind::PolyTemplate;
  spec.a = Matrix(3, 2);
  spec.a << 1, 0, 0, 1, -1, -1;  // does not pin the origin
  spec.b0 = Vector::Ones(3);
  spec.c = Vector::Zero(2);
  spec.gamma = 0.5;
  spec.horizon_steps = 2;
  CHECK_THROWS_AS(bisect_bounded_set(g, spec), InvalidTemplate);
  spec.kind = BoundedSetKind::Ellipsoid;
  CHECK_THROWS_AS(bisect_bounded_set(g, spec), InvalidTemplate);
}

TEST_CASE("scaled template: Poly(A, theta b) = theta Poly(A, b) by support") {
  std::mt19937 rng(31);
  const HPolytope p = testsupport::random_hpolytope(rng, 2, 5).normalized();
  for (const double theta : {0.0, 0.25, 0.5, 1.0}) {
    const HPolytope scaled(p.a(), theta * p.b());
    for (int i = 0; i < 64; ++i) {
      const Vector d = testsupport::random_direction(rng, 2);
      const double h = scaled.support(d);
      const double expect = theta * p.support(d);
      CHECK(std::abs(h - expect) <= 1e-9);
    }
  }
}
