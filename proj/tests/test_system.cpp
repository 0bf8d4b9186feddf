#include <doctest.h>

#include <cmath>
#include <random>

#include "polytube/errors.hpp"
#include "polytube/reach.hpp"
#include "polytube/system.hpp"
#include "support/test_helpers.hpp"

using namespace polytube;
using testsupport::vec;

namespace {

LtvSystem double_integrator(double t, double input_bound, int horizon) {
  const auto [a, b] = double_integrator_matrices(t);
  return LtvSystem::lti(a, b,
                        HPolytope::box(vec({-input_bound}), vec({input_bound})),
                        horizon);
}

}  // namespace

TEST_CASE("stock matrices match closed forms") {
  const auto [a2, b2] = double_integrator_matrices(0.25);
  CHECK(a2(0, 1) == doctest::Approx(0.25));
  CHECK(b2(0, 0) == doctest::Approx(0.03125));
  CHECK(b2(1, 0) == doctest::Approx(0.25));

  const auto [ac, bc] = integrator_chain_matrices(4, 0.25);
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      double expect = 1.0;
      for (int p = 1; p <= j - i; ++p) expect *= 0.25 / p;
      CHECK(std::abs(ac(i, j) - expect) <= 1e-12);
    }
  }
  // Chain with n = 2 degenerates to the double integrator.
  const auto [a22, b22] = integrator_chain_matrices(2, 0.25);
  CHECK((a22 - a2).lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK((b22 - b2).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("cwh discretization basics") {
  const double mu = 3.986e14;
  const double r0 = 6378100.0 + 850000.0;
  const double omega = std::sqrt(mu / (r0 * r0 * r0));
  const auto [a, b] = cwh_matrices(omega, 300.0, 20.0);
  // Slow dynamics: A close to identity plus T on the velocity couplings.
  CHECK(a(0, 0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(a(0, 2) == doctest::Approx(20.0).epsilon(1e-3));
  CHECK(a(1, 3) == doctest::Approx(20.0).epsilon(1e-3));
  // ZOH of the force input: roughly T^2/(2 m) on position, T/m on velocity.
  CHECK(b(2, 0) == doctest::Approx(20.0 / 300.0).epsilon(1e-2));
  CHECK(b(0, 0) == doctest::Approx(0.5 * 400.0 / 300.0).epsilon(1e-2));
  // The exponential preserves the Wronskian-type structure: det(A) = exp(tr(Ac) T) = 1.
  CHECK(std::abs(a.determinant() - 1.0) <= 1e-9);
}

TEST_CASE("LtvSystem validation") {
  const Matrix eye = Matrix::Identity(2, 2);
  const HPolytope u = HPolytope::cube(1, 0.1);
  CHECK_THROWS_AS(
      LtvSystem::lti(Matrix::Zero(2, 2), Matrix::Zero(2, 1), u, 3),
      NonInvertibleMap);
  Matrix half(1, 1);
  half << 1;
  CHECK_THROWS_AS(LtvSystem::lti(eye, Matrix::Zero(2, 1),
                                 HPolytope(half, Vector::Ones(1)), 3),
                  UnboundedPolytope);
}

TEST_CASE("one_step_backward_reach: identity dynamics") {
  const Matrix eye = Matrix::Identity(2, 2);
  const LtvSystem sys =
      LtvSystem::lti(eye, Matrix::Zero(2, 1), HPolytope::cube(1, 0.1), 3);
  const HPolytope s = HPolytope::cube(2, 1.0);
  const HPolytope r = one_step_backward_reach(sys, 0, s);
  for (int i = 0; i < 16; ++i) {
    const double th = 2 * M_PI * i / 16;
    const Vector d = vec({std::cos(th), std::sin(th)});
    CHECK(r.support(d) == doctest::Approx(s.support(d)).epsilon(1e-9));
  }
}

TEST_CASE("one_step_backward_reach: 1-D interval arithmetic") {
  Matrix a(1, 1), b(1, 1);
  a << 1;
  b << 1;
  const LtvSystem sys =
      LtvSystem::lti(a, b, HPolytope::box(vec({-0.1}), vec({0.1})), 1);
  const HPolytope s = HPolytope::box(vec({-1.0}), vec({1.0}));
  const HPolytope r = one_step_backward_reach(sys, 0, s);
  CHECK(r.support(Vector::Ones(1)) == doctest::Approx(1.1));
  CHECK(r.support(-Vector::Ones(1)) == doctest::Approx(1.1));
}

TEST_CASE("one_step_backward_reach: double integrator vs dense input grid") {
  const LtvSystem sys = double_integrator(0.25, 0.1, 1);
  const HPolytope s = HPolytope::cube(2, 1.0);
  const HPolytope r = one_step_backward_reach(sys, 0, s);

  const Matrix a = sys.a(0);
  const Matrix b = sys.b(0);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> coord(-1.6, 1.6);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Vector x = vec({coord(rng), coord(rng)});
    if (std::abs(r.violation(x)) <= 1e-3) continue;  // u-grid resolution band
    double best = 1e100;
    for (int i = 0; i <= 200; ++i) {
      const double u = -0.1 + 0.2 * i / 200;
      const Vector next = a * x + b(Eigen::all, 0) * u;
      best = std::min(best, s.violation(next));
    }
    // Quantizing u moves the next state by at most |B| du/2 = 1.3e-4.
    const bool oracle_inside = best <= 1.3e-4;
    CHECK(r.contains(x, 1e-9) == oracle_inside);
    ++checked;
  }
  CHECK(checked > 1800);
}

TEST_CASE("backward reach is monotone in the target set") {
  const LtvSystem sys = double_integrator(0.25, 0.1, 1);
  std::mt19937 rng(5);
  const HPolytope small = HPolytope::cube(2, 0.7);
  const HPolytope big = HPolytope::cube(2, 1.0);
  const HPolytope r_small = one_step_backward_reach(sys, 0, small);
  const HPolytope r_big = one_step_backward_reach(sys, 0, big);
  const VPolytope v = to_vrep(r_small);
  for (int i = 0; i < v.num_vertices(); ++i)
    CHECK(r_big.contains(v.vertex(i), 1e-7));
  for (int i = 0; i < 200; ++i)
    CHECK(r_big.contains(testsupport::sample_in_hull(rng, v), 1e-7));
}

TEST_CASE("target tube validation and factory") {
  const TargetTube tube = TargetTube::viability_box(2, 1.0, 5);
  CHECK(tube.horizon() == 5);
  CHECK(tube.at(3).contains(vec({0.8, -0.2})));
  CHECK_THROWS_AS(tube.at(6), IndexOutOfRange);
  CHECK_THROWS_AS(TargetTube(std::vector<HPolytope>{}), EmptyList);
}
