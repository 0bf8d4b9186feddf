#include <doctest.h>

#include <Eigen/Dense>

#include "polytube/lp.hpp"

using namespace polytube;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("lp: box maximum") {
  // max x + y over [-1,1]^2 -> 2 at (1,1)
  Eigen::MatrixXd a(4, 2);
  a << 1, 0, -1, 0, 0, 1, 0, -1;
  Eigen::VectorXd b = Eigen::VectorXd::Ones(4);
  const LpResult r = maximize_over_rows(vec2(1, 1), a, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.x(0) == doctest::Approx(1.0));
  CHECK(r.x(1) == doctest::Approx(1.0));
}

TEST_CASE("lp: negative offsets force artificials") {
  // {x : x >= 3, x <= 5} written as -x <= -3, x <= 5; max -x -> -3.
  Eigen::MatrixXd a(2, 1);
  a << -1, 1;
  Eigen::VectorXd b(2);
  b << -3, 5;
  Eigen::VectorXd c(1);
  c << -1;
  const LpResult r = maximize_over_rows(c, a, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x(0) == doctest::Approx(3.0));
}

TEST_CASE("lp: infeasible detected") {
  Eigen::MatrixXd a(2, 1);
  a << 1, -1;
  Eigen::VectorXd b(2);
  b << 1, -2;  // x <= 1 and x >= 2
  const LpResult r = maximize_over_rows(Eigen::VectorXd::Ones(1), a, b);
  CHECK(r.status == LpStatus::Infeasible);
}

TEST_CASE("lp: unbounded detected") {
  Eigen::MatrixXd a(1, 2);
  a << 1, 0;
  Eigen::VectorXd b(1);
  b << 1;
  const LpResult r = maximize_over_rows(vec2(0, 1), a, b);
  CHECK(r.status == LpStatus::Unbounded);
}

TEST_CASE("lp: equality constraints") {
  // max x + 2y s.t. x + y = 1, x,y in [-10,10]: y = 1-x and y <= 10 force
  // x >= -9, so the optimum is x = -9, y = 10, value 11.
  LpProblem p;
  p.c = vec2(1, 2);
  p.a_eq = Eigen::MatrixXd(1, 2);
  p.a_eq << 1, 1;
  p.b_eq = Eigen::VectorXd::Ones(1);
  p.a_ub = Eigen::MatrixXd(4, 2);
  p.a_ub << 1, 0, -1, 0, 0, 1, 0, -1;
  p.b_ub = Eigen::VectorXd::Constant(4, 10.0);
  const LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(11.0));
  CHECK(r.x(0) == doctest::Approx(-9.0));
  CHECK(r.x(1) == doctest::Approx(10.0));
}

TEST_CASE("lp: degenerate instance terminates (Bland)") {
  // Classic cycling-prone instance (Beale); Bland's rule must terminate.
  LpProblem p;
  p.c = Eigen::VectorXd(4);
  p.c << 0.75, -150, 0.02, -6;
  p.a_ub = Eigen::MatrixXd(7, 4);
  p.a_ub << 0.25, -60, -0.04, 9, 0.5, -90, -0.02, 3, 0, 0, 1, 0, -1, 0, 0, 0,
      0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1;
  p.b_ub = Eigen::VectorXd(7);
  p.b_ub << 0, 0, 1, 0, 0, 0, 0;
  const LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(0.05));
}
