#include <doctest.h>

#include <cmath>

#include "polytube/dp.hpp"
#include "polytube/errors.hpp"
#include "polytube/reach.hpp"
#include "support/test_helpers.hpp"

using namespace polytube;
using testsupport::vec;

namespace {

LtvSystem di_system(int horizon) {
  const auto [a, b] = double_integrator_matrices(0.25);
  return LtvSystem::lti(a, b, HPolytope::box(vec({-0.1}), vec({0.1})),
                        horizon);
}

GridSpec di_grid(int points) {
  GridSpec g;
  g.lo = vec({-1.0, -1.0});
  g.hi = vec({1.0, 1.0});
  g.points = {points, points};
  g.input_points = 21;
  return g;
}

}  // namespace

TEST_CASE("grid: indexing, cap, validation") {
  const StateGrid grid(di_grid(41));
  CHECK(grid.size() == 41 * 41);
  CHECK(grid.step(0) == doctest::Approx(0.05));
  const Vector c = grid.center(grid.size() - 1);
  CHECK(c(0) == doctest::Approx(1.0));
  CHECK(c(1) == doctest::Approx(1.0));
  bool inside = true;
  CHECK(grid.nearest(vec({0.26, -0.26}), &inside) ==
        grid.index_of({25, 15}));  // 0.25 and -0.25 nodes
  CHECK(inside);
  grid.nearest(vec({3.0, 0.0}), &inside);
  CHECK_FALSE(inside);

  GridSpec too_big = di_grid(41);
  too_big.points = {2000, 2000};
  CHECK_THROWS_AS(StateGrid(too_big), GridCapExceeded);
  GridSpec degenerate = di_grid(41);
  degenerate.points = {1, 41};
  CHECK_THROWS(StateGrid(degenerate));
}

TEST_CASE("input grid covers the input polytope") {
  const auto pts = input_grid(HPolytope::box(vec({-0.1}), vec({0.1})), 21);
  CHECK(pts.size() == 21);
  CHECK(pts.front()(0) == doctest::Approx(-0.1));
  CHECK(pts.back()(0) == doctest::Approx(0.1));
}

TEST_CASE("stochastic value iteration: terminal layer is the indicator") {
  const LtvSystem sys = di_system(2);
  std::vector<HPolytope> sets(3, HPolytope::cube(2, 1.0));
  sets[2] = HPolytope::cube(2, 0.5);
  const TargetTube tube(std::move(sets));
  const GaussianDisturbance g(Vector::Zero(2), 0.005 * Matrix::Identity(2, 2));
  const StateGrid grid(di_grid(21));
  const auto values = stochastic_value_iteration(sys, tube, g, grid);
  REQUIRE(values.size() == 3);
  for (long cell = 0; cell < grid.size(); ++cell) {
    const double expect = tube.at(2).contains(grid.center(cell)) ? 1.0 : 0.0;
    CHECK(values[2](cell) == expect);
  }
  // Values stay in [0, 1].
  for (const auto& layer : values) {
    CHECK(layer.minCoeff() >= 0.0);
    CHECK(layer.maxCoeff() <= 1.0 + 1e-12);
  }
}

TEST_CASE("stochastic values are monotone in k for a viability tube") {
  const LtvSystem sys = di_system(4);
  const TargetTube tube = TargetTube::viability_box(2, 1.0, 4);
  const GaussianDisturbance g(Vector::Zero(2), 0.005 * Matrix::Identity(2, 2));
  const StateGrid grid(di_grid(21));
  const auto values = stochastic_value_iteration(sys, tube, g, grid);
  for (int k = 0; k < 4; ++k)
    for (long cell = 0; cell < grid.size(); ++cell)
      CHECK(values[static_cast<size_t>(k)](cell) <=
            values[static_cast<size_t>(k) + 1](cell) + 1e-12);
}

TEST_CASE("transition weights renormalize to one") {
  // Re-derive one transition row the way the sweep builds it: density at
  // nodes times cell volume over the +/-5 sigma window, divided by the
  // window total. By construction the in-grid weights plus out-of-grid
  // weights sum to exactly one; with the window fully inside the grid the
  // in-grid row alone does.
  const GaussianDisturbance g(Vector::Zero(2), 0.005 * Matrix::Identity(2, 2));
  const StateGrid grid(di_grid(41));
  const Vector mean = vec({0.0, 0.0});
  const double sigma = std::sqrt(0.005);
  double total = 0.0;
  for (long cell = 0; cell < grid.size(); ++cell) {
    const Vector d = grid.center(cell) - mean;
    if ((d.cwiseAbs().array() > 5.0 * sigma).any()) continue;
    total += std::exp(-0.5 * d.squaredNorm() / 0.005) * grid.cell_volume();
  }
  const double normalizer = total;  // window inside the grid: same sum
  CHECK(std::abs(total / normalizer - 1.0) <= 1e-6);
  // Truncation at 5 sigma leaves at most ~1e-6 of the true mass behind.
  const double full = 2.0 * M_PI * 0.005;  // integral of the unnormalized kernel
  CHECK(total / full >= 1.0 - 2e-6);
  CHECK(total / full <= 1.0 + 2e-2);  // Riemann error at this cell size
}

TEST_CASE("deterministic limit: tiny variance recovers the deterministic tube") {
  const LtvSystem sys = di_system(3);
  const TargetTube tube = TargetTube::viability_box(2, 1.0, 3);
  const GaussianDisturbance g(Vector::Zero(2), 1e-10 * Matrix::Identity(2, 2));
  const StateGrid grid(di_grid(41));
  const auto values = stochastic_value_iteration(sys, tube, g, grid);
  const ReachTube det = deterministic_reach_tube(sys, tube);

  long agree = 0, total = 0, band = 0;
  const double cell_diag = std::sqrt(2.0) * grid.step(0);
  for (long cell = 0; cell < grid.size(); ++cell) {
    const Vector x = grid.center(cell);
    const double viol = det.set_at(0).violation(x);
    if (std::abs(viol) <= cell_diag) {
      ++band;
      continue;
    }
    ++total;
    const bool in_det = viol < 0;
    const bool dp_one = values[0](cell) >= 0.5;
    if (in_det == dp_one) ++agree;
  }
  CHECK(static_cast<double>(agree) / total >= 0.99);
}

TEST_CASE("alpha level mask") {
  Eigen::VectorXd v(4);
  v << 0.0, 0.5, 0.8, 1.0;
  const auto mask = alpha_level_cells(v, 0.8);
  CHECK(mask == std::vector<std::uint8_t>{0, 0, 1, 1});
  const auto all = alpha_level_cells(v, 0.0);
  CHECK(all == std::vector<std::uint8_t>{1, 1, 1, 1});
  CHECK_THROWS_AS(alpha_level_cells(v, 1.5), InvalidProbability);
}

TEST_CASE("interpolation is multilinear") {
  const StateGrid grid(di_grid(3));  // nodes at -1, 0, 1
  Eigen::VectorXd v = Eigen::VectorXd::Zero(grid.size());
  v(grid.index_of({2, 2})) = 1.0;  // corner (1,1)
  CHECK(interpolate_value(grid, v, vec({1.0, 1.0})) == doctest::Approx(1.0));
  CHECK(interpolate_value(grid, v, vec({0.5, 1.0})) == doctest::Approx(0.5));
  CHECK(interpolate_value(grid, v, vec({0.5, 0.5})) == doctest::Approx(0.25));
}

TEST_CASE("min-max recursion: trivial tubes") {
  const LtvSystem sys = di_system(2);
  const Matrix w = testsupport::vec({0, 0}).transpose();

  // Tube covering far more than reachable space: zero cost everywhere.
  const TargetTube everything = TargetTube::viability_box(2, 1e6, 2);
  const StateGrid grid(di_grid(21));
  const auto all_zero = minmax_value_iteration(sys, everything, w, grid);
  for (long cell = 0; cell < grid.size(); ++cell)
    CHECK(all_zero.cost[0](cell) == 0);

  // Empty terminal set: at least one violation from everywhere.
  std::vector<HPolytope> sets(3, HPolytope::cube(2, 1e6));
  sets[2] = HPolytope::empty(2);
  const auto hopeless =
      minmax_value_iteration(sys, TargetTube(std::move(sets)), w, grid);
  for (long cell = 0; cell < grid.size(); ++cell)
    CHECK(hopeless.cost[0](cell) >= 1);
}

TEST_CASE("min-max costs: integer range and disturbance monotonicity") {
  const LtvSystem sys = di_system(3);
  const TargetTube tube = TargetTube::viability_box(2, 1.0, 3);
  const StateGrid grid(di_grid(21));
  const Matrix w_small = testsupport::vec({0, 0}).transpose();
  Matrix w_big(4, 2);
  w_big << 0.05, 0.05, 0.05, -0.05, -0.05, 0.05, -0.05, -0.05;

  const auto small = minmax_value_iteration(sys, tube, w_small, grid);
  const auto big = minmax_value_iteration(sys, tube, w_big, grid);
  for (int k = 0; k <= 3; ++k) {
    for (long cell = 0; cell < grid.size(); ++cell) {
      CHECK(small.cost[static_cast<size_t>(k)](cell) >= 0);
      CHECK(small.cost[static_cast<size_t>(k)](cell) <= 3 - k + 1);
      CHECK(big.cost[static_cast<size_t>(k)](cell) >=
            small.cost[static_cast<size_t>(k)](cell));
    }
  }
}

TEST_CASE("min-max zero level tracks the minimal tube") {
  const LtvSystem sys = di_system(2);
  const TargetTube tube = TargetTube::viability_box(2, 1.0, 2);
  const HPolytope w = HPolytope::cube(2, 0.05);
  const ReachTube min = minimal_reach_tube(sys, tube, w);
  const Matrix w_vertices = to_vrep(w).vertices();

  const StateGrid grid(di_grid(41));
  const auto mm = minmax_value_iteration(sys, tube, w_vertices, grid);
  long agree = 0, total = 0;
  for (long cell = 0; cell < grid.size(); ++cell) {
    const Vector x = grid.center(cell);
    const bool in_tube = min.set_at(0).contains(x, 1e-9);
    const bool zero_cost = mm.zero_level[static_cast<size_t>(cell)] == 1;
    ++total;
    if (in_tube == zero_cost) ++agree;
  }
  CHECK(static_cast<double>(agree) / total >= 0.95);
}
