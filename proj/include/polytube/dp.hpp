#pragma once

#include <cstdint>
#include <vector>

#include "polytube/disturbance.hpp"
#include "polytube/polytope.hpp"
#include "polytube/system.hpp"

namespace polytube {

// Uniform rectangular grid: `points[j]` nodes spanning [lo(j), hi(j)]
// inclusive per state dimension, plus the input-grid resolution.
struct GridSpec {
  Vector lo;
  Vector hi;
  std::vector<int> points;
  int input_points = 21;
  long cell_cap = 1'000'000;
};

// Flattened indexing over the grid nodes.
class StateGrid {
 public:
  explicit StateGrid(GridSpec spec);

  int dims() const { return static_cast<int>(spec_.points.size()); }
  long size() const { return total_; }
  const GridSpec& spec() const { return spec_; }
  double step(int j) const { return step_[static_cast<size_t>(j)]; }
  double cell_volume() const;

  Vector center(long flat) const;
  long index_of(const std::vector<int>& idx) const;
  std::vector<int> tuple_of(long flat) const;
  // Nearest node (clamped); `inside` reports whether x lies within half a
  // cell of the node lattice.
  long nearest(const Vector& x, bool* inside = nullptr) const;

 private:
  GridSpec spec_;
  std::vector<double> step_;
  std::vector<long> strides_;
  long total_ = 0;
};

// Grid over the (polytopic) input space: every lattice point of the bounding
// box that belongs to the set, `input_points` nodes per input dimension.
std::vector<Vector> input_grid(const HPolytope& input_space, int points);

// Stochastic reachability value functions V_k over the grid, k = 0..N.
// Transition integrals use normal density at cell centers times cell volume,
// truncated at +/-5 sigma per axis and renormalized over the full window;
// mass leaving the grid counts as failure.
std::vector<Eigen::VectorXd> stochastic_value_iteration(
    const LtvSystem& sys, const TargetTube& tube, const GaussianDisturbance& g,
    const StateGrid& grid);

// Mask of cells with value >= alpha.
std::vector<std::uint8_t> alpha_level_cells(const Eigen::VectorXd& values,
                                            double alpha);

// Multilinear interpolation of a value layer at an arbitrary state (clamped
// to the grid box).
double interpolate_value(const StateGrid& grid, const Eigen::VectorXd& values,
                         const Vector& x);

struct MinmaxResult {
  std::vector<Eigen::VectorXi> cost;        // J_k per grid node, k = 0..N
  std::vector<std::uint8_t> zero_level;     // J_0 == 0 mask
};

// Min-max (violation-count) recursion with the disturbance ranging over the
// rows of `w_points`. Next states use nearest-node lookup; a next state
// outside the grid box falls back to exact tube membership, with worst-case
// remaining cost when it has already left the tube.
MinmaxResult minmax_value_iteration(const LtvSystem& sys,
                                    const TargetTube& tube,
                                    const Matrix& w_points,
                                    const StateGrid& grid);

}  // namespace polytube
