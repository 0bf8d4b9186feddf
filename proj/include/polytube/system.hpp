#pragma once

#include <functional>
#include <vector>

#include "polytube/polytope.hpp"

namespace polytube {

// Discrete-time LTV system x_{k+1} = A_k x_k + B_k u_k + w_k with a compact
// polytopic input space. Every A_k must be non-singular over the horizon,
// which is checked at construction.
class LtvSystem {
 public:
  using MatrixFn = std::function<Matrix(int)>;

  LtvSystem(int state_dim, int input_dim, MatrixFn a, MatrixFn b,
            HPolytope input_space, int horizon);

  // Time-invariant convenience constructor.
  static LtvSystem lti(const Matrix& a, const Matrix& b,
                       const HPolytope& input_space, int horizon);

  int dim() const { return state_dim_; }
  int input_dim() const { return input_dim_; }
  int horizon() const { return horizon_; }
  Matrix a(int k) const;
  Matrix b(int k) const;
  const HPolytope& input_space() const { return input_space_; }

 private:
  int state_dim_;
  int input_dim_;
  MatrixFn a_;
  MatrixFn b_;
  HPolytope input_space_;
  int horizon_;
};

// Indexed collection T_0 ... T_N of closed polytopic state-space sets.
class TargetTube {
 public:
  explicit TargetTube(std::vector<HPolytope> sets);

  static TargetTube viability_box(int dim, double half_width, int horizon);

  int horizon() const { return static_cast<int>(sets_.size()) - 1; }
  int dim() const { return sets_.front().dim(); }
  const HPolytope& at(int k) const;
  const std::vector<HPolytope>& sets() const { return sets_; }

 private:
  std::vector<HPolytope> sets_;
};

// Stock benchmark dynamics. Returned as (A, B).
std::pair<Matrix, Matrix> double_integrator_matrices(double sampling_time);
std::pair<Matrix, Matrix> integrator_chain_matrices(int dim,
                                                    double sampling_time);
// In-plane Clohessy-Wiltshire-Hill relative motion, zero-order hold
// discretization via the matrix exponential. State [x, y, xdot, ydot],
// inputs [Fx, Fy].
std::pair<Matrix, Matrix> cwh_matrices(double orbital_rate, double mass,
                                       double sampling_time);

// Unperturbed one-step backward reach set A_k^-1(S + (-B_k U)).
HPolytope one_step_backward_reach(const LtvSystem& sys, int k,
                                  const HPolytope& s);

}  // namespace polytube
