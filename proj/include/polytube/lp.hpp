#pragma once

#include <Eigen/Dense>

namespace polytube {

// Outcome of a linear program.
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;     // optimizer (valid when Optimal)
  double value = 0.0;    // objective at the optimizer
};

// Dense linear program over free variables:
//
//   maximize    c'x
//   subject to  A_ub x <= b_ub
//               A_eq x  = b_eq
//
// Either constraint block may be empty (0 rows). Solved with a two-phase
// tableau simplex using Bland's rule, so it terminates on degenerate
// instances. Intended for the small dense problems polytope calculus
// produces (tens of variables, up to a few hundred rows).
struct LpProblem {
  Eigen::VectorXd c;
  Eigen::MatrixXd a_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
};

LpResult solve_lp(const LpProblem& problem, double tol = 1e-9);

// Always uses the direct (primal tableau) route; solve_lp dispatches to a
// dual-form solve for many-row/few-variable instances.
LpResult solve_lp_direct(const LpProblem& problem, double tol = 1e-9);

// Convenience wrapper: maximize direction'x over {x : a x <= b}.
LpResult maximize_over_rows(const Eigen::VectorXd& direction,
                            const Eigen::MatrixXd& a,
                            const Eigen::VectorXd& b,
                            double tol = 1e-9);

// Feasibility of {x : a x <= b} via the Farkas alternative (small tableau
// even when the row count is large).
bool lp_feasible(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                 double tol = 1e-9);

}  // namespace polytube
