#include "polytube/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "polytube/errors.hpp"

namespace polytube {

namespace {

// Tableau simplex, minimization form. Rows 0..m-1 are constraints, row m is
// the reduced-cost row; column ncols is the RHS. Bland's rule throughout.
class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), t_(rows + 1, cols + 1) {
    t_.setZero();
    basis_.assign(rows, -1);
  }

  double& at(int i, int j) { return t_(i, j); }
  double rhs(int i) const { return t_(i, n_); }
  int basis(int i) const { return basis_[i]; }
  void set_basis(int i, int j) { basis_[i] = j; }

  // Rebuild the reduced-cost row for the cost vector `cost` (minimize).
  void install_costs(const std::vector<double>& cost) {
    for (int j = 0; j <= n_; ++j) t_(m_, j) = (j < n_) ? cost[j] : 0.0;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb != 0.0) t_.row(m_) -= cb * t_.row(i);
    }
  }

  // Pivots until optimal or unbounded. Dantzig pricing by default; after a
  // long degenerate plateau the rule switches to Bland's, which guarantees
  // termination. `active` marks columns eligible to enter the basis.
  LpStatus iterate(const std::vector<bool>& active, double tol) {
    const long max_iters = 50000 + 500L * (m_ + n_);
    bool bland = false;
    long plateau = 0;
    double last_obj = t_(m_, n_);
    for (long iter = 0; iter < max_iters; ++iter) {
      int enter = -1;
      if (bland) {
        for (int j = 0; j < n_; ++j) {
          if (active[j] && t_(m_, j) < -tol) {
            enter = j;
            break;
          }
        }
      } else {
        double most_negative = -tol;
        for (int j = 0; j < n_; ++j) {
          if (active[j] && t_(m_, j) < most_negative) {
            most_negative = t_(m_, j);
            enter = j;
          }
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      // Exact-minimum ratio test with negative-noise clamping; exact ties
      // break on the smallest basis index (Bland), which keeps the basis
      // feasible and rules out cycling.
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const double a = t_(i, enter);
        if (a > tol) {
          const double num = t_(i, n_) > 0.0 ? t_(i, n_) : 0.0;
          const double ratio = num / a;
          if (ratio < best_ratio ||
              (ratio == best_ratio && (leave < 0 || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);

      const double obj = t_(m_, n_);
      if (std::abs(obj - last_obj) <= 1e-12 * (1.0 + std::abs(obj)))
        ++plateau;
      else
        plateau = 0;
      last_obj = obj;
      if (plateau > 200) bland = true;
    }
    throw Error("simplex: iteration limit exceeded");
  }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  int rows() const { return m_; }
  int cols() const { return n_; }

  // Drops constraint row `i` (used for redundant rows left by phase 1).
  void drop_row(int i) {
    for (int r = i; r < m_; ++r) t_.row(r) = t_.row(r + 1);
    basis_.erase(basis_.begin() + i);
    --m_;
  }

 private:
  int m_;
  int n_;
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
};

}  // namespace

// Many-row/few-variable problems (support functions, separation, bounding
// boxes over large facet lists) are solved through the LP dual
//
//   min b'lambda  s.t.  A'lambda = c, lambda >= 0,
//
// whose tableau is n x m instead of m x (2n + m). The optimizer is
// recovered from the tight rows; on any recovery doubt the caller falls
// back to the direct tableau.
namespace {

LpResult solve_via_dual(const LpProblem& problem, double tol, bool* ok) {
  *ok = true;
  const int n = static_cast<int>(problem.c.size());
  const int m = static_cast<int>(problem.b_ub.size());
  const int ncols = m + n;  // lambdas then artificials

  Tableau tab(n, ncols);
  std::vector<bool> active(ncols, true);
  for (int i = 0; i < n; ++i) {
    double rhs = problem.c(i);
    Eigen::VectorXd row = problem.a_ub.col(i);
    if (rhs < 0) {
      rhs = -rhs;
      row = -row;
    }
    for (int j = 0; j < m; ++j) tab.at(i, j) = row(j);
    tab.at(i, m + i) = 1.0;
    tab.at(i, ncols) = rhs;
    tab.set_basis(i, m + i);
  }

  std::vector<double> phase1(ncols, 0.0);
  for (int j = m; j < ncols; ++j) phase1[j] = 1.0;
  tab.install_costs(phase1);
  // A phase-1 objective is bounded below by zero, so an "unbounded" report
  // is tolerance noise at a stalled basis; the artificial sum decides.
  tab.iterate(active, tol);
  double art_sum = 0.0;
  for (int i = 0; i < tab.rows(); ++i)
    if (tab.basis(i) >= m) art_sum += tab.rhs(i);

  LpResult result;
  if (art_sum > 1e-7) {
    // Dual infeasible: the primal is unbounded or infeasible. Farkas probe:
    // the primal is infeasible exactly when min b'lambda over A'lambda = 0,
    // lambda >= 0 is unbounded below.
    Tableau probe(n, ncols);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) probe.at(i, j) = problem.a_ub(j, i);
      probe.at(i, m + i) = 1.0;
      probe.at(i, ncols) = 0.0;
      probe.set_basis(i, m + i);
    }
    std::vector<double> costs(ncols, 0.0);
    for (int j = 0; j < m; ++j) costs[j] = problem.b_ub(j);
    probe.install_costs(costs);
    std::vector<bool> all(ncols, true);
    const LpStatus st = probe.iterate(all, tol);
    result.status = (st == LpStatus::Unbounded) ? LpStatus::Infeasible
                                                : LpStatus::Unbounded;
    return result;
  }

  for (int i = tab.rows() - 1; i >= 0; --i) {
    if (tab.basis(i) < m) continue;
    int col = -1;
    for (int j = 0; j < m; ++j) {
      if (std::abs(tab.at(i, j)) > tol) {
        col = j;
        break;
      }
    }
    if (col >= 0)
      tab.pivot(i, col);
    else
      tab.drop_row(i);
  }
  for (int j = m; j < ncols; ++j) active[j] = false;

  std::vector<double> phase2(ncols, 0.0);
  for (int j = 0; j < m; ++j) phase2[j] = problem.b_ub(j);
  tab.install_costs(phase2);
  if (tab.iterate(active, tol) == LpStatus::Unbounded) {
    result.status = LpStatus::Infeasible;  // dual unbounded below
    return result;
  }

  double value = 0.0;
  std::vector<int> tight;
  for (int i = 0; i < tab.rows(); ++i) {
    const int j = tab.basis(i);
    if (j < m && tab.rhs(i) > tol) {
      value += problem.b_ub(j) * tab.rhs(i);
      tight.push_back(j);
    }
  }

  // Recover the primal optimizer from the tight rows.
  Eigen::MatrixXd at(static_cast<int>(tight.size()), n);
  Eigen::VectorXd bt(static_cast<int>(tight.size()));
  for (size_t i = 0; i < tight.size(); ++i) {
    at.row(static_cast<int>(i)) = problem.a_ub.row(tight[i]);
    bt(static_cast<int>(i)) = problem.b_ub(tight[i]);
  }
  Eigen::VectorXd y = tight.empty()
                          ? Eigen::VectorXd::Zero(n)
                          : Eigen::VectorXd(at.colPivHouseholderQr().solve(bt));
  const double resid =
      tight.empty() ? 0.0 : (at * y - bt).lpNorm<Eigen::Infinity>();
  double feas = 0.0;
  if (m > 0) feas = (problem.a_ub * y - problem.b_ub).maxCoeff();
  const double scale = std::max(1.0, std::abs(value));
  if (resid > 1e-7 * scale || feas > 1e-7 * scale ||
      std::abs(problem.c.dot(y) - value) > 1e-7 * scale) {
    *ok = false;  // degenerate recovery; caller retries the direct tableau
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x = std::move(y);
  result.value = value;
  return result;
}

}  // namespace

LpResult solve_lp(const LpProblem& problem, double tol) {
  if (problem.b_eq.size() == 0 && problem.c.size() <= 10 &&
      problem.c.lpNorm<Eigen::Infinity>() > tol &&
      problem.b_ub.size() > 6 * problem.c.size() && problem.b_ub.size() > 40) {
    bool ok = false;
    const LpResult r = solve_via_dual(problem, tol, &ok);
    if (ok) return r;
  }
  return solve_lp_direct(problem, tol);
}

bool lp_feasible(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                 double tol) {
  const int m = static_cast<int>(b.size());
  if (m == 0) return true;
  const int n = static_cast<int>(a.cols());
  // Maximize the slack margin t subject to A x + t <= b, t <= 1. The margin
  // LP is always feasible and bounded; the original rows admit a point
  // exactly when the optimal margin is nonnegative.
  LpProblem margin;
  margin.c = Eigen::VectorXd::Zero(n + 1);
  margin.c(n) = 1.0;
  margin.a_ub = Eigen::MatrixXd(m + 1, n + 1);
  margin.a_ub.topLeftCorner(m, n) = a;
  margin.a_ub.topRightCorner(m, 1).setOnes();
  margin.a_ub.bottomRows(1).setZero();
  margin.a_ub(m, n) = 1.0;
  margin.b_ub = Eigen::VectorXd(m + 1);
  margin.b_ub.head(m) = b;
  margin.b_ub(m) = 1.0;
  const LpResult r = solve_lp(margin, tol);
  return r.status == LpStatus::Optimal && r.value >= -tol;
}

LpResult solve_lp_direct(const LpProblem& problem, double tol) {
  const int n = static_cast<int>(problem.c.size());
  const int m_ub = static_cast<int>(problem.b_ub.size());
  const int m_eq = static_cast<int>(problem.b_eq.size());
  const int m = m_ub + m_eq;

  if (m_ub > 0 && problem.a_ub.cols() != n)
    throw DimensionMismatch("solve_lp: a_ub column count");
  if (m_eq > 0 && problem.a_eq.cols() != n)
    throw DimensionMismatch("solve_lp: a_eq column count");

  LpResult result;
  if (m == 0) {
    // No constraints: optimum exists only for a zero objective.
    if (problem.c.lpNorm<Eigen::Infinity>() <= tol) {
      result.status = LpStatus::Optimal;
      result.x = Eigen::VectorXd::Zero(n);
      result.value = 0.0;
    } else {
      result.status = LpStatus::Unbounded;
    }
    return result;
  }

  // Free variables are split x = xp - xm; every <= row gets a slack.
  const int nv = 2 * n + m_ub;
  const int ncols = nv + m;  // artificials appended (one per row, most unused)
  Tableau tab(m, ncols);

  std::vector<bool> is_artificial(ncols, false);
  std::vector<bool> active(ncols, true);
  int n_art = 0;

  for (int i = 0; i < m; ++i) {
    const bool ub_row = i < m_ub;
    Eigen::VectorXd a = ub_row ? Eigen::VectorXd(problem.a_ub.row(i))
                               : Eigen::VectorXd(problem.a_eq.row(i - m_ub));
    double b = ub_row ? problem.b_ub(i) : problem.b_eq(i - m_ub);
    // Row equilibration keeps the pivot tolerance meaningful when
    // constraint rows span many orders of magnitude.
    const double scale = a.lpNorm<Eigen::Infinity>();
    if (scale > 0.0) {
      a /= scale;
      b /= scale;
    }
    double slack_sign = 1.0;
    if (b < 0) {
      a = -a;
      b = -b;
      slack_sign = -1.0;
    }
    for (int j = 0; j < n; ++j) {
      tab.at(i, j) = a(j);
      tab.at(i, n + j) = -a(j);
    }
    if (ub_row) tab.at(i, 2 * n + i) = slack_sign;
    tab.at(i, ncols) = b;

    if (ub_row && slack_sign > 0) {
      tab.set_basis(i, 2 * n + i);
    } else {
      const int art = nv + i;
      tab.at(i, art) = 1.0;
      tab.set_basis(i, art);
      is_artificial[art] = true;
      ++n_art;
    }
  }

  if (n_art > 0) {
    std::vector<double> phase1(ncols, 0.0);
    for (int j = 0; j < ncols; ++j)
      if (is_artificial[j]) phase1[j] = 1.0;
    tab.install_costs(phase1);
    tab.iterate(active, tol);  // bounded below by zero; see dual-form note

    double art_sum = 0.0;
    for (int i = 0; i < tab.rows(); ++i)
      if (is_artificial[tab.basis(i)]) art_sum += tab.rhs(i);
    if (art_sum > 1e-7) {
      result.status = LpStatus::Infeasible;
      return result;
    }

    // Pivot remaining (zero-valued) artificials out, dropping redundant rows.
    for (int i = tab.rows() - 1; i >= 0; --i) {
      if (!is_artificial[tab.basis(i)]) continue;
      int col = -1;
      for (int j = 0; j < nv; ++j) {
        if (std::abs(tab.at(i, j)) > tol) {
          col = j;
          break;
        }
      }
      if (col >= 0)
        tab.pivot(i, col);
      else
        tab.drop_row(i);
    }
    for (int j = 0; j < ncols; ++j)
      if (is_artificial[j]) active[j] = false;
  }

  // Phase 2: minimize -c'x over (xp, xm).
  std::vector<double> phase2(ncols, 0.0);
  for (int j = 0; j < n; ++j) {
    phase2[j] = -problem.c(j);
    phase2[n + j] = problem.c(j);
  }
  tab.install_costs(phase2);
  const LpStatus status = tab.iterate(active, tol);
  if (status == LpStatus::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  Eigen::VectorXd split = Eigen::VectorXd::Zero(nv);
  for (int i = 0; i < tab.rows(); ++i) {
    const int j = tab.basis(i);
    if (j < nv) split(j) = tab.rhs(i);
  }
  result.status = LpStatus::Optimal;
  result.x = split.head(n) - split.segment(n, n);
  result.value = problem.c.dot(result.x);
  return result;
}

LpResult maximize_over_rows(const Eigen::VectorXd& direction,
                            const Eigen::MatrixXd& a,
                            const Eigen::VectorXd& b,
                            double tol) {
  LpProblem problem;
  problem.c = direction;
  problem.a_ub = a;
  problem.b_ub = b;
  return solve_lp(problem, tol);
}

}  // namespace polytube
