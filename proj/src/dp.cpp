#include "polytube/dp.hpp"

#include <cmath>

#include "polytube/errors.hpp"

namespace polytube {

StateGrid::StateGrid(GridSpec spec) : spec_(std::move(spec)) {
  const int n = static_cast<int>(spec_.points.size());
  if (spec_.lo.size() != n || spec_.hi.size() != n)
    throw DimensionMismatch("StateGrid: bounds vs points");
  total_ = 1;
  for (int j = 0; j < n; ++j) {
    if (spec_.points[static_cast<size_t>(j)] < 2)
      throw Error("StateGrid: need >= 2 points per dimension");
    if (!std::isfinite(spec_.lo(j)) || !std::isfinite(spec_.hi(j)) ||
        spec_.hi(j) <= spec_.lo(j))
      throw Error("StateGrid: invalid bounds");
    total_ *= spec_.points[static_cast<size_t>(j)];
    if (total_ > spec_.cell_cap)
      throw GridCapExceeded("StateGrid: grid larger than the configured cap");
  }
  step_.resize(n);
  strides_.resize(n);
  long stride = 1;
  for (int j = n - 1; j >= 0; --j) {
    step_[static_cast<size_t>(j)] =
        (spec_.hi(j) - spec_.lo(j)) / (spec_.points[static_cast<size_t>(j)] - 1);
    strides_[static_cast<size_t>(j)] = stride;
    stride *= spec_.points[static_cast<size_t>(j)];
  }
}

double StateGrid::cell_volume() const {
  double v = 1.0;
  for (const double s : step_) v *= s;
  return v;
}

Vector StateGrid::center(long flat) const {
  const int n = dims();
  Vector x(n);
  for (int j = 0; j < n; ++j) {
    const long i = (flat / strides_[static_cast<size_t>(j)]) %
                   spec_.points[static_cast<size_t>(j)];
    x(j) = spec_.lo(j) + static_cast<double>(i) * step_[static_cast<size_t>(j)];
  }
  return x;
}

long StateGrid::index_of(const std::vector<int>& idx) const {
  long flat = 0;
  for (int j = 0; j < dims(); ++j)
    flat += strides_[static_cast<size_t>(j)] * idx[static_cast<size_t>(j)];
  return flat;
}

std::vector<int> StateGrid::tuple_of(long flat) const {
  std::vector<int> idx(static_cast<size_t>(dims()));
  for (int j = 0; j < dims(); ++j)
    idx[static_cast<size_t>(j)] =
        static_cast<int>((flat / strides_[static_cast<size_t>(j)]) %
                         spec_.points[static_cast<size_t>(j)]);
  return idx;
}

long StateGrid::nearest(const Vector& x, bool* inside) const {
  if (inside) *inside = true;
  long flat = 0;
  for (int j = 0; j < dims(); ++j) {
    const double pos = (x(j) - spec_.lo(j)) / step_[static_cast<size_t>(j)];
    long i = std::lround(pos);
    const long last = spec_.points[static_cast<size_t>(j)] - 1;
    if (i < 0 || i > last) {
      if (inside) *inside = false;
      i = std::min(std::max(i, 0L), last);
    }
    flat += strides_[static_cast<size_t>(j)] * i;
  }
  return flat;
}

std::vector<Vector> input_grid(const HPolytope& input_space, int points) {
  if (points < 1) throw Error("input_grid: need at least one point");
  const auto [lo, hi] = input_space.bounding_box();
  const int m = input_space.dim();
  std::vector<Vector> out;
  std::vector<int> idx(static_cast<size_t>(m), 0);
  while (true) {
    Vector u(m);
    for (int j = 0; j < m; ++j) {
      u(j) = (points == 1)
                 ? 0.5 * (lo(j) + hi(j))
                 : lo(j) + idx[static_cast<size_t>(j)] * (hi(j) - lo(j)) /
                               (points - 1);
    }
    if (input_space.contains(u, 1e-9)) out.push_back(u);
    int j = m - 1;
    while (j >= 0 && ++idx[static_cast<size_t>(j)] == points) {
      idx[static_cast<size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }
  if (out.empty()) throw Error("input_grid: no grid point inside the input space");
  return out;
}

namespace {

// Per-axis window of node indices within +/-5 sigma of the mean, extended
// virtually past the grid edge so the normalizer sees the full truncated
// kernel.
struct AxisWindow {
  long first = 0;
  long last = -1;
};

}  // namespace

std::vector<Eigen::VectorXd> stochastic_value_iteration(
    const LtvSystem& sys, const TargetTube& tube, const GaussianDisturbance& g,
    const StateGrid& grid) {
  if (tube.horizon() != sys.horizon())
    throw HorizonMismatch("stochastic_value_iteration");
  if (g.dim() != sys.dim())
    throw DimensionMismatch("stochastic_value_iteration: disturbance dim");
  const int n = grid.dims();
  if (n != sys.dim())
    throw DimensionMismatch("stochastic_value_iteration: grid dim");
  const int horizon = sys.horizon();
  const long cells = grid.size();

  const Eigen::LLT<Matrix> llt(g.cov());
  const Matrix cov_inv = llt.solve(Matrix::Identity(n, n));
  Vector sigma(n);
  for (int j = 0; j < n; ++j) sigma(j) = std::sqrt(g.cov()(j, j));
  const double volume = grid.cell_volume();

  const std::vector<Vector> inputs = input_grid(sys.input_space(),
                                                grid.spec().input_points);

  std::vector<Eigen::VectorXd> values(static_cast<size_t>(horizon) + 1);
  values[static_cast<size_t>(horizon)] = Eigen::VectorXd::Zero(cells);
  for (long cell = 0; cell < cells; ++cell)
    values[static_cast<size_t>(horizon)](cell) =
        tube.at(horizon).contains(grid.center(cell)) ? 1.0 : 0.0;

  std::vector<AxisWindow> window(static_cast<size_t>(n));
  std::vector<long> idx(static_cast<size_t>(n));

  for (int k = horizon - 1; k >= 0; --k) {
    const Matrix a = sys.a(k);
    const Matrix b = sys.b(k);
    const Eigen::VectorXd& next = values[static_cast<size_t>(k) + 1];
    Eigen::VectorXd layer = Eigen::VectorXd::Zero(cells);

    for (long cell = 0; cell < cells; ++cell) {
      const Vector x = grid.center(cell);
      if (!tube.at(k).contains(x)) continue;
      double best = 0.0;
      for (const Vector& u : inputs) {
        const Vector mean = a * x + b * u + g.mean();
        // Node-index window covering +/-5 sigma (virtual indices allowed).
        bool degenerate = false;
        for (int j = 0; j < n; ++j) {
          const double lo_j = mean(j) - 5.0 * sigma(j);
          const double hi_j = mean(j) + 5.0 * sigma(j);
          auto& w = window[static_cast<size_t>(j)];
          w.first = std::lround(std::ceil(
              (lo_j - grid.spec().lo(j)) / grid.step(j) - 0.5));
          w.last = std::lround(std::floor(
              (hi_j - grid.spec().lo(j)) / grid.step(j) + 0.5));
          if (w.last < w.first) degenerate = true;
          idx[static_cast<size_t>(j)] = w.first;
        }
        if (degenerate) continue;

        double normalizer = 0.0;
        double acc = 0.0;
        while (true) {
          Vector y(n);
          bool in_grid = true;
          long flat = 0;
          for (int j = 0; j < n; ++j) {
            const long i = idx[static_cast<size_t>(j)];
            y(j) = grid.spec().lo(j) + i * grid.step(j);
            if (i < 0 ||
                i >= grid.spec().points[static_cast<size_t>(j)])
              in_grid = false;
          }
          const Vector d = y - mean;
          const double weight =
              std::exp(-0.5 * d.dot(cov_inv * d)) * volume;
          normalizer += weight;
          if (in_grid) {
            std::vector<int> ii(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j)
              ii[static_cast<size_t>(j)] =
                  static_cast<int>(idx[static_cast<size_t>(j)]);
            flat = grid.index_of(ii);
            acc += weight * next(flat);
          }
          int j = n - 1;
          while (j >= 0 &&
                 ++idx[static_cast<size_t>(j)] >
                     window[static_cast<size_t>(j)].last) {
            idx[static_cast<size_t>(j)] = window[static_cast<size_t>(j)].first;
            --j;
          }
          if (j < 0) break;
        }
        if (normalizer > 0.0) best = std::max(best, acc / normalizer);
      }
      layer(cell) = std::min(1.0, best);
    }
    values[static_cast<size_t>(k)] = std::move(layer);
  }
  return values;
}

std::vector<std::uint8_t> alpha_level_cells(const Eigen::VectorXd& values,
                                            double alpha) {
  if (alpha < 0.0 || alpha > 1.0)
    throw InvalidProbability("alpha_level_cells: alpha must be in [0,1]");
  std::vector<std::uint8_t> mask(static_cast<size_t>(values.size()));
  for (long i = 0; i < values.size(); ++i)
    mask[static_cast<size_t>(i)] = values(i) >= alpha ? 1 : 0;
  return mask;
}

double interpolate_value(const StateGrid& grid, const Eigen::VectorXd& values,
                         const Vector& x) {
  const int n = grid.dims();
  std::vector<int> base(static_cast<size_t>(n));
  std::vector<double> frac(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    double pos = (x(j) - grid.spec().lo(j)) / grid.step(j);
    const int last = grid.spec().points[static_cast<size_t>(j)] - 1;
    pos = std::min(std::max(pos, 0.0), static_cast<double>(last));
    int i = static_cast<int>(std::floor(pos));
    if (i >= last) i = last - 1;
    base[static_cast<size_t>(j)] = i;
    frac[static_cast<size_t>(j)] = pos - i;
  }
  double total = 0.0;
  for (int corner = 0; corner < (1 << n); ++corner) {
    double weight = 1.0;
    std::vector<int> idx = base;
    for (int j = 0; j < n; ++j) {
      if (corner & (1 << j)) {
        weight *= frac[static_cast<size_t>(j)];
        idx[static_cast<size_t>(j)] += 1;
      } else {
        weight *= 1.0 - frac[static_cast<size_t>(j)];
      }
    }
    if (weight > 0.0) total += weight * values(grid.index_of(idx));
  }
  return total;
}

MinmaxResult minmax_value_iteration(const LtvSystem& sys,
                                    const TargetTube& tube,
                                    const Matrix& w_points,
                                    const StateGrid& grid) {
  if (tube.horizon() != sys.horizon())
    throw HorizonMismatch("minmax_value_iteration");
  const int n = grid.dims();
  if (n != sys.dim())
    throw DimensionMismatch("minmax_value_iteration: grid dim");
  if (w_points.cols() != n)
    throw DimensionMismatch("minmax_value_iteration: disturbance points");
  const int horizon = sys.horizon();
  const long cells = grid.size();

  const std::vector<Vector> inputs = input_grid(sys.input_space(),
                                                grid.spec().input_points);

  MinmaxResult out;
  out.cost.resize(static_cast<size_t>(horizon) + 1);
  out.cost[static_cast<size_t>(horizon)] = Eigen::VectorXi::Zero(cells);
  for (long cell = 0; cell < cells; ++cell)
    out.cost[static_cast<size_t>(horizon)](cell) =
        tube.at(horizon).contains(grid.center(cell)) ? 0 : 1;

  for (int k = horizon - 1; k >= 0; --k) {
    const Matrix a = sys.a(k);
    const Matrix b = sys.b(k);
    const Eigen::VectorXi& next = out.cost[static_cast<size_t>(k) + 1];
    Eigen::VectorXi layer(cells);
    const int worst_remaining = horizon - k;  // all of g_{k+1}..g_N violated

    for (long cell = 0; cell < cells; ++cell) {
      const Vector x = grid.center(cell);
      const int g_here = tube.at(k).contains(x) ? 0 : 1;
      int best_u = worst_remaining + g_here;
      for (const Vector& u : inputs) {
        const Vector base = a * x + b * u;
        int worst_w = 0;
        for (int wi = 0; wi < w_points.rows(); ++wi) {
          const Vector y = base + w_points.row(wi).transpose();
          bool inside = true;
          const long flat = grid.nearest(y, &inside);
          int cost;
          if (inside)
            cost = next(flat);
          else
            cost = tube.at(k + 1).contains(y) ? next(flat) : worst_remaining;
          worst_w = std::max(worst_w, cost);
          if (worst_w >= best_u) break;  // cannot improve this input
        }
        best_u = std::min(best_u, worst_w + g_here);
        if (best_u == g_here) break;  // already optimal
      }
      layer(cell) = best_u;
    }
    out.cost[static_cast<size_t>(k)] = std::move(layer);
  }

  out.zero_level.resize(static_cast<size_t>(cells));
  for (long cell = 0; cell < cells; ++cell)
    out.zero_level[static_cast<size_t>(cell)] =
        out.cost[0](cell) == 0 ? 1 : 0;
  return out;
}

}  // namespace polytube
