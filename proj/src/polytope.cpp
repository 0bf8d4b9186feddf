#include "polytube/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "polytube/detail/geometry_internal.hpp"
#include "polytube/ellipsoid.hpp"
#include "polytube/errors.hpp"
#include "polytube/lp.hpp"

namespace polytube {

namespace {

constexpr double kRowTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

namespace detail {

HPolytope light_normalize(const HPolytope& p) {
  if (p.flagged_empty()) return HPolytope::empty(p.dim());
  std::vector<Vector> rows;
  std::vector<double> offs;
  const Vector fb = p.folded_b();
  for (int i = 0; i < p.a().rows(); ++i) {
    const double norm = p.a().row(i).norm();
    if (norm < 1e-12) {
      if (fb(i) < -kRowTol) return HPolytope::empty(p.dim());
      continue;
    }
    rows.push_back(p.a().row(i).transpose() / norm);
    offs.push_back(fb(i) / norm);
  }
  std::vector<Vector> mrows;
  std::vector<double> moffs;
  for (size_t i = 0; i < rows.size(); ++i) {
    bool merged = false;
    for (size_t j = 0; j < mrows.size(); ++j) {
      if ((rows[i] - mrows[j]).lpNorm<Eigen::Infinity>() <= kRowTol) {
        moffs[j] = std::min(moffs[j], offs[i]);
        merged = true;
        break;
      }
    }
    if (!merged) {
      mrows.push_back(rows[i]);
      moffs.push_back(offs[i]);
    }
  }
  const int q = static_cast<int>(mrows.size());
  Matrix a(q, p.dim());
  Vector b(q);
  for (int i = 0; i < q; ++i) {
    a.row(i) = mrows[i].transpose();
    b(i) = moffs[i];
  }
  return HPolytope(std::move(a), std::move(b));
}

Matrix drop_clearly_interior(const Matrix& points) {
  const int v = static_cast<int>(points.rows());
  const int dim = static_cast<int>(points.cols());
  if (v <= 24 || dim < 1) return points;

  std::mt19937 rng(7u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<int> anchors;
  const auto add_anchor = [&](const Vector& d) {
    int best = 0;
    (points * d).maxCoeff(&best);
    if (std::find(anchors.begin(), anchors.end(), best) == anchors.end())
      anchors.push_back(best);
  };
  for (int j = 0; j < dim; ++j) {
    Vector d = Vector::Zero(dim);
    d(j) = 1.0;
    add_anchor(d);
    add_anchor(-d);
  }
  for (int t = 0; t < 6 * dim + 8; ++t) {
    Vector d(dim);
    for (int j = 0; j < dim; ++j) d(j) = gauss(rng);
    if (d.norm() > 1e-9) add_anchor(d / d.norm());
  }

  Matrix anchor_pts(static_cast<int>(anchors.size()), dim);
  for (size_t i = 0; i < anchors.size(); ++i)
    anchor_pts.row(static_cast<int>(i)) = points.row(anchors[i]);
  const VPolytope anchor_hull(anchor_pts, dim);

  std::vector<int> survivors;
  for (int i = 0; i < v; ++i) {
    if (std::find(anchors.begin(), anchors.end(), i) != anchors.end() ||
        !anchor_hull.contains(points.row(i).transpose(), 1e-10))
      survivors.push_back(i);
  }
  Matrix out(static_cast<int>(survivors.size()), dim);
  for (size_t i = 0; i < survivors.size(); ++i)
    out.row(static_cast<int>(i)) = points.row(survivors[i]);
  return out;
}

}  // namespace detail

// --- HPolytope ---------------------------------------------------------------

HPolytope::HPolytope(Matrix a, Vector b)
    : dim_(static_cast<int>(a.cols())), a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.size())
    throw DimensionMismatch("HPolytope: row counts of A and b disagree");
  c_ = Vector::Zero(dim_);
}

HPolytope::HPolytope(Matrix a, Vector b, Vector c)
    : dim_(static_cast<int>(a.cols())),
      a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)) {
  if (a_.rows() != b_.size())
    throw DimensionMismatch("HPolytope: row counts of A and b disagree");
  if (c_.size() != dim_)
    throw DimensionMismatch("HPolytope: center length vs A columns");
}

HPolytope HPolytope::empty(int dim) {
  HPolytope p;
  p.dim_ = dim;
  p.a_ = Matrix::Zero(0, dim);
  p.b_ = Vector::Zero(0);
  p.c_ = Vector::Zero(dim);
  p.flagged_empty_ = true;
  return p;
}

HPolytope HPolytope::box(const Vector& lo, const Vector& hi) {
  const int n = static_cast<int>(lo.size());
  if (hi.size() != n) throw DimensionMismatch("HPolytope::box: lo vs hi");
  Matrix a(2 * n, n);
  Vector b(2 * n);
  a.topRows(n) = Matrix::Identity(n, n);
  a.bottomRows(n) = -Matrix::Identity(n, n);
  b.head(n) = hi;
  b.tail(n) = -lo;
  return HPolytope(std::move(a), std::move(b));
}

HPolytope HPolytope::cube(int dim, double half_width) {
  return box(Vector::Constant(dim, -half_width),
             Vector::Constant(dim, half_width));
}

HPolytope HPolytope::singleton(const Vector& point) {
  const int n = static_cast<int>(point.size());
  Matrix a(2 * n, n);
  a.topRows(n) = Matrix::Identity(n, n);
  a.bottomRows(n) = -Matrix::Identity(n, n);
  return HPolytope(std::move(a), Vector::Zero(2 * n), point);
}

bool HPolytope::contains(const Vector& y, double tol) const {
  if (flagged_empty_) return false;
  if (y.size() != dim_) throw DimensionMismatch("HPolytope::contains");
  return ((a_ * (y - c_) - b_).array() <= tol).all();
}

double HPolytope::violation(const Vector& y) const {
  if (flagged_empty_) return kInf;
  if (y.size() != dim_) throw DimensionMismatch("HPolytope::violation");
  double worst = -kInf;
  for (int i = 0; i < a_.rows(); ++i) {
    const double norm = a_.row(i).norm();
    if (norm < 1e-14) continue;
    worst = std::max(worst, (a_.row(i).dot(y - c_) - b_(i)) / norm);
  }
  return worst;
}

bool HPolytope::is_empty(double tol) const {
  if (flagged_empty_) return true;
  if (a_.rows() == 0) return false;  // whole space
  return !lp_feasible(a_, folded_b(), tol);
}

double HPolytope::support(const Vector& direction) const {
  if (direction.size() != dim_) throw DimensionMismatch("HPolytope::support");
  if (flagged_empty_) return -kInf;
  const LpResult r = maximize_over_rows(direction, a_, folded_b());
  switch (r.status) {
    case LpStatus::Optimal:
      return r.value;
    case LpStatus::Unbounded:
      return kInf;
    case LpStatus::Infeasible:
      return -kInf;
  }
  return -kInf;
}

Vector HPolytope::support_point(const Vector& direction) const {
  if (direction.size() != dim_)
    throw DimensionMismatch("HPolytope::support_point");
  if (flagged_empty_) throw EmptyInput("HPolytope::support_point: empty set");
  const LpResult r = maximize_over_rows(direction, a_, folded_b());
  if (r.status != LpStatus::Optimal)
    throw UnboundedPolytope("HPolytope::support_point: unbounded direction");
  return r.x;
}

bool HPolytope::is_bounded() const {
  if (flagged_empty_) return true;
  for (int j = 0; j < dim_; ++j) {
    Vector d = Vector::Zero(dim_);
    d(j) = 1.0;
    if (!std::isfinite(support(d))) return false;
    if (!std::isfinite(support(-d))) return false;
  }
  return true;
}

std::pair<Vector, Vector> HPolytope::bounding_box() const {
  if (flagged_empty_)
    throw EmptyInput("HPolytope::bounding_box: empty set");
  Vector lo(dim_), hi(dim_);
  for (int j = 0; j < dim_; ++j) {
    Vector d = Vector::Zero(dim_);
    d(j) = 1.0;
    const double up = support(d);
    const double dn = support(-d);
    if (!std::isfinite(up) || !std::isfinite(dn))
      throw UnboundedPolytope("HPolytope::bounding_box: unbounded polytope");
    hi(j) = up;
    lo(j) = -dn;
  }
  return {lo, hi};
}

std::optional<Vector> HPolytope::chebyshev_center() const {
  if (flagged_empty_) return std::nullopt;
  if (a_.rows() == 0) return Vector::Zero(dim_);
  // maximize r subject to a_i'x + |a_i| r <= b_i, r >= 0.
  const int q = num_facets();
  LpProblem prob;
  prob.c = Vector::Zero(dim_ + 1);
  prob.c(dim_) = 1.0;
  prob.a_ub = Matrix(q + 1, dim_ + 1);
  prob.b_ub = Vector(q + 1);
  const Vector fb = folded_b();
  for (int i = 0; i < q; ++i) {
    prob.a_ub.row(i).head(dim_) = a_.row(i);
    prob.a_ub(i, dim_) = a_.row(i).norm();
    prob.b_ub(i) = fb(i);
  }
  prob.a_ub.row(q).setZero();
  prob.a_ub(q, dim_) = -1.0;
  prob.b_ub(q) = 0.0;
  const LpResult r = solve_lp(prob);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return Vector(r.x.head(dim_));
}

namespace {

HPolytope select_rows(const Matrix& a, const Vector& b,
                      const std::vector<bool>& keep) {
  int kept = 0;
  for (const bool k : keep) kept += k ? 1 : 0;
  Matrix ra(kept, a.cols());
  Vector rb(kept);
  int r = 0;
  for (int i = 0; i < a.rows(); ++i) {
    if (!keep[static_cast<size_t>(i)]) continue;
    ra.row(r) = a.row(i);
    rb(r) = b(i);
    ++r;
  }
  return HPolytope(std::move(ra), std::move(rb));
}

// Redundancy by one LP per row: maximize a_i'y over the other rows (row i
// relaxed so the LP stays bounded).
HPolytope lp_reduce(const Matrix& a, const Vector& b) {
  const int q = static_cast<int>(a.rows());
  const int dim = static_cast<int>(a.cols());
  std::vector<bool> keep(q, true);
  for (int i = 0; i < q; ++i) {
    int rows_kept = 0;
    for (int j = 0; j < q; ++j) rows_kept += (keep[j] && j != i) ? 1 : 0;
    if (rows_kept == 0) break;  // last remaining row is never redundant
    Matrix sub(rows_kept + 1, dim);
    Vector sb(rows_kept + 1);
    int r = 0;
    for (int j = 0; j < q; ++j) {
      if (!keep[j] || j == i) continue;
      sub.row(r) = a.row(j);
      sb(r) = b(j);
      ++r;
    }
    sub.row(r) = a.row(i);
    sb(r) = b(i) + 1.0;
    const LpResult res = maximize_over_rows(a.row(i).transpose(), sub, sb);
    if (res.status == LpStatus::Optimal && res.value <= b(i) + kRowTol)
      keep[i] = false;
  }
  return select_rows(a, b, keep);
}

}  // namespace

HPolytope HPolytope::normalized() const {
  const HPolytope folded = detail::light_normalize(*this);
  if (folded.flagged_empty()) return empty(dim_);
  if (folded.num_facets() == 0) return folded;  // whole space
  if (folded.is_empty()) return empty(dim_);
  return lp_reduce(folded.a(), folded.b());
}

// --- VPolytope ---------------------------------------------------------------

VPolytope::VPolytope(Matrix vertices, int dim)
    : dim_(dim), vertices_(std::move(vertices)) {
  if (vertices_.rows() > 0 && vertices_.cols() != dim_)
    throw DimensionMismatch("VPolytope: vertex length vs dim");
  if (vertices_.rows() == 0) vertices_.resize(0, dim_);
}

VPolytope::VPolytope(Matrix vertices)
    : VPolytope(vertices, static_cast<int>(vertices.cols())) {
  if (vertices_.rows() == 0)
    throw DimensionMismatch("VPolytope: dimension unknown for empty list");
}

VPolytope VPolytope::empty(int dim) { return VPolytope(Matrix(0, dim), dim); }

VPolytope VPolytope::singleton(const Vector& point) {
  Matrix v(1, point.size());
  v.row(0) = point.transpose();
  return VPolytope(std::move(v));
}

bool VPolytope::contains(const Vector& y, double tol) const {
  if (y.size() != dim_) throw DimensionMismatch("VPolytope::contains");
  const int v = num_vertices();
  if (v == 0) return false;
  if (v == 1) return (vertices_.row(0).transpose() - y).lpNorm<Eigen::Infinity>() <= tol;
  // Separation LP over the hyperplane (a, b) with |a|_inf <= 1:
  //   maximize a'y - b  subject to  a'v_i - b <= 0.
  // The optimum is 0 exactly when y lies in the hull; otherwise it is the
  // (inf-norm calibrated) separation margin. Starts from the slack basis, so
  // no phase-1 artifacts on these highly degenerate instances.
  LpProblem prob;
  prob.c = Vector(dim_ + 1);
  prob.c.head(dim_) = y;
  prob.c(dim_) = -1.0;
  prob.a_ub = Matrix(v + 2 * dim_, dim_ + 1);
  prob.b_ub = Vector::Zero(v + 2 * dim_);
  prob.a_ub.topRows(v).leftCols(dim_) = vertices_;
  prob.a_ub.topRows(v).rightCols(1).setConstant(-1.0);
  prob.a_ub.middleRows(v, dim_).setZero();
  prob.a_ub.middleRows(v, dim_).leftCols(dim_) = Matrix::Identity(dim_, dim_);
  prob.a_ub.bottomRows(dim_).setZero();
  prob.a_ub.bottomRows(dim_).leftCols(dim_) = -Matrix::Identity(dim_, dim_);
  prob.b_ub.tail(2 * dim_).setOnes();
  const LpResult r = solve_lp(prob, 1e-10);
  return r.status == LpStatus::Optimal && r.value <= tol;
}

double VPolytope::support(const Vector& direction) const {
  if (direction.size() != dim_) throw DimensionMismatch("VPolytope::support");
  if (is_empty()) return -kInf;
  return (vertices_ * direction).maxCoeff();
}

Vector VPolytope::support_point(const Vector& direction) const {
  if (direction.size() != dim_)
    throw DimensionMismatch("VPolytope::support_point");
  if (is_empty()) throw EmptyInput("VPolytope::support_point: empty set");
  int best = 0;
  (vertices_ * direction).maxCoeff(&best);
  return vertices_.row(best);
}

VPolytope VPolytope::normalized() const {
  const int v = num_vertices();
  if (v == 0) return *this;

  // Deduplicate.
  std::vector<int> uniq;
  for (int i = 0; i < v; ++i) {
    bool dup = false;
    for (const int j : uniq) {
      if ((vertices_.row(i) - vertices_.row(j)).lpNorm<Eigen::Infinity>() <=
          1e-9) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(i);
  }
  Matrix pts(static_cast<int>(uniq.size()), dim_);
  for (size_t i = 0; i < uniq.size(); ++i)
    pts.row(static_cast<int>(i)) = vertices_.row(uniq[i]);
  pts = detail::drop_clearly_interior(pts);

  // Keep only extreme points: a point is dropped when it lies in the hull of
  // the other survivors.
  std::vector<int> kept(static_cast<size_t>(pts.rows()));
  for (size_t i = 0; i < kept.size(); ++i) kept[i] = static_cast<int>(i);
  for (size_t i = 0; i < kept.size();) {
    const int vi = kept[i];
    if (kept.size() == 1) break;
    Matrix others(static_cast<int>(kept.size()) - 1, dim_);
    int r = 0;
    for (size_t j = 0; j < kept.size(); ++j) {
      if (j == i) continue;
      others.row(r++) = pts.row(kept[j]);
    }
    const VPolytope hull_others(others, dim_);
    if (hull_others.contains(pts.row(vi).transpose(), 1e-9))
      kept.erase(kept.begin() + i);
    else
      ++i;
  }

  Matrix out(static_cast<int>(kept.size()), dim_);
  for (size_t i = 0; i < kept.size(); ++i)
    out.row(static_cast<int>(i)) = pts.row(kept[i]);
  return VPolytope(std::move(out), dim_);
}

// --- Operations --------------------------------------------------------------

HPolytope affine_map(const HPolytope& p, const Matrix& m, const Vector& t,
                     double* cond) {
  if (m.cols() != p.dim())
    throw DimensionMismatch("affine_map: matrix columns vs polytope dim");
  if (t.size() != m.rows())
    throw DimensionMismatch("affine_map: translation vs matrix rows");
  if (m.rows() != m.cols())
    throw NonInvertibleMap("affine_map: H-rep needs a square map");
  if (p.flagged_empty()) return HPolytope::empty(static_cast<int>(m.rows()));

  const Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (cond) *cond = (smin > 0) ? smax / smin : kInf;
  if (smin <= 1e-12 * std::max(1.0, smax))
    throw NonInvertibleMap("affine_map: singular map for H-rep input");

  // {Mx + t : A(x - c) <= b} = {y : (A M^-1)(y - (M c + t)) <= b}.
  const Matrix minv = m.inverse();
  return HPolytope(p.a() * minv, p.b(), m * p.center() + t);
}

VPolytope affine_map(const VPolytope& p, const Matrix& m, const Vector& t) {
  if (m.cols() != p.dim())
    throw DimensionMismatch("affine_map: matrix columns vs polytope dim");
  if (t.size() != m.rows())
    throw DimensionMismatch("affine_map: translation vs matrix rows");
  if (p.is_empty()) return VPolytope::empty(static_cast<int>(m.rows()));
  Matrix mapped = p.vertices() * m.transpose();
  mapped.rowwise() += t.transpose();
  return VPolytope(std::move(mapped), static_cast<int>(m.rows()));
}

HPolytope preimage_under_linear(const HPolytope& p, const Matrix& m) {
  if (m.rows() != p.dim())
    throw DimensionMismatch("preimage_under_linear: matrix rows vs dim");
  if (m.rows() != m.cols())
    throw DimensionMismatch("preimage_under_linear: matrix must be square");
  if (p.flagged_empty()) return HPolytope::empty(static_cast<int>(m.cols()));
  // {x : A(Mx - c) <= b} = {x : (A M) x <= b + A c}.
  return HPolytope(p.a() * m, p.folded_b());
}

VPolytope minkowski_sum(const VPolytope& p, const VPolytope& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("minkowski_sum: dimensions");
  if (p.is_empty() || q.is_empty()) return VPolytope::empty(p.dim());
  return VPolytope(detail::minkowski_candidates(p, q), p.dim()).normalized();
}

namespace {

template <typename SupportFn>
HPolytope pontryagin_impl(const HPolytope& p, SupportFn&& h_q) {
  const HPolytope pn = p.normalized();
  if (pn.flagged_empty()) return HPolytope::empty(p.dim());
  Vector b = pn.b();
  for (int i = 0; i < pn.num_facets(); ++i) {
    const double h = h_q(Vector(pn.a().row(i).transpose()));
    if (!std::isfinite(h))
      throw UnboundedSubtrahend("pontryagin_diff: unbounded subtrahend");
    b(i) -= h;
  }
  return HPolytope(pn.a(), std::move(b)).normalized();
}

}  // namespace

HPolytope pontryagin_diff(const HPolytope& p, const HPolytope& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("pontryagin_diff");
  if (q.is_empty()) throw EmptyInput("pontryagin_diff: empty subtrahend");
  return pontryagin_impl(p, [&q](const Vector& d) { return q.support(d); });
}

HPolytope pontryagin_diff(const HPolytope& p, const VPolytope& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("pontryagin_diff");
  if (q.is_empty()) throw EmptyInput("pontryagin_diff: empty subtrahend");
  return pontryagin_impl(p, [&q](const Vector& d) { return q.support(d); });
}

HPolytope pontryagin_diff(const HPolytope& p, const Ellipsoid& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("pontryagin_diff");
  return pontryagin_impl(p, [&q](const Vector& d) { return q.support(d); });
}

HPolytope intersect(const HPolytope& p, const HPolytope& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("intersect: dimensions");
  if (p.flagged_empty() || q.flagged_empty())
    return HPolytope::empty(p.dim());
  Matrix a(p.num_facets() + q.num_facets(), p.dim());
  Vector b(a.rows());
  a.topRows(p.num_facets()) = p.a();
  a.bottomRows(q.num_facets()) = q.a();
  b.head(p.num_facets()) = p.folded_b();
  b.tail(q.num_facets()) = q.folded_b();
  return HPolytope(std::move(a), std::move(b)).normalized();
}

VPolytope convex_hull(const std::vector<VPolytope>& parts) {
  if (parts.empty()) throw EmptyList("convex_hull: no operands");
  const int n = parts.front().dim();
  int total = 0;
  for (const auto& p : parts) {
    if (p.dim() != n) throw DimensionMismatch("convex_hull: dimensions");
    total += p.num_vertices();
  }
  Matrix all(total, n);
  int r = 0;
  for (const auto& p : parts) {
    all.middleRows(r, p.num_vertices()) = p.vertices();
    r += p.num_vertices();
  }
  return VPolytope(std::move(all), n).normalized();
}

HPolytope slice(const HPolytope& p, const std::vector<int>& coords,
                const std::vector<double>& values) {
  if (coords.size() != values.size())
    throw DimensionMismatch("slice: coords vs values");
  if (p.flagged_empty())
    return HPolytope::empty(p.dim() - static_cast<int>(coords.size()));
  std::vector<bool> fixed(p.dim(), false);
  Vector point = Vector::Zero(p.dim());
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= p.dim())
      throw IndexOutOfRange("slice: coordinate index");
    fixed[coords[i]] = true;
    point(coords[i]) = values[i];
  }
  const int m = p.dim() - static_cast<int>(coords.size());
  Matrix a(p.num_facets(), m);
  Vector b = p.folded_b() - p.a() * point;  // move fixed part to the rhs
  int col = 0;
  for (int j = 0; j < p.dim(); ++j) {
    if (fixed[j]) continue;
    a.col(col++) = p.a().col(j);
  }
  return HPolytope(std::move(a), std::move(b)).normalized();
}

}  // namespace polytube
