#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "polytube/detail/geometry_internal.hpp"
#include "polytube/errors.hpp"
#include "polytube/lp.hpp"
#include "polytube/polytope.hpp"

// Vertex enumeration by incremental halfspace insertion: start from a box
// known to contain the polytope, insert one facet at a time, and build the
// new vertices on the cut hyperplane from crossing edges. Adjacency of two
// vertices is decided combinatorially from their sets of tight facets.
// Facet enumeration runs vertex enumeration on the polar dual. Redundant
// rows cost little here (they cut nothing), so callers may pass raw row
// lists.

namespace polytube {

namespace {

constexpr double kTol = 1e-9;

using TightSet = std::vector<std::uint64_t>;

TightSet make_tight(int bits) { return TightSet((bits + 63) / 64, 0); }

void set_bit(TightSet& t, int i) { t[i / 64] |= (std::uint64_t{1} << (i % 64)); }

bool get_bit(const TightSet& t, int i) {
  return (t[i / 64] >> (i % 64)) & 1u;
}

TightSet intersect_bits(const TightSet& a, const TightSet& b) {
  TightSet out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

int popcount(const TightSet& t) {
  int c = 0;
  for (const auto w : t) c += __builtin_popcountll(w);
  return c;
}

bool is_subset(const TightSet& a, const TightSet& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

struct DdVertex {
  Vector point;
  TightSet tight;
};

// All vertices of the axis box [lo, hi] with their box-facet tight sets.
// Box facets use ids q..q+2n-1 after the q real facets.
std::vector<DdVertex> box_corners(const Vector& lo, const Vector& hi, int q,
                                  int total_bits) {
  const int n = static_cast<int>(lo.size());
  std::vector<DdVertex> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    DdVertex v;
    v.point = Vector(n);
    v.tight = make_tight(total_bits);
    for (int j = 0; j < n; ++j) {
      if (mask & (1 << j)) {
        v.point(j) = hi(j);
        set_bit(v.tight, q + j);  // x_j <= hi_j
      } else {
        v.point(j) = lo(j);
        set_bit(v.tight, q + n + j);  // -x_j <= -lo_j
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Inserts facet `row` (bit id `row_id`), cutting the current vertex list.
// `a` and `b` include all facets processed so far plus the box rows, so new
// vertices can be re-scanned for incidental tightness.
bool insert_halfspace(std::vector<DdVertex>& verts, const Vector& row,
                      double offset, int row_id, const Matrix& a,
                      const Vector& b, const std::vector<bool>& processed,
                      int dim) {
  std::vector<double> s(verts.size());
  std::vector<int> in, on, out;
  for (size_t v = 0; v < verts.size(); ++v) {
    s[v] = row.dot(verts[v].point) - offset;
    if (s[v] > kTol)
      out.push_back(static_cast<int>(v));
    else if (s[v] >= -kTol)
      on.push_back(static_cast<int>(v));
    else
      in.push_back(static_cast<int>(v));
  }
  for (const int v : on) set_bit(verts[v].tight, row_id);
  if (out.empty()) return true;
  if (in.empty() && on.empty()) {
    verts.clear();
    return false;
  }

  std::vector<DdVertex> created;
  for (const int u : in) {
    for (const int w : out) {
      TightSet common = intersect_bits(verts[u].tight, verts[w].tight);
      if (popcount(common) < dim - 1) continue;
      bool adjacent = true;
      for (size_t v = 0; v < verts.size(); ++v) {
        if (static_cast<int>(v) == u || static_cast<int>(v) == w) continue;
        if (is_subset(common, verts[v].tight)) {
          adjacent = false;
          break;
        }
      }
      if (!adjacent) continue;

      const double t = s[u] / (s[u] - s[w]);
      DdVertex nv;
      nv.point = verts[u].point + t * (verts[w].point - verts[u].point);
      nv.tight = std::move(common);
      set_bit(nv.tight, row_id);
      // Incidental tightness against already-processed facets.
      for (int j = 0; j < a.rows(); ++j) {
        if (!processed[j] || get_bit(nv.tight, j)) continue;
        if (std::abs(a.row(j).dot(nv.point) - b(j)) <= 10 * kTol)
          set_bit(nv.tight, j);
      }
      bool merged = false;
      for (auto& existing : created) {
        if ((existing.point - nv.point).lpNorm<Eigen::Infinity>() <= kTol) {
          for (size_t k = 0; k < existing.tight.size(); ++k)
            existing.tight[k] |= nv.tight[k];
          merged = true;
          break;
        }
      }
      if (!merged) created.push_back(std::move(nv));
    }
  }

  std::vector<DdVertex> next;
  for (const int v : in) next.push_back(std::move(verts[v]));
  for (const int v : on) next.push_back(std::move(verts[v]));
  for (auto& nv : created) {
    bool merged = false;
    for (auto& existing : next) {
      if ((existing.point - nv.point).lpNorm<Eigen::Infinity>() <= kTol) {
        for (size_t k = 0; k < existing.tight.size(); ++k)
          existing.tight[k] |= nv.tight[k];
        merged = true;
        break;
      }
    }
    if (!merged) next.push_back(std::move(nv));
  }
  verts = std::move(next);
  return !verts.empty();
}

Matrix dedup_rows(const Matrix& rows, double tol) {
  std::vector<int> uniq;
  for (int i = 0; i < rows.rows(); ++i) {
    bool dup = false;
    for (const int j : uniq) {
      if ((rows.row(i) - rows.row(j)).lpNorm<Eigen::Infinity>() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(i);
  }
  Matrix out(static_cast<int>(uniq.size()), rows.cols());
  for (size_t i = 0; i < uniq.size(); ++i)
    out.row(static_cast<int>(i)) = rows.row(uniq[i]);
  return out;
}

// Facets of the full-dimensional hull of `points` (rows), which must contain
// the origin strictly inside. Returns (A, b) with b = 1. Columns are scaled
// to comparable magnitude first so needle-shaped hulls stay well conditioned
// through the dual.
std::pair<Matrix, Vector> dual_facets(const Matrix& points, int dim_cap) {
  const int r = static_cast<int>(points.cols());
  Vector col_scale(r);
  for (int j = 0; j < r; ++j) {
    const double s = points.col(j).cwiseAbs().maxCoeff();
    col_scale(j) = (s > 0.0) ? s : 1.0;
  }
  Matrix scaled = points;
  for (int j = 0; j < r; ++j) scaled.col(j) /= col_scale(j);

  const HPolytope dual(scaled, Vector::Ones(scaled.rows()));
  const VPolytope dual_vertices = to_vrep(dual, dim_cap);
  if (dual_vertices.is_empty())
    throw Error("facet enumeration: polar dual has no vertices");
  Matrix facets = dual_vertices.vertices();
  for (int j = 0; j < r; ++j) facets.col(j) /= col_scale(j);
  return {facets, Vector::Ones(facets.rows())};
}

}  // namespace

namespace detail {

Matrix dd_vertex_enumeration(const Matrix& rows, const Vector& offs,
                             const Vector& box_lo, const Vector& box_hi) {
  const int n = static_cast<int>(rows.cols());
  const int q = static_cast<int>(rows.rows());
  const int total_bits = q + 2 * n;

  Matrix all_rows(total_bits, n);
  Vector all_offs(total_bits);
  all_rows.topRows(q) = rows;
  all_offs.head(q) = offs;
  all_rows.middleRows(q, n) = Matrix::Identity(n, n);
  all_offs.segment(q, n) = box_hi;
  all_rows.bottomRows(n) = -Matrix::Identity(n, n);
  all_offs.tail(n) = -box_lo;

  std::vector<bool> processed(total_bits, false);
  for (int j = q; j < total_bits; ++j) processed[j] = true;

  std::vector<DdVertex> verts = box_corners(box_lo, box_hi, q, total_bits);
  for (int i = 0; i < q; ++i) {
    processed[i] = true;
    if (!insert_halfspace(verts, all_rows.row(i).transpose(), all_offs(i), i,
                          all_rows, all_offs, processed, n))
      return Matrix(0, n);
  }

  // A vertex still tight to an auxiliary box facet would have to lie on the
  // inflated box, which strictly contains the polytope; treat as numerical
  // debris.
  Matrix out(static_cast<int>(verts.size()), n);
  int r = 0;
  for (const auto& v : verts) {
    bool on_box = false;
    for (int j = q; j < total_bits; ++j)
      if (get_bit(v.tight, j)) on_box = true;
    if (!on_box) out.row(r++) = v.point.transpose();
  }
  out.conservativeResize(r, n);
  return dedup_rows(out, kTol);
}

Matrix minkowski_candidates(const VPolytope& p, const VPolytope& q) {
  Matrix sums(p.num_vertices() * q.num_vertices(), p.dim());
  int r = 0;
  for (int i = 0; i < p.num_vertices(); ++i)
    for (int j = 0; j < q.num_vertices(); ++j)
      sums.row(r++) = p.vertices().row(i) + q.vertices().row(j);
  return sums;
}

}  // namespace detail

VPolytope to_vrep(const HPolytope& p, int dim_cap) {
  const int n = p.dim();
  if (n > dim_cap)
    throw DimensionCapExceeded("to_vrep: dimension above configured cap");
  const HPolytope pn = detail::light_normalize(p);
  if (pn.flagged_empty() || pn.is_empty()) return VPolytope::empty(n);

  if (n == 1) {
    Vector one = Vector::Ones(1);
    const double hi = pn.support(one);
    const double lo = -pn.support(-one);
    if (!std::isfinite(hi) || !std::isfinite(lo))
      throw UnboundedPolytope("to_vrep: unbounded polytope");
    Matrix v(hi - lo > kTol ? 2 : 1, 1);
    v(0, 0) = lo;
    if (v.rows() == 2) v(1, 0) = hi;
    return VPolytope(std::move(v), 1);
  }

  auto [lo, hi] = pn.bounding_box();  // throws when unbounded
  // Equilibrate per axis: needle-shaped sets (position spans orders of
  // magnitude beyond velocity spans) corrupt the crossing arithmetic and the
  // tight-set combinatorics otherwise.
  Vector scale(n);
  for (int j = 0; j < n; ++j) scale(j) = std::max(hi(j) - lo(j), 1e-9);
  Matrix rows = pn.a() * scale.asDiagonal();
  Vector offs = pn.b();
  for (int i = 0; i < rows.rows(); ++i) {
    const double norm = rows.row(i).norm();
    rows.row(i) /= norm;
    offs(i) /= norm;
  }
  const Vector zlo = lo.cwiseQuotient(scale);
  const Vector zhi = hi.cwiseQuotient(scale);
  const Vector pad = 0.1 * (zhi - zlo).cwiseAbs() + Vector::Constant(n, 1.0);
  Matrix verts =
      detail::dd_vertex_enumeration(rows, offs, zlo - pad, zhi + pad);
  verts = verts * scale.asDiagonal();
  return VPolytope(std::move(verts), n);
}

HPolytope to_hrep(const VPolytope& p, int dim_cap) {
  const int n = p.dim();
  if (n > dim_cap)
    throw DimensionCapExceeded("to_hrep: dimension above configured cap");
  if (p.is_empty()) return HPolytope::empty(n);

  const Matrix verts =
      detail::drop_clearly_interior(dedup_rows(p.vertices(), kTol));
  const int v = static_cast<int>(verts.rows());
  if (v == 1)
    return detail::light_normalize(
        HPolytope::singleton(verts.row(0).transpose()));

  const Vector centroid = verts.colwise().mean();
  Matrix centered = verts;
  centered.rowwise() -= centroid.transpose();

  Eigen::JacobiSVD<Matrix> svd(centered,
                               Eigen::ComputeThinU | Eigen::ComputeFullV);
  const double smax = svd.singularValues()(0);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9 * std::max(1.0, smax)) ++rank;
  if (rank == 0)
    return detail::light_normalize(
        HPolytope::singleton(verts.row(0).transpose()));

  const bool full_dim = (rank == n);
  const Matrix basis = svd.matrixV().leftCols(rank);  // n x r
  const Matrix complement = svd.matrixV().rightCols(n - rank);
  const Matrix z = full_dim ? centered : Matrix(centered * basis);  // v x r

  Matrix hull_a;  // facets in subspace coordinates
  Vector hull_b;
  if (rank == 1) {
    const double zmax = z.col(0).maxCoeff();
    const double zmin = z.col(0).minCoeff();
    hull_a = Matrix(2, 1);
    hull_a << 1.0, -1.0;
    hull_b = Vector(2);
    hull_b << zmax, -zmin;
  } else {
    auto [da, db] = dual_facets(z, dim_cap);
    hull_a = da;
    hull_b = db;
  }

  const int extra = 2 * (n - rank);
  Matrix a(hull_a.rows() + extra, n);
  Vector b(hull_a.rows() + extra);
  a.topRows(hull_a.rows()) =
      full_dim ? hull_a : Matrix(hull_a * basis.transpose());
  b.head(hull_a.rows()) = hull_b;
  for (int j = 0; j < n - rank; ++j) {
    a.row(hull_a.rows() + 2 * j) = complement.col(j).transpose();
    a.row(hull_a.rows() + 2 * j + 1) = -complement.col(j).transpose();
    b(hull_a.rows() + 2 * j) = 0.0;
    b(hull_a.rows() + 2 * j + 1) = 0.0;
  }
  // Dual vertices are exactly the hull facets, so only row scaling and
  // duplicate cleanup are needed here.
  return detail::light_normalize(HPolytope(std::move(a), std::move(b), centroid));
}

}  // namespace polytube
