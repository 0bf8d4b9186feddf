#include "polytube/reach.hpp"

#include <algorithm>
#include <chrono>

#include "polytube/detail/geometry_internal.hpp"
#include "polytube/errors.hpp"

namespace polytube {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

HPolytope subtract(const HPolytope& p, const BoundedSet& w) {
  return std::visit([&p](const auto& s) { return pontryagin_diff(p, s); }, w);
}

// Vertices of -O; ellipsoids are replaced by their outer polytope first so
// the Minkowski sum stays a superset.
VPolytope reflected_vertices(const BoundedSet& o, const DirectionSet& dirs) {
  const int n = bounded_set_dim(o);
  const Matrix neg = -Matrix::Identity(n, n);
  const Vector zero = Vector::Zero(n);
  if (const auto* h = std::get_if<HPolytope>(&o))
    return affine_map(to_vrep(*h), neg, zero);
  if (const auto* v = std::get_if<VPolytope>(&o))
    return affine_map(*v, neg, zero);
  const auto& e = std::get<Ellipsoid>(o);
  return affine_map(to_vrep(outer_polytope(e, dirs)), neg, zero);
}

void check_inputs(const LtvSystem& sys, const TargetTube& tube,
                  const BoundedSet* set) {
  if (tube.horizon() != sys.horizon())
    throw HorizonMismatch("reach: tube length vs system horizon");
  if (tube.dim() != sys.dim())
    throw DimensionMismatch("reach: tube dimension vs system");
  if (set && bounded_set_dim(*set) != sys.dim())
    throw DimensionMismatch("reach: disturbance set dimension");
}

DirectionSet default_outer_dirs(int dim) {
  if (dim <= 2) return DirectionSet::equiangular(16);
  // Axis tangents only: the outer approximation is the ellipsoid's bounding
  // box. Looser than a faceted cover, but its vertex count (2^n) keeps the
  // Minkowski sums on the maximal path tractable above the plane.
  Matrix axes(2 * dim, dim);
  axes.topRows(dim) = Matrix::Identity(dim, dim);
  axes.bottomRows(dim) = -Matrix::Identity(dim, dim);
  return DirectionSet::from_rows(std::move(axes));
}

ReachTube run_single(const LtvSystem& sys, const TargetTube& tube,
                     const BoundedSet* w, const BoundedSet* o,
                     const DirectionSet* outer_dirs, TubeKind kind,
                     double alpha) {
  const int n = sys.horizon();
  ReachTube out;
  out.kind = kind;
  out.alpha = alpha;
  out.steps.resize(static_cast<size_t>(n) + 1);
  out.per_step_ms.assign(static_cast<size_t>(std::max(n, 0)), 0.0);

  if (w && !bounded_set_contains(*w, Vector::Zero(sys.dim())))
    out.warnings.push_back("disturbance set does not contain the origin");

  std::optional<DirectionSet> dirs;
  std::optional<VPolytope> minus_o;
  if (o) {
    dirs = outer_dirs ? *outer_dirs : default_outer_dirs(sys.dim());
    minus_o = reflected_vertices(*o, *dirs);
  }

  HPolytope current = tube.at(n).normalized();
  out.steps[static_cast<size_t>(n)].members = {current};
  out.steps[static_cast<size_t>(n)].combined = current;
  if (current.is_empty()) out.empty_from = n;

  for (int k = n - 1; k >= 0; --k) {
    const auto start = Clock::now();
    HPolytope next = HPolytope::empty(sys.dim());
    if (!current.is_empty()) {
      HPolytope propagated = current;
      if (w) propagated = subtract(propagated, *w);
      if (o && !propagated.is_empty())
        propagated = to_hrep(VPolytope(
            detail::minkowski_candidates(to_vrep(propagated), *minus_o),
            sys.dim()));
      if (!propagated.is_empty()) {
        const HPolytope back = one_step_backward_reach(sys, k, propagated);
        next = intersect(tube.at(k), back);
      }
    }
    if (next.is_empty() && !out.empty_from) out.empty_from = k;
    out.steps[static_cast<size_t>(k)].members = {next};
    out.steps[static_cast<size_t>(k)].combined = next;
    out.per_step_ms[static_cast<size_t>(k)] = ms_since(start);
    current = std::move(next);
  }
  return out;
}

}  // namespace

double bounded_set_support(const BoundedSet& s, const Vector& direction) {
  return std::visit([&](const auto& v) { return v.support(direction); }, s);
}

bool bounded_set_contains(const BoundedSet& s, const Vector& point) {
  return std::visit([&](const auto& v) { return v.contains(point); }, s);
}

int bounded_set_dim(const BoundedSet& s) {
  return std::visit([](const auto& v) { return v.dim(); }, s);
}

const char* tube_kind_name(TubeKind kind) {
  switch (kind) {
    case TubeKind::Minimal: return "minimal";
    case TubeKind::Maximal: return "maximal";
    case TubeKind::Deterministic: return "deterministic";
    case TubeKind::MultiMinimalUnion: return "multi_minimal_union";
    case TubeKind::MultiMinimalHull: return "multi_minimal_hull";
    case TubeKind::MultiMaximalIntersection: return "multi_maximal_intersection";
  }
  return "unknown";
}

const HPolytope& ReachTube::set_at(int k) const {
  if (k < 0 || k > horizon()) throw IndexOutOfRange("ReachTube::set_at");
  const auto& step = steps[static_cast<size_t>(k)];
  if (!step.combined)
    throw Error("ReachTube::set_at: union tube stores member sets only");
  return *step.combined;
}

bool ReachTube::membership(int k, const Vector& x) const {
  if (k < 0 || k > horizon()) throw IndexOutOfRange("ReachTube::membership");
  const auto& step = steps[static_cast<size_t>(k)];
  if (step.combined) return step.combined->contains(x);
  for (const auto& m : step.members)
    if (m.contains(x)) return true;
  return false;
}

double ReachTube::total_ms() const {
  double total = 0.0;
  for (const double t : per_step_ms) total += t;
  return total;
}

ReachTube deterministic_reach_tube(const LtvSystem& sys,
                                   const TargetTube& tube) {
  check_inputs(sys, tube, nullptr);
  return run_single(sys, tube, nullptr, nullptr, nullptr,
                    TubeKind::Deterministic, 0.0);
}

ReachTube minimal_reach_tube(const LtvSystem& sys, const TargetTube& tube,
                             const BoundedSet& w, double alpha) {
  check_inputs(sys, tube, &w);
  ReachTube out =
      run_single(sys, tube, &w, nullptr, nullptr, TubeKind::Minimal, alpha);
  out.disturbances = {w};
  return out;
}

ReachTube maximal_reach_tube(const LtvSystem& sys, const TargetTube& tube,
                             const BoundedSet& o, double alpha,
                             const DirectionSet* outer_dirs) {
  check_inputs(sys, tube, &o);
  ReachTube out = run_single(sys, tube, nullptr, &o, outer_dirs,
                             TubeKind::Maximal, alpha);
  out.disturbances = {o};
  return out;
}

ReachTube multi_minimal_reach_tube(const LtvSystem& sys,
                                   const TargetTube& tube,
                                   const std::vector<BoundedSet>& ws,
                                   MultiCombine mode, double alpha,
                                   bool convexity_asserted) {
  if (ws.empty()) throw EmptyList("multi_minimal_reach_tube: no sets");
  std::vector<ReachTube> singles;
  singles.reserve(ws.size());
  for (const auto& w : ws)
    singles.push_back(minimal_reach_tube(sys, tube, w, alpha));

  ReachTube out;
  out.kind = mode == MultiCombine::Union ? TubeKind::MultiMinimalUnion
                                         : TubeKind::MultiMinimalHull;
  out.alpha = alpha;
  out.disturbances = ws;
  out.hull_convexity_asserted = convexity_asserted;
  out.steps.resize(static_cast<size_t>(tube.horizon()) + 1);
  out.per_step_ms.assign(static_cast<size_t>(tube.horizon()), 0.0);
  for (const auto& s : singles) {
    for (size_t k = 0; k < s.per_step_ms.size(); ++k)
      out.per_step_ms[k] += s.per_step_ms[k];
    for (const auto& warning : s.warnings) {
      if (std::find(out.warnings.begin(), out.warnings.end(), warning) ==
          out.warnings.end())
        out.warnings.push_back(warning);
    }
  }

  for (int k = 0; k <= tube.horizon(); ++k) {
    auto& step = out.steps[static_cast<size_t>(k)];
    for (const auto& s : singles)
      step.members.push_back(s.steps[static_cast<size_t>(k)].members.front());
    if (mode == MultiCombine::ConvexHull) {
      const auto start = Clock::now();
      std::vector<VPolytope> vreps;
      for (const auto& m : step.members)
        if (!m.is_empty()) vreps.push_back(to_vrep(m));
      if (vreps.empty())
        step.combined = HPolytope::empty(tube.dim());
      else
        step.combined = to_hrep(convex_hull(vreps));
      if (k < tube.horizon())
        out.per_step_ms[static_cast<size_t>(k)] += ms_since(start);
    }
  }

  for (int k = tube.horizon(); k >= 0; --k) {
    bool any = false;
    for (const auto& m : out.steps[static_cast<size_t>(k)].members)
      any = any || !m.is_empty();
    if (!any) {
      out.empty_from = k;
      break;
    }
  }
  return out;
}

ReachTube multi_maximal_reach_tube(const LtvSystem& sys,
                                   const TargetTube& tube,
                                   const std::vector<BoundedSet>& os,
                                   double alpha,
                                   const DirectionSet* outer_dirs) {
  if (os.empty()) throw EmptyList("multi_maximal_reach_tube: no sets");
  std::vector<ReachTube> singles;
  singles.reserve(os.size());
  for (const auto& o : os)
    singles.push_back(maximal_reach_tube(sys, tube, o, alpha, outer_dirs));

  ReachTube out;
  out.kind = TubeKind::MultiMaximalIntersection;
  out.alpha = alpha;
  out.disturbances = os;
  out.steps.resize(static_cast<size_t>(tube.horizon()) + 1);
  out.per_step_ms.assign(static_cast<size_t>(tube.horizon()), 0.0);
  for (const auto& s : singles)
    for (size_t k = 0; k < s.per_step_ms.size(); ++k)
      out.per_step_ms[k] += s.per_step_ms[k];

  for (int k = 0; k <= tube.horizon(); ++k) {
    auto& step = out.steps[static_cast<size_t>(k)];
    for (const auto& s : singles)
      step.members.push_back(s.steps[static_cast<size_t>(k)].members.front());
    const auto start = Clock::now();
    HPolytope combined = step.members.front();
    for (size_t i = 1; i < step.members.size(); ++i)
      combined = intersect(combined, step.members[i]);
    step.combined = std::move(combined);
    if (k < tube.horizon())
      out.per_step_ms[static_cast<size_t>(k)] += ms_since(start);
  }
  for (int k = tube.horizon(); k >= 0; --k) {
    if (out.steps[static_cast<size_t>(k)].combined->is_empty()) {
      out.empty_from = k;
      break;
    }
  }
  return out;
}

}  // namespace polytube
