#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polytube/ellipsoid.hpp"
#include "polytube/polytope.hpp"
#include "polytube/system.hpp"

namespace polytube {

// A bounded disturbance set: polytopic in either representation, or a
// Gaussian confidence ellipsoid.
using BoundedSet = std::variant<HPolytope, VPolytope, Ellipsoid>;

double bounded_set_support(const BoundedSet& s, const Vector& direction);
bool bounded_set_contains(const BoundedSet& s, const Vector& point);
int bounded_set_dim(const BoundedSet& s);

enum class TubeKind {
  Minimal,
  Maximal,
  Deterministic,
  MultiMinimalUnion,
  MultiMinimalHull,
  MultiMaximalIntersection,
};

const char* tube_kind_name(TubeKind kind);

// Per-step contents: the per-disturbance member sets and, for hull and
// intersection kinds, the combined set. Single-disturbance kinds keep the
// one set in `members` and mirror it in `combined`.
struct ReachStep {
  std::vector<HPolytope> members;
  std::optional<HPolytope> combined;
};

struct ReachTube {
  TubeKind kind = TubeKind::Deterministic;
  double alpha = 0.0;
  std::vector<ReachStep> steps;        // indexed 0..N
  std::vector<BoundedSet> disturbances;
  std::vector<double> per_step_ms;     // backward-step wall time, index k
  std::optional<int> empty_from;       // largest k where the set became empty
  bool hull_convexity_asserted = false;
  std::vector<std::string> warnings;

  int horizon() const { return static_cast<int>(steps.size()) - 1; }
  const HPolytope& set_at(int k) const;  // combined set (union kinds: throws)
  bool membership(int k, const Vector& x) const;
  double total_ms() const;
};

ReachTube deterministic_reach_tube(const LtvSystem& sys,
                                   const TargetTube& tube);

// Backward recursion R_k = T_k  intersect  Rhat_k(R_{k+1} (-) W). A warning
// is recorded when 0 is not in W.
ReachTube minimal_reach_tube(const LtvSystem& sys, const TargetTube& tube,
                             const BoundedSet& w, double alpha = 0.0);

// Backward recursion R_k = T_k intersect Rhat_k(R_{k+1} (+) (-O)).
// Ellipsoidal O is outer-approximated with `outer_dirs` (seeded default when
// not supplied), which preserves the overapproximation direction.
ReachTube maximal_reach_tube(const LtvSystem& sys, const TargetTube& tube,
                             const BoundedSet& o, double alpha = 0.0,
                             const DirectionSet* outer_dirs = nullptr);

enum class MultiCombine { Union, ConvexHull };

ReachTube multi_minimal_reach_tube(const LtvSystem& sys,
                                   const TargetTube& tube,
                                   const std::vector<BoundedSet>& ws,
                                   MultiCombine mode, double alpha = 0.0,
                                   bool convexity_asserted = false);

ReachTube multi_maximal_reach_tube(const LtvSystem& sys,
                                   const TargetTube& tube,
                                   const std::vector<BoundedSet>& os,
                                   double alpha = 0.0,
                                   const DirectionSet* outer_dirs = nullptr);

}  // namespace polytube
