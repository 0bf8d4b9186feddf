#pragma once

#include <random>
#include <string>
#include <vector>

#include "polytube/polytope.hpp"
#include "support/test_helpers.hpp"

// The geometry invariants as seeded property checks, shared between the unit
// tests (small instance counts) and the acceptance suite (200 per property).

namespace testsupport {

struct PropertyResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  bool passed() const { return failures == 0; }
};

inline PropertyResult prop_erosion_dilation_subset(int instances,
                                                   unsigned seed) {
  PropertyResult r{"(P - Q) + Q subset of P", instances, 0};
  std::mt19937 rng(seed);
  for (int t = 0; t < instances; ++t) {
    const polytube::HPolytope p = random_hpolytope(rng, 2, 4).normalized();
    const polytube::VPolytope q =
        random_polygon(rng, 4).normalized();  // small-ish subtrahend
    polytube::Matrix shrunk = q.vertices() * 0.15;
    const polytube::VPolytope qs(shrunk, 2);
    const polytube::HPolytope diff = pontryagin_diff(p, qs);
    if (diff.is_empty()) continue;
    const polytube::VPolytope sum = minkowski_sum(to_vrep(diff), qs);
    bool ok = true;
    for (int s = 0; s < 1000 && ok; ++s) {
      const polytube::Vector x = sample_in_hull(rng, sum);
      ok = p.contains(x, 1e-8);
    }
    if (!ok) ++r.failures;
  }
  return r;
}

inline PropertyResult prop_support_consistency(int instances, unsigned seed) {
  PropertyResult r{"support: H-rep LP equals V-rep max", instances, 0};
  std::mt19937 rng(seed);
  for (int t = 0; t < instances; ++t) {
    const polytube::HPolytope p = random_hpolytope(rng, 2, 5).normalized();
    const polytube::VPolytope v = to_vrep(p);
    bool ok = true;
    for (int i = 0; i < 64 && ok; ++i) {
      const polytube::Vector d = random_direction(rng, 2);
      ok = std::abs(p.support(d) - v.support(d)) <= 1e-8;
    }
    if (!ok) ++r.failures;
  }
  return r;
}

inline PropertyResult prop_scaled_polytope(int instances, unsigned seed) {
  PropertyResult r{"Poly(A, theta b) = theta Poly(A, b) by support",
                   instances, 0};
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> theta_dist(0.0, 1.0);
  for (int t = 0; t < instances; ++t) {
    // Bounded polytope with 0 inside, so Poly(A, 0) = {0}.
    const polytube::HPolytope p = random_hpolytope(rng, 2, 5).normalized();
    const double theta = (t % 4 == 0) ? 0.0 : theta_dist(rng);
    const polytube::HPolytope scaled(p.a(), theta * p.b());
    bool ok = true;
    for (int i = 0; i < 64 && ok; ++i) {
      const polytube::Vector d = random_direction(rng, 2);
      ok = std::abs(scaled.support(d) - theta * p.support(d)) <= 1e-9;
    }
    if (!ok) ++r.failures;
  }
  return r;
}

inline PropertyResult prop_normalize_idempotent(int instances, unsigned seed) {
  PropertyResult r{"normalize idempotent; conversion keeps membership",
                   instances, 0};
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int t = 0; t < instances; ++t) {
    const polytube::HPolytope p = random_hpolytope(rng, 2, 6);
    const polytube::HPolytope n1 = p.normalized();
    const polytube::HPolytope n2 = n1.normalized();
    bool ok = n1.num_facets() == n2.num_facets();
    if (ok && n1.num_facets() > 0)
      ok = (n1.a() - n2.a()).lpNorm<Eigen::Infinity>() <= 1e-12 &&
           (n1.folded_b() - n2.folded_b()).lpNorm<Eigen::Infinity>() <= 1e-12;
    const polytube::VPolytope v = to_vrep(n1);
    const polytube::HPolytope back = to_hrep(v);
    for (int s = 0; s < 50 && ok; ++s) {
      const polytube::Vector x = vec({coord(rng), coord(rng)});
      if (std::abs(n1.violation(x)) <= 1e-7) continue;  // boundary slack
      ok = n1.contains(x) == back.contains(x) &&
           n1.contains(x) == v.contains(x, 1e-7);
    }
    if (!ok) ++r.failures;
  }
  return r;
}

inline PropertyResult prop_minkowski_algebra(int instances, unsigned seed) {
  PropertyResult r{"Minkowski sum commutes and associates", instances, 0};
  std::mt19937 rng(seed);
  for (int t = 0; t < instances; ++t) {
    const polytube::VPolytope a = random_polygon(rng, 5).normalized();
    const polytube::VPolytope b = random_polygon(rng, 4).normalized();
    const polytube::VPolytope c = random_polygon(rng, 3).normalized();
    const polytube::VPolytope ab = minkowski_sum(a, b);
    const polytube::VPolytope ba = minkowski_sum(b, a);
    const polytube::VPolytope ab_c = minkowski_sum(ab, c);
    const polytube::VPolytope a_bc = minkowski_sum(a, minkowski_sum(b, c));
    bool ok = true;
    for (int i = 0; i < 32 && ok; ++i) {
      const polytube::Vector d = random_direction(rng, 2);
      ok = std::abs(ab.support(d) - ba.support(d)) <= 1e-8 &&
           std::abs(ab_c.support(d) - a_bc.support(d)) <= 1e-8;
    }
    if (!ok) ++r.failures;
  }
  return r;
}

inline std::vector<PropertyResult> run_geometry_properties(int instances,
                                                           unsigned seed) {
  return {
      prop_erosion_dilation_subset(instances, seed),
      prop_support_consistency(instances, seed + 1),
      prop_scaled_polytope(instances, seed + 2),
      prop_normalize_idempotent(instances, seed + 3),
      prop_minkowski_algebra(instances, seed + 4),
  };
}

}  // namespace testsupport
