#pragma once

#include "polytube/polytope.hpp"

// Internal geometry plumbing shared between polytope.cpp and
// vertex_enum.cpp. Not part of the public surface.

namespace polytube::detail {

// Fold center, drop zero rows, unit-normalize rows, merge duplicates. No
// LPs; emptiness is only detected for trivially infeasible zero rows.
HPolytope light_normalize(const HPolytope& p);

// Vertex enumeration over unit-normalized rows, bounded region assumed
// (callers establish a bounding box first). Returns vertices as rows.
Matrix dd_vertex_enumeration(const Matrix& rows, const Vector& offs,
                             const Vector& box_lo, const Vector& box_hi);

// Raw pairwise vertex sums, no extreme-point filtering.
Matrix minkowski_candidates(const VPolytope& p, const VPolytope& q);

// Drops points that provably lie in the hull of the remaining ones, using a
// small hull of support maximizers as the witness. Keeps every extreme
// point; the survivor list may still contain non-extreme points.
Matrix drop_clearly_interior(const Matrix& points);

}  // namespace polytube::detail
