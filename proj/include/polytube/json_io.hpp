#pragma once

#include <json.hpp>
#include <string>

#include "polytube/disturbance.hpp"
#include "polytube/dp.hpp"
#include "polytube/ellipsoid.hpp"
#include "polytube/polytope.hpp"
#include "polytube/reach.hpp"

namespace polytube {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

// Polytopes: {"rep":"H","A":[[..]],"b":[..],"c":[..]} (c optional) or
// {"rep":"V","vertices":[[..]]}; empty sets carry "empty":true and "dim".
Json hpolytope_to_json(const HPolytope& p);
HPolytope hpolytope_from_json(const Json& j);
Json vpolytope_to_json(const VPolytope& p);
VPolytope vpolytope_from_json(const Json& j);

Json ellipsoid_to_json(const Ellipsoid& e);
Ellipsoid ellipsoid_from_json(const Json& j);

Json bounded_set_to_json(const BoundedSet& s);
BoundedSet bounded_set_from_json(const Json& j);

Json gaussian_to_json(const GaussianDisturbance& g);
GaussianDisturbance gaussian_from_json(const Json& j);

Json grid_spec_to_json(const GridSpec& g);
GridSpec grid_spec_from_json(const Json& j);

// Reach tubes serialize everything except timings (those go to CSV so reruns
// with one seed are byte-identical).
Json reach_tube_to_json(const ReachTube& t);
ReachTube reach_tube_from_json(const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace polytube
