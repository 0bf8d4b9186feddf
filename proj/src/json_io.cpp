#include "polytube/json_io.hpp"

#include <fstream>
#include <sstream>

#include "polytube/errors.hpp"

namespace polytube {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigInvalid("matrix: expected array of arrays");
  const int rows = static_cast<int>(j.size());
  if (rows == 0) return Matrix(0, 0);
  const int cols = static_cast<int>(j.at(0).size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j.at(i).size()) != cols)
      throw ConfigInvalid("matrix: ragged rows");
    for (int c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigInvalid("vector: expected array");
  Vector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
  return v;
}

Json hpolytope_to_json(const HPolytope& p) {
  Json j;
  j["rep"] = "H";
  if (p.flagged_empty()) {
    j["empty"] = true;
    j["dim"] = p.dim();
    return j;
  }
  j["A"] = matrix_to_json(p.a());
  j["b"] = vector_to_json(p.b());
  if (p.center().lpNorm<Eigen::Infinity>() > 0.0)
    j["c"] = vector_to_json(p.center());
  return j;
}

HPolytope hpolytope_from_json(const Json& j) {
  if (j.value("rep", "H") != "H")
    throw ConfigInvalid("hpolytope: rep must be \"H\"");
  if (j.value("empty", false)) return HPolytope::empty(j.at("dim").get<int>());
  const Matrix a = matrix_from_json(j.at("A"));
  const Vector b = vector_from_json(j.at("b"));
  if (j.contains("c")) return HPolytope(a, b, vector_from_json(j.at("c")));
  return HPolytope(a, b);
}

Json vpolytope_to_json(const VPolytope& p) {
  Json j;
  j["rep"] = "V";
  j["vertices"] = matrix_to_json(p.vertices());
  if (p.is_empty()) j["dim"] = p.dim();
  return j;
}

VPolytope vpolytope_from_json(const Json& j) {
  if (j.value("rep", "V") != "V")
    throw ConfigInvalid("vpolytope: rep must be \"V\"");
  const Matrix v = matrix_from_json(j.at("vertices"));
  if (v.rows() == 0) return VPolytope::empty(j.at("dim").get<int>());
  return VPolytope(v);
}

Json ellipsoid_to_json(const Ellipsoid& e) {
  Json j;
  j["type"] = "ellipsoid";
  j["center"] = vector_to_json(e.center());
  j["shape"] = matrix_to_json(e.shape());
  j["radius_sq"] = e.radius_sq();
  return j;
}

Ellipsoid ellipsoid_from_json(const Json& j) {
  return Ellipsoid(vector_from_json(j.at("center")),
                   matrix_from_json(j.at("shape")),
                   j.at("radius_sq").get<double>());
}

Json bounded_set_to_json(const BoundedSet& s) {
  if (const auto* h = std::get_if<HPolytope>(&s)) return hpolytope_to_json(*h);
  if (const auto* v = std::get_if<VPolytope>(&s)) return vpolytope_to_json(*v);
  return ellipsoid_to_json(std::get<Ellipsoid>(s));
}

BoundedSet bounded_set_from_json(const Json& j) {
  if (j.contains("type") && j.at("type") == "ellipsoid")
    return ellipsoid_from_json(j);
  const std::string rep = j.value("rep", "H");
  if (rep == "H") return hpolytope_from_json(j);
  if (rep == "V") return vpolytope_from_json(j);
  throw ConfigInvalid("bounded set: unknown representation");
}

Json gaussian_to_json(const GaussianDisturbance& g) {
  Json j;
  j["type"] = "gaussian";
  j["mean"] = vector_to_json(g.mean());
  j["cov"] = matrix_to_json(g.cov());
  return j;
}

GaussianDisturbance gaussian_from_json(const Json& j) {
  if (j.value("type", "gaussian") != "gaussian")
    throw ConfigInvalid("disturbance: only \"gaussian\" is supported");
  return GaussianDisturbance(vector_from_json(j.at("mean")),
                             matrix_from_json(j.at("cov")));
}

Json grid_spec_to_json(const GridSpec& g) {
  Json j;
  j["lo"] = vector_to_json(g.lo);
  j["hi"] = vector_to_json(g.hi);
  j["points"] = g.points;
  j["input_points"] = g.input_points;
  return j;
}

GridSpec grid_spec_from_json(const Json& j) {
  GridSpec g;
  g.lo = vector_from_json(j.at("lo"));
  g.hi = vector_from_json(j.at("hi"));
  g.points = j.at("points").get<std::vector<int>>();
  g.input_points = j.value("input_points", 21);
  if (j.contains("cell_cap")) g.cell_cap = j.at("cell_cap").get<long>();
  return g;
}

namespace {

TubeKind tube_kind_from_name(const std::string& name) {
  if (name == "minimal") return TubeKind::Minimal;
  if (name == "maximal") return TubeKind::Maximal;
  if (name == "deterministic") return TubeKind::Deterministic;
  if (name == "multi_minimal_union") return TubeKind::MultiMinimalUnion;
  if (name == "multi_minimal_hull") return TubeKind::MultiMinimalHull;
  if (name == "multi_maximal_intersection")
    return TubeKind::MultiMaximalIntersection;
  throw ConfigInvalid("reach tube: unknown kind " + name);
}

}  // namespace

Json reach_tube_to_json(const ReachTube& t) {
  Json j;
  j["kind"] = tube_kind_name(t.kind);
  j["alpha"] = t.alpha;
  j["horizon"] = t.horizon();
  Json steps = Json::array();
  for (int k = 0; k <= t.horizon(); ++k) {
    const auto& step = t.steps[static_cast<size_t>(k)];
    Json s;
    s["k"] = k;
    Json members = Json::array();
    for (const auto& m : step.members) members.push_back(hpolytope_to_json(m));
    s["members"] = std::move(members);
    if (step.combined)
      s["combined"] = hpolytope_to_json(*step.combined);
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  Json dist = Json::array();
  for (const auto& d : t.disturbances) dist.push_back(bounded_set_to_json(d));
  j["disturbance_sets"] = std::move(dist);
  if (t.empty_from) j["empty_from"] = *t.empty_from;
  if (!t.warnings.empty()) j["warnings"] = t.warnings;
  j["hull_convexity_asserted"] = t.hull_convexity_asserted;
  return j;
}

ReachTube reach_tube_from_json(const Json& j) {
  ReachTube t;
  t.kind = tube_kind_from_name(j.at("kind").get<std::string>());
  t.alpha = j.at("alpha").get<double>();
  for (const auto& s : j.at("steps")) {
    ReachStep step;
    for (const auto& m : s.at("members"))
      step.members.push_back(hpolytope_from_json(m));
    if (s.contains("combined"))
      step.combined = hpolytope_from_json(s.at("combined"));
    t.steps.push_back(std::move(step));
  }
  for (const auto& d : j.value("disturbance_sets", Json::array()))
    t.disturbances.push_back(bounded_set_from_json(d));
  if (j.contains("empty_from")) t.empty_from = j.at("empty_from").get<int>();
  if (j.contains("warnings"))
    t.warnings = j.at("warnings").get<std::vector<std::string>>();
  t.hull_convexity_asserted = j.value("hull_convexity_asserted", false);
  return t;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace polytube
