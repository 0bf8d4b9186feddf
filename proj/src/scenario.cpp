#include "polytube/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "polytube/errors.hpp"

namespace polytube {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

BoundedStrategy strategy_from_name(const std::string& name) {
  if (name == "ellipsoid") return BoundedStrategy::Ellipsoid;
  if (name == "box-template") return BoundedStrategy::BoxTemplate;
  if (name == "multi") return BoundedStrategy::Multi;
  throw ConfigInvalid("bounded_set.strategy: unknown value " + name);
}

const char* strategy_name(BoundedStrategy s) {
  switch (s) {
    case BoundedStrategy::Ellipsoid: return "ellipsoid";
    case BoundedStrategy::BoxTemplate: return "box-template";
    case BoundedStrategy::Multi: return "multi";
  }
  return "ellipsoid";
}

std::pair<Matrix, Matrix> resolve_system(const Json& system, Json* metadata) {
  const std::string type = system.value("type", "");
  if (type == "double_integrator")
    return double_integrator_matrices(system.at("sampling_time").get<double>());
  if (type == "integrator_chain")
    return integrator_chain_matrices(system.at("dim").get<int>(),
                                     system.at("sampling_time").get<double>());
  if (type == "cwh") {
    double omega;
    if (system.contains("orbital_rate")) {
      omega = system.at("orbital_rate").get<double>();
    } else {
      const double mu = system.at("mu_earth_m3_s2").get<double>();
      const double r0 = system.at("earth_radius_m").get<double>() +
                        system.at("orbit_altitude_m").get<double>();
      omega = std::sqrt(mu / (r0 * r0 * r0));
    }
    if (metadata) (*metadata)["orbital_rate"] = omega;
    return cwh_matrices(omega, system.at("mass_kg").get<double>(),
                        system.at("sampling_time").get<double>());
  }
  if (type == "explicit")
    return {matrix_from_json(system.at("A")), matrix_from_json(system.at("B"))};
  throw ConfigInvalid("system.type: unknown value \"" + type + "\"");
}

std::vector<HPolytope> cwh_tube_sets(const Json& tube, int horizon) {
  const double y_max = tube.value("y_max", 1.0);
  const double vel = tube.value("velocity_bound", 0.05);
  const double cone_sign = tube.value("cone_sign", 1.0);
  // Terminal docking box.
  Matrix at(8, 4);
  at << 1, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0,
      -1, 0, 0, 0, 0, 1, 0, 0, 0, -1;
  Vector bt(8);
  bt << 0.1, 0.1, 0.0, 0.1, 0.01, 0.01, 0.01, 0.01;
  const HPolytope target(at, bt);

  // Line-of-sight cone with a cap for compactness.
  Matrix ac(7, 4);
  Vector bc(7);
  ac.setZero();
  ac(0, 0) = 1;  ac(0, 1) = -cone_sign;  bc(0) = 0;
  ac(1, 0) = -1; ac(1, 1) = -cone_sign;  bc(1) = 0;
  ac(2, 1) = cone_sign;                  bc(2) = y_max;
  ac(3, 2) = 1;                          bc(3) = vel;
  ac(4, 2) = -1;                         bc(4) = vel;
  ac(5, 3) = 1;                          bc(5) = vel;
  ac(6, 3) = -1;                         bc(6) = vel;
  const HPolytope cone(ac, bc);

  std::vector<HPolytope> sets(static_cast<size_t>(horizon) + 1, cone);
  sets.back() = target;
  return sets;
}

std::vector<HPolytope> resolve_tube(const Json& tube, int horizon, int dim) {
  if (tube.contains("sets")) {
    std::vector<HPolytope> sets;
    for (const auto& s : tube.at("sets")) sets.push_back(hpolytope_from_json(s));
    if (static_cast<int>(sets.size()) != horizon + 1)
      throw ConfigInvalid("tube.sets: expected horizon+1 sets");
    return sets;
  }
  const std::string name = tube.value("name", "");
  if (name == "viability_box") {
    const double hw = tube.value("half_width", 1.0);
    return std::vector<HPolytope>(static_cast<size_t>(horizon) + 1,
                                  HPolytope::cube(dim, hw));
  }
  if (name == "cwh_tube") {
    if (dim != 4) throw ConfigInvalid("tube: cwh_tube needs a 4-D system");
    return cwh_tube_sets(tube, horizon);
  }
  throw ConfigInvalid("tube: provide \"sets\" or a known \"name\"");
}

// Disturbance sets per the configured strategy; gamma is alpha for the
// minimal route and 1-alpha for the maximal route.
std::vector<BoundedSet> build_bounded_sets(const ScenarioConfig& cfg,
                                           const GaussianDisturbance& g,
                                           double gamma, unsigned seed,
                                           Json* record) {
  std::vector<BoundedSet> sets;
  const int n = g.dim();
  switch (cfg.strategy) {
    case BoundedStrategy::Ellipsoid: {
      const Ellipsoid e = gaussian_level_ellipsoid(g, gamma, cfg.horizon);
      if (record) (*record)["radius_sq"] = e.radius_sq();
      sets.emplace_back(e);
      break;
    }
    case BoundedStrategy::BoxTemplate:
    case BoundedStrategy::Multi: {
      std::vector<Vector> centers{Vector::Zero(n)};
      if (cfg.strategy == BoundedStrategy::Multi) {
        for (const auto& off : cfg.bounded_set.value("offsets", Json::array()))
          centers.push_back(vector_from_json(off));
      }
      BoundedSetSpec spec;
      spec.kind = BoundedSetKind::PolyTemplate;
      if (cfg.bounded_set.contains("A")) {
        spec.a = matrix_from_json(cfg.bounded_set.at("A"));
        spec.b0 = vector_from_json(cfg.bounded_set.at("b0"));
      } else {
        spec.a = Matrix(2 * n, n);
        spec.a.topRows(n) = Matrix::Identity(n, n);
        spec.a.bottomRows(n) = -Matrix::Identity(n, n);
        spec.b0 = Vector::Ones(2 * n);
      }
      spec.gamma = gamma;
      spec.horizon_steps = cfg.horizon;
      Json achieved = Json::array();
      for (const auto& c : centers) {
        spec.c = c;
        const BisectionResult r = bisect_bounded_set(g, spec, 1e-6, 200,
                                                     1L << 16, seed);
        achieved.push_back({{"scale", r.scale},
                            {"achieved", r.achieved},
                            {"iterations", r.iterations},
                            {"exact", r.exact_path}});
        sets.emplace_back(r.set);
      }
      if (record) (*record)["bisection"] = std::move(achieved);
      break;
    }
  }
  return sets;
}

void append_vertex_rows(std::ostringstream& csv, int k, int member,
                        const VPolytope& v) {
  for (int i = 0; i < v.num_vertices(); ++i) {
    csv << k << "," << member;
    for (int j = 0; j < v.dim(); ++j) csv << "," << v.vertices()(i, j);
    csv << "\n";
  }
}

// Per-k vertex dump; above 3 dimensions the cross-section (when configured)
// is dumped instead.
void write_tube_csv(const ReachTube& t, const std::string& label,
                    const std::optional<CrossSectionSpec>& cross,
                    const std::string& dir, RunReport& report) {
  const int dim = t.steps.front().members.empty()
                      ? 0
                      : t.steps.front().members.front().dim();
  std::ostringstream csv;
  const bool sliced = dim > 3 && cross.has_value();
  csv << "k,member";
  const int out_dim =
      sliced ? dim - static_cast<int>(cross->coords.size()) : dim;
  for (int j = 0; j < out_dim; ++j) csv << ",x" << j;
  csv << "\n";
  if (!sliced && dim > 3) return;  // nothing plottable to write
  for (int k = 0; k < static_cast<int>(t.steps.size()); ++k) {
    const auto& step = t.steps[static_cast<size_t>(k)];
    for (int m = 0; m < static_cast<int>(step.members.size()); ++m) {
      HPolytope set = step.members[static_cast<size_t>(m)];
      if (sliced) set = slice(set, cross->coords, cross->values);
      if (set.is_empty()) continue;
      append_vertex_rows(csv, k, m, to_vrep(set));
    }
  }
  const std::string name =
      sliced ? "cross_section_" + label + ".csv" : "vertices_" + label + ".csv";
  const std::string path = dir + "/" + name;
  write_text_file(path, csv.str());
  report.files_written.push_back(path);
}

// Sampled containment of inner's step sets in outer's, vertices plus hull
// samples.
bool tube_contained(const ReachTube& inner, const ReachTube& outer,
                    std::mt19937& rng, int samples_per_set = 50,
                    double tol = 1e-7) {
  std::exponential_distribution<double> expo(1.0);
  const auto inside = [&outer, tol](int k, const Vector& x) {
    if (outer.membership(k, x)) return true;
    const auto& step = outer.steps[static_cast<size_t>(k)];
    if (!step.combined) return false;
    return step.combined->violation(x) <= tol;
  };
  for (int k = 0; k <= inner.horizon(); ++k) {
    for (const auto& m : inner.steps[static_cast<size_t>(k)].members) {
      if (m.is_empty()) continue;
      const VPolytope v = to_vrep(m);
      for (int i = 0; i < v.num_vertices(); ++i)
        if (!inside(k, v.vertex(i))) return false;
      for (int s = 0; s < samples_per_set; ++s) {
        Vector w(v.num_vertices());
        for (int i = 0; i < w.size(); ++i) w(i) = expo(rng);
        w /= w.sum();
        if (!inside(k, v.vertices().transpose() * w)) return false;
      }
    }
  }
  return true;
}

struct SandwichScore {
  long considered = 0;
  long satisfied = 0;
  double fraction() const {
    return considered == 0 ? 1.0
                           : static_cast<double>(satisfied) /
                                 static_cast<double>(considered);
  }
};

// DP-vs-Lagrangian sandwich on the grid; one-cell band around either tube
// boundary is excluded as discretization slack.
SandwichScore sandwich_score(const ReachTube& minimal, const ReachTube& maximal,
                             const std::vector<Eigen::VectorXd>& values,
                             const StateGrid& grid, double alpha) {
  double band = 0.0;
  for (int j = 0; j < grid.dims(); ++j) band += grid.step(j) * grid.step(j);
  band = std::sqrt(band);

  SandwichScore score;
  for (int k = 0; k < minimal.horizon(); ++k) {
    const HPolytope& lo = minimal.set_at(k);
    const HPolytope& hi = maximal.set_at(k);
    const Eigen::VectorXd& layer = values[static_cast<size_t>(k)];
    for (long cell = 0; cell < grid.size(); ++cell) {
      const Vector x = grid.center(cell);
      const double viol_lo = lo.flagged_empty() ? 1.0 : lo.violation(x);
      const double viol_hi = hi.flagged_empty() ? 1.0 : hi.violation(x);
      if (std::abs(viol_lo) <= band || std::abs(viol_hi) <= band) continue;
      ++score.considered;
      const bool in_min = viol_lo < 0.0;
      const bool in_max = viol_hi < 0.0;
      const bool dp_ok = layer(cell) >= alpha;
      const bool cond1 = !in_min || dp_ok;
      const bool cond2 = !dp_ok || in_max;
      if (cond1 && cond2) ++score.satisfied;
    }
  }
  return score;
}

}  // namespace

ScenarioConfig parse_scenario(const Json& j) {
  ScenarioConfig cfg;
  try {
    cfg.name = j.value("name", "scenario");
    cfg.system = j.at("system");
    cfg.horizon = j.at("horizon").get<int>();
    cfg.alpha = j.at("alpha").get<double>();
    cfg.input_space = j.at("input_space");
    cfg.tube = j.at("tube");
    cfg.disturbance = j.at("disturbance");
    const Json bounded = j.value("bounded_set", Json{{"strategy", "ellipsoid"}});
    cfg.strategy = strategy_from_name(bounded.value("strategy", "ellipsoid"));
    cfg.bounded_set = bounded;
    if (j.contains("oracle")) {
      cfg.oracle_enabled = j.at("oracle").value("enabled", false);
      if (cfg.oracle_enabled)
        cfg.grid = grid_spec_from_json(j.at("oracle"));
    }
    cfg.checks = j.value("checks", std::vector<std::string>{});
    if (j.contains("cross_section")) {
      CrossSectionSpec cs;
      cs.coords = j.at("cross_section").at("coords").get<std::vector<int>>();
      cs.values =
          j.at("cross_section").at("values").get<std::vector<double>>();
      cfg.cross_section = cs;
    }
    cfg.seed = j.value("seed", 0u);
    cfg.out_dir = j.value("output_dir", "out");
    cfg.metadata = j.value("metadata", Json::object());
  } catch (const Json::exception& e) {
    throw ConfigInvalid(std::string("scenario: ") + e.what());
  }
  if (cfg.horizon < 1) throw ConfigInvalid("horizon: must be >= 1");
  if (cfg.alpha < 0.0 || cfg.alpha > 1.0)
    throw ConfigInvalid("alpha: must be in [0,1]");
  return cfg;
}

Json scenario_to_json(const ScenarioConfig& cfg) {
  Json j;
  j["name"] = cfg.name;
  j["system"] = cfg.system;
  j["horizon"] = cfg.horizon;
  j["alpha"] = cfg.alpha;
  j["input_space"] = cfg.input_space;
  j["tube"] = cfg.tube;
  j["disturbance"] = cfg.disturbance;
  j["bounded_set"] = cfg.bounded_set;
  if (cfg.grid) {
    j["oracle"] = grid_spec_to_json(*cfg.grid);
    j["oracle"]["enabled"] = cfg.oracle_enabled;
  }
  if (!cfg.checks.empty()) j["checks"] = cfg.checks;
  if (cfg.cross_section) {
    j["cross_section"] = {{"coords", cfg.cross_section->coords},
                          {"values", cfg.cross_section->values}};
  }
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.out_dir;
  if (!cfg.metadata.empty()) j["metadata"] = cfg.metadata;
  return j;
}

ResolvedScenario resolve_scenario(const ScenarioConfig& cfg) {
  Json metadata = cfg.metadata;
  const auto [a, b] = resolve_system(cfg.system, &metadata);
  const HPolytope input = hpolytope_from_json(cfg.input_space);
  LtvSystem sys = LtvSystem::lti(a, b, input, cfg.horizon);
  TargetTube tube(resolve_tube(cfg.tube, cfg.horizon,
                               static_cast<int>(a.rows())));
  GaussianDisturbance g = gaussian_from_json(cfg.disturbance);
  if (g.dim() != sys.dim())
    throw ConfigInvalid("disturbance: dimension does not match the system");
  if (tube.dim() != sys.dim())
    throw ConfigInvalid("tube: dimension does not match the system");
  return ResolvedScenario{std::move(sys), std::move(tube), std::move(g),
                          std::move(metadata)};
}

ScenarioConfig with_dimension(const ScenarioConfig& cfg, int dim) {
  if (cfg.system.value("type", "") != "integrator_chain")
    throw ConfigInvalid("--dim: only integrator_chain scenarios support it");
  ScenarioConfig out = cfg;
  out.system["dim"] = dim;
  // Isotropic diagonal disturbance scales with the dimension.
  const Matrix cov = matrix_from_json(cfg.disturbance.at("cov"));
  const double var = cov(0, 0);
  out.disturbance["mean"] = vector_to_json(Vector::Zero(dim));
  out.disturbance["cov"] = matrix_to_json(var * Matrix::Identity(dim, dim));
  if (!cfg.tube.contains("name"))
    throw ConfigInvalid("--dim: tube must be a named template");
  return out;
}

RunReport run_scenario(const ScenarioConfig& cfg) {
  RunReport report;
  std::filesystem::create_directories(cfg.out_dir);
  const ResolvedScenario rs = resolve_scenario(cfg);
  std::mt19937 rng(cfg.seed);

  std::vector<std::tuple<std::string, int, double>> timings;
  Json record;
  record["strategy"] = strategy_name(cfg.strategy);

  auto t0 = Clock::now();
  Json w_record, o_record;
  const std::vector<BoundedSet> ws =
      build_bounded_sets(cfg, rs.disturbance, cfg.alpha, cfg.seed, &w_record);
  const std::vector<BoundedSet> os = build_bounded_sets(
      cfg, rs.disturbance, 1.0 - cfg.alpha, cfg.seed + 1, &o_record);
  timings.emplace_back("bounded_set", -1, ms_since(t0));
  record["minimal_sets"] = std::move(w_record);
  record["maximal_sets"] = std::move(o_record);

  t0 = Clock::now();
  const ReachTube minimal =
      ws.size() == 1
          ? minimal_reach_tube(rs.system, rs.tube, ws.front(), cfg.alpha)
          : multi_minimal_reach_tube(rs.system, rs.tube, ws,
                                     MultiCombine::ConvexHull, cfg.alpha,
                                     /*convexity_asserted=*/true);
  const double minimal_ms = ms_since(t0);

  t0 = Clock::now();
  const ReachTube maximal =
      os.size() == 1
          ? maximal_reach_tube(rs.system, rs.tube, os.front(), cfg.alpha)
          : multi_maximal_reach_tube(rs.system, rs.tube, os, cfg.alpha);
  const double maximal_ms = ms_since(t0);
  report.lagrangian_ms = minimal_ms + maximal_ms;
  for (int k = 0; k < minimal.horizon(); ++k)
    timings.emplace_back("minimal", k,
                         minimal.per_step_ms[static_cast<size_t>(k)]);
  for (int k = 0; k < maximal.horizon(); ++k)
    timings.emplace_back("maximal", k,
                         maximal.per_step_ms[static_cast<size_t>(k)]);

  const auto wants = [&cfg](const std::string& name) {
    return std::find(cfg.checks.begin(), cfg.checks.end(), name) !=
           cfg.checks.end();
  };

  std::optional<ReachTube> deterministic;
  if (wants("chain")) {
    t0 = Clock::now();
    deterministic = deterministic_reach_tube(rs.system, rs.tube);
    timings.emplace_back("deterministic", -1, ms_since(t0));
  }

  std::vector<Eigen::VectorXd> dp_values;
  std::optional<StateGrid> grid;
  if (cfg.oracle_enabled) {
    if (!cfg.grid) throw ConfigInvalid("oracle: enabled without a grid");
    grid.emplace(*cfg.grid);
    t0 = Clock::now();
    dp_values =
        stochastic_value_iteration(rs.system, rs.tube, rs.disturbance, *grid);
    report.dp_ms = ms_since(t0);
    timings.emplace_back("dp", -1, report.dp_ms);
  }

  // --- Checks ---------------------------------------------------------------
  if (wants("nonempty"))
    report.check_results["nonempty"] = !minimal.set_at(0).is_empty();

  if (wants("containment"))
    report.check_results["containment"] = tube_contained(minimal, maximal, rng);

  if (wants("chain")) {
    const bool lower = tube_contained(minimal, *deterministic, rng);
    const bool upper = tube_contained(*deterministic, maximal, rng);
    report.check_results["chain"] = lower && upper;
  }

  if (wants("monotone")) {
    // Anti-monotonicity: growing W shrinks the minimal tube.
    BoundedSet grown = ws.front();
    if (auto* e = std::get_if<Ellipsoid>(&grown))
      grown = Ellipsoid(e->center(), e->shape(), 1.5625 * e->radius_sq());
    else if (auto* h = std::get_if<HPolytope>(&grown))
      grown = HPolytope(h->a(), 1.25 * h->b(), h->center());
    const ReachTube shrunk =
        minimal_reach_tube(rs.system, rs.tube, grown, cfg.alpha);
    report.check_results["monotone"] = tube_contained(shrunk, minimal, rng);
  }

  if (wants("sandwich")) {
    if (!cfg.oracle_enabled)
      throw ConfigInvalid("checks: sandwich needs the oracle grid");
    const SandwichScore s =
        sandwich_score(minimal, maximal, dp_values, *grid, cfg.alpha);
    report.check_results["sandwich"] = s.fraction() >= 0.99;
    std::ostringstream msg;
    msg << "sandwich: " << s.satisfied << "/" << s.considered
        << " non-band cells consistent";
    report.messages.push_back(msg.str());
  }

  if (wants("speed_ratio")) {
    if (!cfg.oracle_enabled)
      throw ConfigInvalid("checks: speed_ratio needs the oracle grid");
    report.check_results["speed_ratio"] =
        report.dp_ms >= 2.0 * report.lagrangian_ms;
    std::ostringstream msg;
    msg << "speed_ratio: dp " << report.dp_ms << " ms vs lagrangian "
        << report.lagrangian_ms << " ms";
    report.messages.push_back(msg.str());
  }

  // --- Outputs ---------------------------------------------------------------
  const auto dump_tube = [&](const ReachTube& t, const std::string& label) {
    const std::string path = cfg.out_dir + "/tube_" + label + ".json";
    write_text_file(path, reach_tube_to_json(t).dump(2) + "\n");
    report.files_written.push_back(path);
    write_tube_csv(t, label, cfg.cross_section, cfg.out_dir, report);
  };
  dump_tube(minimal, "minimal");
  dump_tube(maximal, "maximal");
  if (deterministic) dump_tube(*deterministic, "deterministic");

  if (cfg.oracle_enabled) {
    std::ostringstream mask;
    mask << "k";
    for (int j = 0; j < grid->dims(); ++j) mask << ",x" << j;
    mask << ",value,in_level\n";
    for (int k = 0; k < static_cast<int>(dp_values.size()); ++k) {
      const auto level =
          alpha_level_cells(dp_values[static_cast<size_t>(k)], cfg.alpha);
      for (long cell = 0; cell < grid->size(); ++cell) {
        const Vector x = grid->center(cell);
        mask << k;
        for (int j = 0; j < grid->dims(); ++j) mask << "," << x(j);
        mask << "," << dp_values[static_cast<size_t>(k)](cell) << ","
             << static_cast<int>(level[static_cast<size_t>(cell)]) << "\n";
      }
    }
    std::ostringstream name;
    name << cfg.out_dir << "/dp_mask_alpha" << cfg.alpha << ".csv";
    write_text_file(name.str(), mask.str());
    report.files_written.push_back(name.str());
  }

  {
    std::ostringstream csv;
    csv << "phase,k,milliseconds\n";
    for (const auto& [phase, k, ms] : timings)
      csv << phase << "," << k << "," << ms << "\n";
    const std::string path = cfg.out_dir + "/timings.csv";
    write_text_file(path, csv.str());
    report.files_written.push_back(path);
  }

  {
    Json rj;
    rj["scenario"] = cfg.name;
    rj["checks"] = Json::object();
    for (const auto& [name, ok] : report.check_results)
      rj["checks"][name] = ok ? "pass" : "fail";
    rj["lagrangian_ms"] = report.lagrangian_ms;
    if (cfg.oracle_enabled) {
      rj["dp_ms"] = report.dp_ms;
      rj["dp_over_lagrangian"] =
          report.lagrangian_ms > 0 ? report.dp_ms / report.lagrangian_ms : 0.0;
    }
    rj["bounded_sets"] = record;
    rj["metadata"] = rs.metadata;
    rj["messages"] = report.messages;
    if (minimal.empty_from) rj["minimal_empty_from"] = *minimal.empty_from;
    if (!minimal.warnings.empty()) rj["warnings"] = minimal.warnings;
    const std::string path = cfg.out_dir + "/report.json";
    write_text_file(path, rj.dump(2) + "\n");
    report.files_written.push_back(path);
  }

  return report;
}

std::vector<std::string> make_scenarios(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> paths;

  // Double integrator, viability tube, ellipsoidal disturbance sets, DP grid.
  {
    Json j;
    j["name"] = "double_integrator";
    j["system"] = {{"type", "double_integrator"}, {"sampling_time", 0.25}};
    j["horizon"] = 5;
    j["alpha"] = 0.8;
    j["input_space"] = {{"rep", "H"},
                        {"A", Json::array({Json::array({1.0}),
                                           Json::array({-1.0})})},
                        {"b", Json::array({0.1, 0.1})}};
    j["tube"] = {{"name", "viability_box"}, {"half_width", 1.0}};
    j["disturbance"] = {
        {"type", "gaussian"},
        {"mean", Json::array({0.0, 0.0})},
        {"cov", Json::array({Json::array({0.005, 0.0}),
                             Json::array({0.0, 0.005})})}};
    j["bounded_set"] = {{"strategy", "ellipsoid"}};
    j["oracle"] = {{"enabled", true},
                   {"lo", Json::array({-1.0, -1.0})},
                   {"hi", Json::array({1.0, 1.0})},
                   {"points", Json::array({41, 41})},
                   {"input_points", 21}};
    j["checks"] =
        Json::array({"sandwich", "containment", "chain", "speed_ratio"});
    j["seed"] = 2025;
    j["output_dir"] = "out/double_integrator";
    j["metadata"] = {
        {"input_bound", "|u| <= 0.1 (benchmark convention, recorded here)"}};
    const std::string path = out_dir + "/double_integrator.json";
    write_text_file(path, j.dump(2) + "\n");
    paths.push_back(path);
  }

  // Chain of integrators with a bisected box disturbance set.
  {
    Json j;
    j["name"] = "integrator_chain";
    j["system"] = {{"type", "integrator_chain"},
                   {"dim", 4},
                   {"sampling_time", 0.25}};
    j["horizon"] = 5;
    j["alpha"] = 0.8;
    j["input_space"] = {{"rep", "H"},
                        {"A", Json::array({Json::array({1.0}),
                                           Json::array({-1.0})})},
                        {"b", Json::array({0.1, 0.1})}};
    j["tube"] = {{"name", "viability_box"}, {"half_width", 1.0}};
    Json cov = Json::array();
    for (int r = 0; r < 4; ++r) {
      Json row = Json::array();
      for (int c = 0; c < 4; ++c) row.push_back(r == c ? 1e-5 : 0.0);
      cov.push_back(std::move(row));
    }
    j["disturbance"] = {{"type", "gaussian"},
                        {"mean", Json::array({0.0, 0.0, 0.0, 0.0})},
                        {"cov", std::move(cov)}};
    j["bounded_set"] = {{"strategy", "box-template"}};
    j["checks"] = Json::array({"nonempty", "containment"});
    j["seed"] = 2025;
    j["output_dir"] = "out/integrator_chain";
    const std::string path = out_dir + "/integrator_chain.json";
    write_text_file(path, j.dump(2) + "\n");
    paths.push_back(path);
  }

  // CWH rendezvous, ellipsoidal disturbance sets, velocity cross-section.
  {
    Json j;
    j["name"] = "cwh";
    j["system"] = {{"type", "cwh"},
                   {"mu_earth_m3_s2", 3.986e14},
                   {"earth_radius_m", 6378100.0},
                   {"orbit_altitude_m", 850000.0},
                   {"mass_kg", 300.0},
                   {"sampling_time", 20.0}};
    j["horizon"] = 5;
    j["alpha"] = 0.8;
    j["input_space"] = {
        {"rep", "H"},
        {"A", Json::array({Json::array({1.0, 0.0}), Json::array({-1.0, 0.0}),
                           Json::array({0.0, 1.0}), Json::array({0.0, -1.0})})},
        {"b", Json::array({0.1, 0.1, 0.1, 0.1})}};
    j["tube"] = {{"name", "cwh_tube"},
                 {"y_max", 1.0},
                 {"velocity_bound", 0.05},
                 {"cone_sign", 1.0}};
    Json cov = Json::array();
    const double diag[4] = {1e-4, 1e-4, 5e-8, 5e-8};
    for (int r = 0; r < 4; ++r) {
      Json row = Json::array();
      for (int c = 0; c < 4; ++c) row.push_back(r == c ? diag[r] : 0.0);
      cov.push_back(std::move(row));
    }
    j["disturbance"] = {{"type", "gaussian"},
                        {"mean", Json::array({0.0, 0.0, 0.0, 0.0})},
                        {"cov", std::move(cov)}};
    j["bounded_set"] = {{"strategy", "ellipsoid"}};
    j["cross_section"] = {{"coords", Json::array({2, 3})},
                          {"values", Json::array({0.0, 0.0})}};
    j["checks"] = Json::array({"nonempty", "containment"});
    j["seed"] = 2025;
    j["output_dir"] = "out/cwh";
    j["metadata"] = {
        {"level_radius_sq_dim4", chi2_quantile(4, std::pow(0.8, 0.2))},
        {"level_radius_sq_dim2", chi2_quantile(2, std::pow(0.8, 0.2))},
        {"quoted_radius_sq", 6.26}};
    const std::string path = out_dir + "/cwh.json";
    write_text_file(path, j.dump(2) + "\n");
    paths.push_back(path);
  }

  return paths;
}

}  // namespace polytube
