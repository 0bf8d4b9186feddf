// Scenario runner and geometry debug CLI.
//
//   polytube run --scenario file.json [--check a,b] [--seed N] [--out DIR]
//                [--dp-grid P] [--dim N]
//   polytube make-scenarios --out DIR
//   polytube geom <op> <file...> [--out FILE] (ops: normalize, convert,
//                intersect, minkowski-sum, pontryagin-diff, hull, support)
//
// Exit codes: 0 pass, 1 check failure, 2 config error, 3 internal error.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "polytube/errors.hpp"
#include "polytube/json_io.hpp"
#include "polytube/scenario.hpp"

using namespace polytube;

namespace {

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const Json::exception& e) {
    throw ConfigInvalid(path + ": " + e.what());
  }
}

int cmd_run(const std::string& scenario_path, const std::string& checks,
            int seed, const std::string& out, int dp_grid, int dim) {
  ScenarioConfig cfg = parse_scenario(load_json(scenario_path));
  if (!checks.empty()) {
    cfg.checks.clear();
    std::stringstream ss(checks);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) cfg.checks.push_back(item);
  }
  if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);
  if (!out.empty()) cfg.out_dir = out;
  if (dp_grid > 0 && cfg.grid)
    for (auto& p : cfg.grid->points) p = dp_grid;
  if (dim > 0) cfg = with_dimension(cfg, dim);

  const RunReport report = run_scenario(cfg);
  for (const auto& msg : report.messages) std::cout << msg << "\n";
  for (const auto& [name, ok] : report.check_results)
    std::cout << name << ": " << (ok ? "pass" : "fail") << "\n";
  std::cout << "outputs in " << cfg.out_dir << " (" << report.files_written.size()
            << " files)\n";
  return report.all_passed() ? 0 : 1;
}

int cmd_make(const std::string& out) {
  for (const auto& p : make_scenarios(out)) std::cout << p << "\n";
  return 0;
}

// Loads a polytope in either representation and returns both forms.
std::pair<HPolytope, VPolytope> load_polytope(const std::string& path) {
  const Json j = load_json(path);
  if (j.value("rep", "H") == "V") {
    const VPolytope v = vpolytope_from_json(j);
    return {to_hrep(v), v};
  }
  const HPolytope h = hpolytope_from_json(j);
  return {h, to_vrep(h)};
}

int cmd_geom(const std::string& op, const std::vector<std::string>& files,
             const std::string& out, const std::string& direction) {
  Json result;
  if (op == "normalize") {
    const Json j = load_json(files.at(0));
    if (j.value("rep", "H") == "V")
      result = vpolytope_to_json(vpolytope_from_json(j).normalized());
    else
      result = hpolytope_to_json(hpolytope_from_json(j).normalized());
  } else if (op == "convert") {
    const Json j = load_json(files.at(0));
    if (j.value("rep", "H") == "V")
      result = hpolytope_to_json(to_hrep(vpolytope_from_json(j)));
    else
      result = vpolytope_to_json(to_vrep(hpolytope_from_json(j)));
  } else if (op == "intersect") {
    result = hpolytope_to_json(intersect(load_polytope(files.at(0)).first,
                                         load_polytope(files.at(1)).first));
  } else if (op == "minkowski-sum") {
    result = vpolytope_to_json(minkowski_sum(load_polytope(files.at(0)).second,
                                             load_polytope(files.at(1)).second));
  } else if (op == "pontryagin-diff") {
    const Json qj = load_json(files.at(1));
    const HPolytope p = load_polytope(files.at(0)).first;
    if (qj.contains("type") && qj.at("type") == "ellipsoid")
      result = hpolytope_to_json(pontryagin_diff(p, ellipsoid_from_json(qj)));
    else
      result = hpolytope_to_json(
          pontryagin_diff(p, load_polytope(files.at(1)).second));
  } else if (op == "hull") {
    std::vector<VPolytope> parts;
    for (const auto& f : files) parts.push_back(load_polytope(f).second);
    result = vpolytope_to_json(convex_hull(parts));
  } else if (op == "support") {
    const auto [h, v] = load_polytope(files.at(0));
    const Vector d = vector_from_json(Json::parse(direction));
    result["h"] = h.support(d);
    result["argmax"] = vector_to_json(h.support_point(d));
  } else {
    throw ConfigInvalid("geom: unknown op \"" + op + "\"");
  }
  const std::string text = result.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian reach tubes over polytope calculus"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a scenario file");
  std::string scenario_path, checks, out_dir;
  int seed = -1, dp_grid = 0, dim = 0;
  run->add_option("--scenario", scenario_path, "scenario JSON path")
      ->required();
  run->add_option("--check", checks, "comma-separated checks override");
  run->add_option("--seed", seed, "seed override");
  run->add_option("--out", out_dir, "output directory override");
  run->add_option("--dp-grid", dp_grid, "DP grid points per dimension");
  run->add_option("--dim", dim, "state dimension override (integrator chain)");

  auto* make = app.add_subcommand("make-scenarios",
                                  "write the canonical scenario files");
  std::string make_out = "scenarios";
  make->add_option("--out", make_out, "output directory");

  auto* geom = app.add_subcommand("geom", "polytope calculus on JSON files");
  std::string op, geom_out, direction;
  std::vector<std::string> files;
  geom->add_option("op", op, "operation")->required();
  geom->add_option("files", files, "polytope JSON files");
  geom->add_option("--out", geom_out, "write result here instead of stdout");
  geom->add_option("--direction", direction,
                   "JSON array direction for `support`");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(scenario_path, checks, seed, out_dir, dp_grid, dim);
    if (make->parsed()) return cmd_make(make_out);
    if (geom->parsed()) return cmd_geom(op, files, geom_out, direction);
  } catch (const ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
