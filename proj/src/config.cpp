#include "stabcg/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stabcg/errors.hpp"

namespace stabcg {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {
    "command", "family", "degree", "stab", "time", "cfl", "delta", "theta_samples",
    "problem", "cells", "levels", "out", "jobs", "seed", "mu", "semi_discrete",
    "lps_lumped", "nonlinear_speed", "grid"};
const std::set<std::string> kGridKeys = {"cfl_min", "cfl_max", "cfl_ratio",
                                         "delta_min", "delta_max", "delta_ratio"};

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("invalid value for '") + key + "'");
  }
}

}  // namespace

std::string RunConfig::to_json(int indent) const {
  json j;
  j["command"] = command;
  j["family"] = family ? json(std::string(stabcg::to_string(*family))) : json(nullptr);
  j["degree"] = degree ? json(*degree) : json(nullptr);
  j["stab"] = stab ? json(std::string(stabcg::to_string(*stab))) : json(nullptr);
  j["time"] = time ? json(std::string(stabcg::to_string(*time))) : json(nullptr);
  j["cfl"] = cfl ? json(*cfl) : json(nullptr);
  j["delta"] = delta ? json(*delta) : json(nullptr);
  j["theta_samples"] = theta_samples ? json(*theta_samples) : json(nullptr);
  j["problem"] = std::string(stabcg::to_string(problem));
  j["cells"] = cells;
  j["levels"] = levels;
  j["out"] = out;
  j["jobs"] = jobs;
  j["seed"] = seed;
  j["mu"] = mu;
  j["semi_discrete"] = semi_discrete;
  j["lps_lumped"] = lps_lumped;
  j["nonlinear_speed"] = nonlinear_speed;
  j["grid"] = {{"cfl_min", grid.cfl_min},     {"cfl_max", grid.cfl_max},
               {"cfl_ratio", grid.cfl_ratio}, {"delta_min", grid.delta_min},
               {"delta_max", grid.delta_max}, {"delta_ratio", grid.delta_ratio}};
  return j.dump(indent);
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kTopKeys.count(key)) bad("unknown config key '" + key + "'");

  RunConfig c;
  auto has = [&](const char* k) { return j.contains(k) && !j.at(k).is_null(); };
  if (has("command")) c.command = get<std::string>(j, "command");
  if (has("family")) c.family = parse_family(get<std::string>(j, "family"));
  if (has("degree")) c.degree = get<int>(j, "degree");
  if (has("stab")) c.stab = parse_stab(get<std::string>(j, "stab"));
  if (has("time")) c.time = parse_scheme(get<std::string>(j, "time"));
  if (has("cfl")) c.cfl = get<double>(j, "cfl");
  if (has("delta")) c.delta = get<double>(j, "delta");
  if (has("theta_samples")) c.theta_samples = get<int>(j, "theta_samples");
  if (has("problem")) c.problem = parse_problem(get<std::string>(j, "problem"));
  if (has("cells")) c.cells = get<std::vector<int>>(j, "cells");
  if (has("levels")) c.levels = get<int>(j, "levels");
  if (has("out")) c.out = get<std::string>(j, "out");
  if (has("jobs")) c.jobs = get<int>(j, "jobs");
  if (has("seed")) c.seed = get<unsigned>(j, "seed");
  if (has("mu")) c.mu = get<double>(j, "mu");
  if (has("semi_discrete")) c.semi_discrete = get<bool>(j, "semi_discrete");
  if (has("lps_lumped")) c.lps_lumped = get<bool>(j, "lps_lumped");
  if (has("nonlinear_speed")) c.nonlinear_speed = get<std::string>(j, "nonlinear_speed");
  if (has("grid")) {
    const json& g = j.at("grid");
    if (!g.is_object()) bad("'grid' must be an object");
    for (const auto& [key, value] : g.items())
      if (!kGridKeys.count(key)) bad("unknown grid key '" + key + "'");
    if (g.contains("cfl_min")) c.grid.cfl_min = get<double>(g, "cfl_min");
    if (g.contains("cfl_max")) c.grid.cfl_max = get<double>(g, "cfl_max");
    if (g.contains("cfl_ratio")) c.grid.cfl_ratio = get<double>(g, "cfl_ratio");
    if (g.contains("delta_min")) c.grid.delta_min = get<double>(g, "delta_min");
    if (g.contains("delta_max")) c.grid.delta_max = get<double>(g, "delta_max");
    if (g.contains("delta_ratio")) c.grid.delta_ratio = get<double>(g, "delta_ratio");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& c) {
  static const std::set<std::string> commands = {"modes", "scan", "optimize", "solve",
                                                 "convergence"};
  if (!commands.count(c.command)) bad("unknown command '" + c.command + "'");
  if (c.degree && (*c.degree < 1 || *c.degree > 3)) bad("degree must be 1, 2 or 3");
  if (c.cfl && !(*c.cfl > 0.0)) bad("cfl must be positive");
  if (c.delta && !(*c.delta >= 0.0)) bad("delta must be nonnegative");
  if (c.theta_samples && *c.theta_samples < 1) bad("theta_samples must be positive");
  if (c.jobs < 1) bad("jobs must be at least 1");
  if (!(c.mu >= 1.0)) bad("mu must be at least 1");
  if (c.nonlinear_speed != "global_max" && c.nonlinear_speed != "initial")
    bad("nonlinear_speed must be 'global_max' or 'initial'");
  const GridConfig& g = c.grid;
  if (!(g.cfl_min > 0.0) || !(g.cfl_max >= g.cfl_min) || !(g.cfl_ratio > 1.0) ||
      !(g.delta_min > 0.0) || !(g.delta_max >= g.delta_min) || !(g.delta_ratio > 1.0))
    bad("grid bounds must satisfy 0 < min <= max and ratio > 1");
  for (int n : c.cells)
    if (n < 1) bad("cell counts must be positive");

  if (c.command == "modes" && !c.semi_discrete && !c.cfl) bad("modes needs --cfl (or semi_discrete)");
  if (c.command == "solve" && c.cells.size() != 1) bad("solve needs exactly one --cells value");
  if (c.command == "solve" && !c.cfl) bad("solve needs --cfl");
  if (c.command == "convergence") {
    const std::size_t n = c.cells.empty() ? static_cast<std::size_t>(c.levels) : c.cells.size();
    if (n < 3) bad("convergence needs at least 3 levels");
    if (!c.cells.empty() && (!c.degree || !c.family || !c.stab || !c.time))
      bad("explicit --cells needs a single combination (family, degree, stab, time)");
    if (c.problem == ProblemKind::ShallowWater && c.stab == StabKind::SUPG)
      bad("SUPG is not available for shallow water");
  }
  if ((c.command == "modes" || c.command == "solve") && c.stab && *c.stab != StabKind::None &&
      !c.delta)
    bad(c.command + " needs --delta for a stabilized scheme");
}

}  // namespace stabcg
