#include "stabcg/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "stabcg/fourier.hpp"
#include "stabcg/scan.hpp"
#include "stabcg/solver.hpp"

namespace stabcg {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json num_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::ofstream open_output(const RunConfig& c, const std::string& name) {
  fs::create_directories(c.out);
  std::ofstream f(fs::path(c.out) / name);
  if (!f) throw Error(ErrorKind::Config, "cannot write " + (fs::path(c.out) / name).string());
  return f;
}

std::ofstream open_csv(const RunConfig& c, const std::string& name, const std::string& columns) {
  std::ofstream f = open_output(c, name);
  f << "# config " << c.to_json() << "\n" << columns << "\n";
  return f;
}

void write_json(const RunConfig& c, const std::string& name, json body) {
  body["config"] = json::parse(c.to_json());
  open_output(c, name) << body.dump(2) << "\n";
}

template <class T>
std::vector<T> pick(const std::optional<T>& v, std::vector<T> all) {
  return v ? std::vector<T>{*v} : all;
}

std::vector<Combination> combinations(const RunConfig& c, std::vector<SchemeKind> schemes,
                                      std::vector<StabKind> stabs) {
  std::vector<Combination> out;
  for (ElementFamily f : pick(c.family, {ElementFamily::Basic, ElementFamily::Cubature,
                                         ElementFamily::Bernstein}))
    for (SchemeKind t : pick(c.time, schemes))
      for (StabKind s : pick(c.stab, stabs))
        for (int p : pick(c.degree, {1, 2, 3}))
          out.push_back({f, p, s, t, c.lps_lumped});
  return out;
}

Combination single_combination(const RunConfig& c) {
  return {c.family.value_or(ElementFamily::Cubature), c.degree.value_or(1),
          c.stab.value_or(StabKind::None), c.time.value_or(SchemeKind::SSPRK), c.lps_lumped};
}

ScanGrid make_grid(const RunConfig& c) {
  ScanGrid g;
  g.cfl = geometric_grid(c.grid.cfl_min, c.grid.cfl_max, c.grid.cfl_ratio);
  g.delta = geometric_grid(c.grid.delta_min, c.grid.delta_max, c.grid.delta_ratio);
  g.theta_samples = c.theta_samples.value_or(100);
  if (g.cfl.empty() || g.delta.empty()) throw Error(ErrorKind::Config, "empty scan grid");
  return g;
}

const std::vector<StabKind> kAllStabs = {StabKind::None, StabKind::SUPG, StabKind::CIP,
                                         StabKind::LPS};
const std::vector<SchemeKind> kAllSchemes = {SchemeKind::RK, SchemeKind::SSPRK, SchemeKind::DeC};

std::string combo_columns(const Combination& k) {
  return std::string(to_string(k.family)) + "," + std::to_string(k.degree) + "," +
         std::string(to_string(k.stab)) + "," + std::string(to_string(k.scheme));
}

json scan_json(const ScanResult& r) {
  json mask = json::array(), eu = json::array(), ew = json::array();
  for (std::size_t d = 0; d < r.grid.delta.size(); ++d) {
    json row = json::array(), ru = json::array(), rw = json::array();
    for (std::size_t i = 0; i < r.grid.cfl.size(); ++i) {
      const std::size_t at = r.at(static_cast<int>(d), static_cast<int>(i));
      row.push_back(static_cast<int>(r.stable[at]));
      ru.push_back(num_or_null(r.eta_u[at]));
      rw.push_back(num_or_null(r.eta_w[at]));
    }
    mask.push_back(row);
    eu.push_back(ru);
    ew.push_back(rw);
  }
  json optima = json::array();
  for (const Optimum& o : r.optima)
    optima.push_back({{"strategy", to_string(o.strategy)},
                      {"cfl", o.cfl},
                      {"delta", o.delta},
                      {"objective", num_or_null(o.objective)},
                      {"monotone_safe", o.monotone_safe}});
  return {{"combination", r.combination.label()},
          {"cfl", r.grid.cfl},
          {"delta", r.grid.delta},
          {"theta_samples", r.grid.theta_samples},
          {"stable", mask},
          {"eta_u", eu},
          {"eta_w", ew},
          {"optima", optima}};
}

SimulationSettings settings_for(const RunConfig& c, const Combination& k, double cfl, double delta) {
  SimulationSettings s;
  s.family = k.family;
  s.degree = k.degree;
  s.stab = k.stab;
  s.scheme = k.scheme;
  s.cfl = cfl;
  s.delta = delta;
  s.lps_lumped_projection = k.lps_lumped_projection;
  s.nonlinear_speed = c.nonlinear_speed;
  return s;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::UnsupportedDegree:
    case ErrorKind::Unsupported: return kExitConfig;
    case ErrorKind::NoStableRegion: return kExitNoStableRegion;
    default: return kExitNumerical;
  }
}

int cmd_modes(const RunConfig& c, std::ostream& log) {
  const Combination k = single_combination(c);
  const ReferenceElement ref = build_reference_element(k.family, k.degree);
  const StabilizationSpec spec = k.spec(c.delta.value_or(0.0));
  const TimeScheme scheme = k.time_scheme();
  const int n = c.theta_samples.value_or(200);
  const double dx = k.degree;  // average node spacing 1
  const bool closed = k.family == ElementFamily::Basic && k.degree == 1 && k.stab == StabKind::None;

  const std::string name = "modes_" + k.label() + (c.semi_discrete ? "_semi" : "") + ".csv";
  std::ofstream f = open_csv(c, name,
                             std::string("theta,mode_index,omega_over_k,epsilon,is_principal") +
                                 (closed ? ",closed_form_omega_over_k" : ""));
  for (int j = 1; j <= n; ++j) {
    const double theta = M_PI * j / n;
    const double kk = theta / dx;
    ModeAnalysis m;
    if (c.semi_discrete)
      m = semidiscrete_modes(assemble_symbol(ref, spec, theta, dx), kk);
    else
      m = extract_modes(amplification_matrix(ref, spec, scheme, theta, *c.cfl, dx), kk, 1.0);
    for (std::size_t i = 0; i < m.modes.size(); ++i) {
      f << num(theta) << "," << i << "," << num(m.modes[i].omega_over_k) << ","
        << num(m.modes[i].epsilon) << "," << (static_cast<int>(i) == m.principal ? 1 : 0);
      if (closed) f << "," << num(p1_omega_over_k(theta, 1.0));
      f << "\n";
    }
  }
  log << "wrote " << (fs::path(c.out) / name).string() << "\n";
  return kExitOk;
}

namespace {

std::vector<ScanResult> run_scans(const RunConfig& c, std::ostream& log) {
  const ScanGrid grid = make_grid(c);
  std::vector<ScanResult> results;
  for (const Combination& k : combinations(c, kAllSchemes, kAllStabs)) {
    ScanResult r = scan(k, grid, c.jobs);
    optimize_all(r, c.mu);
    if (!r.any_stable()) log << k.label() << ": no stable region\n";
    results.push_back(std::move(r));
  }
  return results;
}

int scans_exit_code(const std::vector<ScanResult>& results) {
  for (const ScanResult& r : results)
    if (r.any_stable()) return kExitOk;
  return kExitNoStableRegion;
}

}  // namespace

int cmd_scan(const RunConfig& c, std::ostream& log) {
  const std::vector<ScanResult> results = run_scans(c, log);
  for (const ScanResult& r : results) {
    const std::string label = r.combination.label();
    write_json(c, "scan_" + label + ".json", scan_json(r));
    std::ofstream f = open_csv(c, "mask_" + label + ".csv", "i_delta,i_cfl,delta,cfl,stable,eta_u,eta_w");
    for (std::size_t d = 0; d < r.grid.delta.size(); ++d)
      for (std::size_t i = 0; i < r.grid.cfl.size(); ++i) {
        const std::size_t at = r.at(static_cast<int>(d), static_cast<int>(i));
        f << d << "," << i << "," << num(r.grid.delta[d]) << "," << num(r.grid.cfl[i]) << ","
          << static_cast<int>(r.stable[at]) << "," << num(r.eta_u[at]) << ","
          << num(r.eta_w[at]) << "\n";
      }
    log << label << ": " << (r.any_stable() ? "done" : "no stable region") << "\n";
  }
  return scans_exit_code(results);
}

int cmd_optimize(const RunConfig& c, std::ostream& log) {
  const std::vector<ScanResult> results = run_scans(c, log);
  std::ofstream f = open_csv(c, "optimize.csv",
                             "family,degree,stab,time,strategy,cfl,delta,objective,monotone_safe");
  for (const ScanResult& r : results)
    for (Strategy s : {Strategy::MaxCFL, Strategy::MinEtaU, Strategy::MinEtaW}) {
      f << combo_columns(r.combination) << "," << to_string(s) << ",";
      const Optimum* o = nullptr;
      for (const Optimum& x : r.optima)
        if (x.strategy == s) o = &x;
      if (!o) {
        f << "/,/,/,/\n";
        continue;
      }
      f << num(o->cfl) << "," << num(o->delta) << "," << num(o->objective) << ","
        << (o->monotone_safe ? 1 : 0) << "\n";
    }
  log << "wrote " << (fs::path(c.out) / "optimize.csv").string() << "\n";
  return scans_exit_code(results);
}

int cmd_solve(const RunConfig& c, std::ostream& log) {
  const ProblemSpec problem = make_problem(c.problem);
  const Combination k = single_combination(c);
  SimulationSettings s = settings_for(c, k, *c.cfl, c.delta.value_or(0.0));
  s.n_cells = c.cells.front();
  const SimulationResult r = run_simulation(problem, s);

  const std::string stem = "solve_" + std::string(to_string(c.problem)) + "_" + k.label();
  write_json(c, stem + ".json",
             {{"ok", r.ok},
              {"failure", r.failure},
              {"l2_error", r.l2_error},
              {"l2_error_initial", r.l2_error_initial},
              {"final_time", r.final_time},
              {"steps", r.steps},
              {"dx", r.dx},
              {"dofs", r.dofs}});
  if (r.ok) {
    const int nc = n_components(problem.flux);
    const ReferenceElement ref = build_reference_element(k.family, k.degree);
    const Mesh1D mesh{problem.x_left, problem.x_right, s.n_cells, problem.boundary};
    std::string cols = "dof,x";
    for (int q = 0; q < nc; ++q) cols += ",u" + std::to_string(q);
    for (int q = 0; q < nc; ++q) cols += ",exact" + std::to_string(q);
    std::ofstream f = open_csv(c, stem + "_state.csv", cols);
    const int nd = mesh.n_dofs(k.degree);
    for (int d = 0; d < nd; ++d) {
      const int cell = std::min(d / k.degree, mesh.n_cells - 1);
      const double x = mesh.x_left + (cell + ref.nodes()[d - cell * k.degree]) * mesh.dx();
      const Eigen::VectorXd ex = problem.exact(x, r.final_time);
      f << d << "," << num(x);
      for (int q = 0; q < nc; ++q) f << "," << num(r.state[d * nc + q]);
      for (int q = 0; q < nc; ++q) f << "," << num(ex[q]);
      f << "\n";
    }
  }
  log << stem << ": " << (r.ok ? "l2 error " + num(r.l2_error) : "failed: " + r.failure) << "\n";
  return r.ok ? kExitOk : kExitNumerical;
}

int cmd_convergence(const RunConfig& c, std::ostream& log) {
  const ProblemSpec problem = make_problem(c.problem);
  std::vector<StabKind> stabs = kAllStabs;
  if (c.problem == ProblemKind::ShallowWater) stabs = {StabKind::None, StabKind::CIP, StabKind::LPS};
  const std::vector<Combination> combos =
      combinations(c, {SchemeKind::SSPRK, SchemeKind::DeC}, stabs);
  const std::string tag = std::string(to_string(c.problem));
  std::ofstream summary = open_csv(c, "convergence_" + tag + ".csv",
                                   "family,degree,stab,time,cfl,delta,order");
  std::ofstream levels = open_csv(c, "convergence_" + tag + "_levels.csv",
                                  "family,degree,stab,time,n_cells,dx,dofs,l2_error,ok");
  // Wall times are hardware dependent; they live in their own file.
  std::ofstream timing = open_csv(c, "timing_" + tag + ".csv",
                                  "family,degree,stab,time,dofs,l2_error,wall_time_s");
  bool any = false;
  for (const Combination& k : combos) {
    double cfl = 0.0, delta = 0.0;
    if (c.cfl) {
      cfl = *c.cfl;
      delta = c.delta.value_or(0.0);
    } else {
      ScanResult r = scan(k, make_grid(c), c.jobs);
      if (!r.any_stable()) {
        summary << combo_columns(k) << ",/,/,/\n";
        log << k.label() << ": no stable region\n";
        continue;
      }
      const Optimum o = optimize(r, Strategy::MinEtaU, c.mu);
      cfl = o.cfl;
      delta = k.stab == StabKind::None ? 0.0 : o.delta;
    }
    const std::vector<int> cells =
        c.cells.empty() ? default_levels(problem, k.degree, c.levels) : c.cells;
    const ConvergenceReport rep =
        convergence_study(problem, settings_for(c, k, cfl, delta), cells, c.jobs);
    summary << combo_columns(k) << "," << num(cfl) << "," << num(delta) << ","
            << (rep.ok ? num(rep.order) : std::string("/")) << "\n";
    for (const ConvergenceLevel& lv : rep.levels) {
      levels << combo_columns(k) << "," << lv.n_cells << "," << num(lv.dx) << "," << lv.dofs
             << "," << num(lv.l2_error) << "," << (lv.ok ? 1 : 0) << "\n";
      timing << combo_columns(k) << "," << lv.dofs << "," << num(lv.l2_error) << ","
             << num(lv.wall_time_s) << "\n";
    }
    log << k.label() << ": order " << (rep.ok ? num(rep.order) : std::string("/")) << "\n";
    any = any || rep.ok;
  }
  return any ? kExitOk : kExitNumerical;
}

int run_command(const RunConfig& c, std::ostream& log) {
  try {
    validate(c);
    if (c.command == "modes") return cmd_modes(c, log);
    if (c.command == "scan") return cmd_scan(c, log);
    if (c.command == "optimize") return cmd_optimize(c, log);
    if (c.command == "solve") return cmd_solve(c, log);
    return cmd_convergence(c, log);
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace stabcg
