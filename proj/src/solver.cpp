#include "stabcg/solver.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "stabcg/errors.hpp"

namespace stabcg {

SimulationResult run_simulation(const ProblemSpec& problem, const SimulationSettings& s) {
  const auto start = std::chrono::steady_clock::now();
  SimulationResult res;
  Mesh1D mesh{problem.x_left, problem.x_right, s.n_cells, problem.boundary};
  res.dx = mesh.dx();
  try {
    const ReferenceElement ref = build_reference_element(s.family, s.degree);
    SystemOptions opts;
    if (problem.boundary == Boundary::Dirichlet)
      opts.boundary_data = [&problem](double x, double t) { return problem.exact(x, t); };
    if (problem.has_source())
      opts.source = [&problem](double x, double t, double* out) { problem.source(x, t, out); };
    auto sys = assemble_system(mesh, ref, {s.stab, s.delta, s.lps_lumped_projection},
                               problem.flux, std::move(opts));
    res.dofs = static_cast<int>(sys->size());
    const TimeScheme scheme = default_scheme(s.scheme, s.degree);

    Eigen::VectorXd u = sys->interpolate([&problem](double x) { return problem.exact(x, 0.0); });
    auto exact_first = [&problem](double t) {
      return [&problem, t](double x) { return problem.exact(x, t)[0]; };
    };
    res.l2_error_initial = sys->l2_error(u, exact_first(0.0));

    const double T = problem.t_final;
    const double dx = mesh.dx();
    const bool linear = std::holds_alternative<LinearFlux>(problem.flux);
    const double speed0 = sys->max_speed(u);
    double t = 0.0;
    while (t < T) {
      double speed = speed0;
      if (!linear && s.nonlinear_speed == "global_max") speed = sys->max_speed(u);
      if (!(speed > 0.0)) throw Error(ErrorKind::NonFiniteState, "zero wave speed");
      double dt = s.cfl * dx / speed;
      if (t + dt >= T * (1.0 - 1e-14)) dt = T - t;
      u = step(*sys, u, t, dt, scheme);
      t = (dt == T - t) ? T : t + dt;
      ++res.steps;
      if (!u.allFinite() || u.cwiseAbs().maxCoeff() > 1e10)
        throw Error(ErrorKind::BlowUp, "solution blew up at t = " + std::to_string(t));
    }
    res.final_time = t;
    res.l2_error = sys->l2_error(u, exact_first(T));
    res.state = std::move(u);
  } catch (const Error& e) {
    res.ok = false;
    res.failure = e.what();
  }
  res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::vector<int> default_levels(const ProblemSpec& problem, int degree, int n_levels) {
  std::vector<int> cells;
  double dx1 = 0.05;
  for (int l = 0; l < n_levels; ++l, dx1 *= 0.5)
    cells.push_back(static_cast<int>(std::lround((problem.x_right - problem.x_left) / (degree * dx1))));
  return cells;
}

double fit_order(const std::vector<double>& dx, const std::vector<double>& err) {
  const std::size_t n = dx.size();
  if (n < 2 || err.size() != n) throw Error(ErrorKind::Config, "order fit needs matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(dx[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceReport convergence_study(const ProblemSpec& problem, SimulationSettings settings,
                                    const std::vector<int>& cells, int jobs) {
  if (cells.size() < 3) throw Error(ErrorKind::Config, "convergence study needs at least 3 levels");
  ConvergenceReport rep;
  rep.levels.resize(cells.size());
  auto run_level = [&](std::size_t i) {
    SimulationSettings s = settings;
    s.n_cells = cells[i];
    const SimulationResult r = run_simulation(problem, s);
    ConvergenceLevel& lv = rep.levels[i];
    lv.n_cells = cells[i];
    lv.dx = r.dx;
    lv.dofs = r.dofs;
    lv.l2_error = r.l2_error;
    lv.wall_time_s = r.wall_time_s;
    lv.ok = r.ok;
    lv.failure = r.failure;
  };
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_level(i);
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < cells.size(); i += jobs) run_level(i);
      });
    for (auto& t : workers) t.join();
  }
  std::vector<double> dx, err;
  for (const auto& lv : rep.levels)
    if (lv.ok && lv.l2_error > 0.0) {
      dx.push_back(lv.dx);
      err.push_back(lv.l2_error);
    }
  rep.ok = dx.size() >= 3;
  if (rep.ok) rep.order = fit_order(dx, err);
  return rep;
}

}  // namespace stabcg
