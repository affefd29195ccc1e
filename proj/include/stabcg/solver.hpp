#pragma once

// Time-domain runs of the test problems and mesh convergence studies.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stabcg/problems.hpp"
#include "stabcg/stabilization.hpp"
#include "stabcg/timeint.hpp"

namespace stabcg {

struct SimulationSettings {
  ElementFamily family = ElementFamily::Cubature;
  int degree = 1;
  StabKind stab = StabKind::None;
  double delta = 0.0;
  SchemeKind scheme = SchemeKind::SSPRK;
  double cfl = 0.1;
  int n_cells = 10;
  bool lps_lumped_projection = false;
  // Nonlinear problems: dt = cfl * dx / max wave speed, refreshed every step.
  // "initial" freezes the speed of the initial state instead.
  std::string nonlinear_speed = "global_max";
};

struct SimulationResult {
  bool ok = true;
  std::string failure;
  double l2_error = 0.0;
  double l2_error_initial = 0.0;
  double final_time = 0.0;
  int steps = 0;
  double dx = 0.0;
  int dofs = 0;
  double wall_time_s = 0.0;
  Eigen::VectorXd state;
};

/// Blow-up (NaN or max |U| > 1e10) and numerical errors are reported with ok = false.
SimulationResult run_simulation(const ProblemSpec& problem, const SimulationSettings& settings);

struct ConvergenceLevel {
  int n_cells = 0;
  double dx = 0.0;
  int dofs = 0;
  double l2_error = 0.0;
  double wall_time_s = 0.0;
  bool ok = true;
  std::string failure;
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  double order = 0.0;
  bool ok = false;  // at least three surviving levels
};

/// Cells per level so that dx = p * dx1 for dx1 in {0.05, 0.025, 0.0125, 0.00625},
/// rounded to the nearest integer cell count.
std::vector<int> default_levels(const ProblemSpec& problem, int degree, int n_levels = 4);

/// Least-squares slope of log(err) against log(dx).
double fit_order(const std::vector<double>& dx, const std::vector<double>& err);

ConvergenceReport convergence_study(const ProblemSpec& problem, SimulationSettings settings,
                                    const std::vector<int>& cells, int jobs = 1);

}  // namespace stabcg
