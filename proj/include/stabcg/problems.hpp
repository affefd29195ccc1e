#pragma once

// Test problems with exact solutions: linear advection, Burgers before shock
// formation, and a shallow-water solitary wave driven by a manufactured source.

#include <string_view>

#include <Eigen/Dense>

#include "stabcg/stabilization.hpp"

namespace stabcg {

enum class ProblemKind { Advection, Burgers, ShallowWater };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem(std::string_view name);

struct ShallowWaterParams {
  double g = 9.81;
  double eps = 1.2;
  double h0 = 1.0;

  double kappa() const;     // sqrt(3 eps / (4 h0^2 (1 + eps)))
  double celerity() const;  // sqrt(g h0 (1 + eps))
};

struct ProblemSpec {
  ProblemKind kind = ProblemKind::Advection;
  double x_left = 0.0;
  double x_right = 2.0;
  double t_final = 5.0;
  Boundary boundary = Boundary::Periodic;
  Flux flux = LinearFlux{1.0};
  ShallowWaterParams sw;

  /// Exact conserved variables at (x, t).
  Eigen::VectorXd exact(double x, double t) const;
  /// Right-hand side of u_t + f(u)_x = source (zero except shallow water).
  Eigen::VectorXd source(double x, double t) const;
  void source(double x, double t, double* out) const;
  bool has_source() const { return kind == ProblemKind::ShallowWater; }
};

ProblemSpec make_problem(ProblemKind kind);

double advection_u0(double x);
double burgers_u0(double x);

/// Solves chi = x - u0(chi) t by safeguarded Newton (bisection fallback) to 1e-12
/// and returns u0(chi). Valid for t < 1/4. Throws NoConvergence after 100 iterations.
double exact_burgers(double x, double t);
double burgers_characteristic_foot(double x, double t);

/// (h, hu) of the solitary wave h = h0 (1 + eps sech^2(kappa (x - c t))), u = c (1 - h0 / h).
Eigen::Vector2d exact_shallow_water(double x, double t, const ShallowWaterParams& prm = {});

/// Phi = -h (u_t + u u_x + g h_x) from analytic derivatives; the momentum
/// equation reads (hu)_t + (h u^2 + g h^2 / 2)_x + Phi = 0.
double shallow_water_source(double x, double t, const ShallowWaterParams& prm = {});

}  // namespace stabcg
