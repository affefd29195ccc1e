#include "stabcg/problems.hpp"

#include <cmath>

#include "stabcg/errors.hpp"

namespace stabcg {

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Advection: return "advection";
    case ProblemKind::Burgers: return "burgers";
    case ProblemKind::ShallowWater: return "sw";
  }
  return "?";
}

ProblemKind parse_problem(std::string_view name) {
  if (name == "advection") return ProblemKind::Advection;
  if (name == "burgers") return ProblemKind::Burgers;
  if (name == "sw") return ProblemKind::ShallowWater;
  throw Error(ErrorKind::Config, "unknown problem '" + std::string(name) + "'");
}

double ShallowWaterParams::kappa() const {
  return std::sqrt(3.0 * eps / (4.0 * h0 * h0 * (1.0 + eps)));
}

double ShallowWaterParams::celerity() const { return std::sqrt(g * h0 * (1.0 + eps)); }

double advection_u0(double x) { return 0.1 * std::sin(M_PI * x); }

double burgers_u0(double x) { return -std::tanh(4.0 * (x - 1.0)); }

double burgers_characteristic_foot(double x, double t) {
  if (t == 0.0) return x;
  // F(chi) = chi + u0(chi) t - x is increasing for t < 1/4; |u0| <= 1 brackets the root.
  double lo = x - t;
  double hi = x + t;
  double chi = x;
  for (int it = 0; it < 100; ++it) {
    const double th = std::tanh(4.0 * (chi - 1.0));
    const double f = chi - th * t - x;
    if (std::abs(f) < 1e-12) return chi;
    if (f > 0.0) hi = chi; else lo = chi;
    const double df = 1.0 - 4.0 * t * (1.0 - th * th);
    double next = chi - f / df;
    if (!(df > 0.0) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    chi = next;
  }
  throw Error(ErrorKind::NoConvergence, "characteristic solve did not converge");
}

double exact_burgers(double x, double t) { return burgers_u0(burgers_characteristic_foot(x, t)); }

Eigen::Vector2d exact_shallow_water(double x, double t, const ShallowWaterParams& prm) {
  const double s = 1.0 / std::cosh(prm.kappa() * (x - prm.celerity() * t));
  const double h = prm.h0 * (1.0 + prm.eps * s * s);
  const double u = prm.celerity() * (1.0 - prm.h0 / h);
  return {h, h * u};
}

double shallow_water_source(double x, double t, const ShallowWaterParams& prm) {
  const double k = prm.kappa();
  const double c = prm.celerity();
  const double xi = k * (x - c * t);
  const double s = 1.0 / std::cosh(xi);
  const double sech2 = s * s;
  const double h = prm.h0 * (1.0 + prm.eps * sech2);
  const double hx = prm.h0 * prm.eps * k * (-2.0 * sech2 * std::tanh(xi));
  const double u = c * (1.0 - prm.h0 / h);
  const double ux = c * prm.h0 * hx / (h * h);
  const double ut = -c * ux;
  return -h * (ut + u * ux + prm.g * hx);
}

Eigen::VectorXd ProblemSpec::exact(double x, double t) const {
  Eigen::VectorXd v(kind == ProblemKind::ShallowWater ? 2 : 1);
  switch (kind) {
    case ProblemKind::Advection: {
      const double a = std::get<LinearFlux>(flux).a;
      v[0] = advection_u0(x - a * t);
      break;
    }
    case ProblemKind::Burgers: v[0] = exact_burgers(x, t); break;
    case ProblemKind::ShallowWater: v = exact_shallow_water(x, t, sw); break;
  }
  return v;
}

Eigen::VectorXd ProblemSpec::source(double x, double t) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(kind == ProblemKind::ShallowWater ? 2 : 1);
  if (kind == ProblemKind::ShallowWater) v[1] = -shallow_water_source(x, t, sw);
  return v;
}

void ProblemSpec::source(double x, double t, double* out) const {
  out[0] = 0.0;
  if (kind == ProblemKind::ShallowWater) out[1] = -shallow_water_source(x, t, sw);
}

ProblemSpec make_problem(ProblemKind kind) {
  ProblemSpec p;
  p.kind = kind;
  switch (kind) {
    case ProblemKind::Advection:
      p.x_left = 0.0;
      p.x_right = 2.0;
      p.t_final = 5.0;
      p.boundary = Boundary::Periodic;
      p.flux = LinearFlux{1.0};
      break;
    case ProblemKind::Burgers:
      p.x_left = 0.0;
      p.x_right = 2.0;
      p.t_final = 0.125;
      p.boundary = Boundary::Dirichlet;
      p.flux = BurgersFlux{};
      break;
    case ProblemKind::ShallowWater:
      p.x_left = 0.0;
      p.x_right = 200.0;
      p.t_final = 5.0;
      p.boundary = Boundary::Dirichlet;
      p.flux = ShallowWaterFlux{p.sw.g};
      break;
  }
  return p;
}

}  // namespace stabcg
