#pragma once

// Explicit time integrators for M dU/dt = r(U, t): Butcher-form RK,
// Shu-Osher SSPRK and deferred correction (DeC) with a lumped-mass update.

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "stabcg/ode_system.hpp"

namespace stabcg {

struct ButcherTableau {
  std::string name;
  int order = 0;
  std::vector<std::vector<double>> alpha;  // row s-1 holds alpha^s_j, j < s
  std::vector<double> beta;
};

struct ShuOsherTableau {
  std::string name;
  int order = 0;
  std::vector<std::vector<double>> gamma;  // row s-1 holds gamma^s_j, j < s
  std::vector<std::vector<double>> mu;
};

struct DeCConfig {
  int M = 1;  // subtimesteps
  int K = 2;  // iterations
  std::vector<double> beta;              // beta^m, m = 1..M
  std::vector<std::vector<double>> rho;  // rho^m_z, m = 1..M, z = 0..M
};

enum class SchemeKind { RK, SSPRK, DeC };

std::string_view to_string(SchemeKind kind);
SchemeKind parse_scheme(std::string_view name);

struct TimeScheme {
  SchemeKind kind = SchemeKind::RK;
  int order = 2;
  ButcherTableau rk;
  ShuOsherTableau ssprk;
  DeCConfig dec;
  std::string name() const;
};

/// RK2 (Heun), RK3 (Kutta) and classic RK4.
ButcherTableau butcher_tableau(int order);
/// SSPRK(3,2), SSPRK(4,3), SSPRK(5,4).
ShuOsherTableau shu_osher_tableau(int order);
/// Equispaced DeC of order 2..4 (M = order-1, K = order).
DeCConfig dec_config(int order);

/// Scheme of order p+1 for element degree p.
TimeScheme default_scheme(SchemeKind kind, int degree);

/// Stability polynomial coefficients nu_1..nu_S of U^{n+1} = (1 + sum_j nu_j z^j) U^n.
std::vector<double> expand_ssprk_coefficients(const ShuOsherTableau& tableau);
std::vector<double> expand_rk_coefficients(const ButcherTableau& tableau);
/// Dispatch for RK and SSPRK schemes.
std::vector<double> stability_polynomial(const TimeScheme& scheme);

Eigen::VectorXd rk_step(OdeSystem& system, const Eigen::VectorXd& u, double t, double dt,
                        const ButcherTableau& tableau);
Eigen::VectorXd ssprk_step(OdeSystem& system, const Eigen::VectorXd& u, double t, double dt,
                           const ShuOsherTableau& tableau);
/// Only the lumped mass D is inverted; M is applied, never factorized.
Eigen::VectorXd dec_step(OdeSystem& system, const Eigen::VectorXd& u, double t, double dt,
                         const DeCConfig& config);

Eigen::VectorXd step(OdeSystem& system, const Eigen::VectorXd& u, double t, double dt,
                     const TimeScheme& scheme);

}  // namespace stabcg
