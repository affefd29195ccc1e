#pragma once

// Fourier (von Neumann) analysis of the periodic linear advection
// discretization. A Bloch mode U_{c,r} = U~_r e^{i c theta} reduces the global
// system to p x p complex matrices: M~ dU~/dt = -a K~ U~.

#include <vector>

#include <Eigen/Dense>

#include "stabcg/eigen_small.hpp"
#include "stabcg/elements.hpp"
#include "stabcg/stabilization.hpp"
#include "stabcg/timeint.hpp"

namespace stabcg {

struct SymbolPair {
  double theta = 0.0;
  double speed = 1.0;
  Eigen::MatrixXcd mass;    // M~ (includes the SUPG block)
  Eigen::MatrixXcd conv;    // K~: convection plus stabilization divided by the speed
  Eigen::VectorXd lumped;   // row sums of M~ at theta = 0 (global lumped mass)

  /// A~ = -a M~^{-1} K~, so that dU~/dt = A~ U~.
  Eigen::MatrixXcd generator() const;
};

struct Mode {
  double omega_over_k = 0.0;
  double epsilon = 0.0;
  cplx eigenvalue;
};

struct ModeAnalysis {
  double theta = 0.0;
  std::vector<Mode> modes;
  int principal = 0;
};

struct AmplificationMatrix {
  double theta = 0.0;
  double cfl = 0.0;
  double delta = 0.0;
  double dt = 0.0;
  Eigen::MatrixXcd G;
};

/// Time step from the CFL number: dt = cfl * dx / |a| with dx the cell size.
double time_step_from_cfl(double cfl, double dx, double speed);

/// Symbol at reduced wavenumber theta = k dx, for constant speed a != 0.
SymbolPair assemble_symbol(const ReferenceElement& ref, const StabilizationSpec& stab,
                           double theta, double dx, double speed = 1.0);

/// lambda = eig(a M~^{-1} K~), omega = Im lambda, epsilon = -Re lambda.
ModeAnalysis semidiscrete_modes(const SymbolPair& symbol, double k);

/// One-step propagator G for the given scheme.
AmplificationMatrix amplification_matrix(const ReferenceElement& ref,
                                         const StabilizationSpec& stab,
                                         const TimeScheme& scheme, double theta, double cfl,
                                         double dx, double speed = 1.0);

/// G from a precomputed symbol.
Eigen::MatrixXcd amplification_from_symbol(const SymbolPair& symbol, const TimeScheme& scheme,
                                           double dt);

/// omega dt = atan2(-Im lambda, Re lambda), epsilon = ln|lambda| / dt.
/// A zero eigenvalue gives epsilon = -infinity.
ModeAnalysis extract_modes(const std::vector<cplx>& lambda, double theta, double k, double dt,
                           double speed);
ModeAnalysis extract_modes(const AmplificationMatrix& g, double k, double speed);

/// Index of the mode minimizing |omega_i - a k|.
int principal_mode(const std::vector<Mode>& modes, double k, double speed);

/// Closed-form semi-discrete dispersion of unstabilized basic elements.
double p1_omega_over_k(double theta, double speed);
/// Both P2 branches; `sign` = +1 or -1 selects the branch.
double p2_omega_over_k(double theta, double speed, int sign);

}  // namespace stabcg
