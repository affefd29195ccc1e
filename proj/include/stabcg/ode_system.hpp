#pragma once

#include <Eigen/Dense>

namespace stabcg {

// Semi-discrete system M dU/dt = r(U, t) as seen by the time integrators.
class OdeSystem {
 public:
  virtual ~OdeSystem() = default;

  virtual Eigen::Index size() const = 0;
  virtual Eigen::VectorXd residual(const Eigen::VectorXd& u, double t) const = 0;

  /// Called once at the start of every step; state-dependent mass blocks are frozen here.
  virtual void begin_step(const Eigen::VectorXd& /*u*/, double /*t*/) {}

  /// M^{-1} r. May factorize M on first use.
  virtual Eigen::VectorXd solve_mass(const Eigen::VectorXd& r) const = 0;
  virtual Eigen::VectorXd apply_mass(const Eigen::VectorXd& u) const = 0;

  /// Row sums of M.
  virtual const Eigen::VectorXd& lumped_mass() const = 0;

  /// Imposes strong boundary data at time t (no-op for periodic systems).
  virtual void constrain(Eigen::VectorXd& /*u*/, double /*t*/) const {}

  /// Number of factorizations of M performed so far.
  virtual int mass_factorizations() const { return 0; }
};

}  // namespace stabcg
