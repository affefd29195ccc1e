#pragma once

// Global assembly of the stabilized continuous Galerkin semi-discretization
// M dU/dt = r(U, t) on a uniform 1D mesh.

#include <functional>
#include <memory>
#include <string_view>
#include <variant>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "stabcg/elements.hpp"
#include "stabcg/ode_system.hpp"

namespace stabcg {

enum class StabKind { None, SUPG, CIP, LPS };

std::string_view to_string(StabKind kind);
StabKind parse_stab(std::string_view name);

struct StabilizationSpec {
  StabKind kind = StabKind::None;
  double delta = 0.0;
  // LPS projection with the lumped mass (basic/Bernstein only; cubature is diagonal anyway).
  bool lps_lumped_projection = false;
};

enum class Boundary { Periodic, Dirichlet };

struct Mesh1D {
  double x_left = 0.0;
  double x_right = 1.0;
  int n_cells = 1;
  Boundary boundary = Boundary::Periodic;

  double dx() const { return (x_right - x_left) / n_cells; }
  int n_dofs(int p) const {
    return boundary == Boundary::Periodic ? p * n_cells : p * n_cells + 1;
  }
  int dof(int cell, int local, int p) const {
    const int g = cell * p + local;
    return boundary == Boundary::Periodic ? g % (p * n_cells) : g;
  }
};

struct LinearFlux {
  double a = 1.0;
};
struct BurgersFlux {};
struct ShallowWaterFlux {
  double g = 9.81;
};
using Flux = std::variant<LinearFlux, BurgersFlux, ShallowWaterFlux>;

int n_components(const Flux& flux);

/// Stabilization parameter for a cell (SUPG, LPS) or face (CIP).
/// SUPG with zero speed returns 0 and sets *speed_was_zero.
double tau_cell(const StabilizationSpec& stab, double dx, double speed,
                bool* speed_was_zero = nullptr);

// Pointwise vector data: returns n_components values at (x, t).
using PointData = std::function<Eigen::VectorXd(double x, double t)>;

// Writes n_components source values at (x, t) into out.
using SourceData = std::function<void(double x, double t, double* out)>;

struct SystemOptions {
  PointData boundary_data;  // required for Dirichlet meshes
  SourceData source;        // u_t + f(u)_x = source
};

class DiscreteSystem : public OdeSystem {
 public:
  DiscreteSystem(const Mesh1D& mesh, const ReferenceElement& ref,
                 const StabilizationSpec& stab, const Flux& flux,
                 SystemOptions options = {});

  const Mesh1D& mesh() const { return mesh_; }
  const ReferenceElement& reference() const { return ref_; }
  const StabilizationSpec& stabilization() const { return stab_; }
  const Flux& flux() const { return flux_; }
  const LocalMatrices& local() const { return lm_; }
  int components() const { return nc_; }
  int scalar_dofs() const { return n_scalar_; }

  /// Global index of component `comp` at scalar dof `d`.
  int index(int d, int comp) const { return d * nc_ + comp; }

  Eigen::Index size() const override { return n_scalar_ * nc_; }
  Eigen::VectorXd residual(const Eigen::VectorXd& u, double t) const override;
  void begin_step(const Eigen::VectorXd& u, double t) override;
  Eigen::VectorXd solve_mass(const Eigen::VectorXd& r) const override;
  Eigen::VectorXd apply_mass(const Eigen::VectorXd& u) const override;
  const Eigen::VectorXd& lumped_mass() const override { return lumped_; }
  void constrain(Eigen::VectorXd& u, double t) const override;
  int mass_factorizations() const override { return factorizations_; }

  const Eigen::SparseMatrix<double>& mass_matrix() const { return mass_; }
  const Eigen::SparseMatrix<double>& galerkin_mass() const { return galerkin_mass_; }

  /// Global L2 projection of the gradient of each component (LPS auxiliary field).
  Eigen::VectorXd lps_project_gradient(const Eigen::VectorXd& u) const;

  /// U^T r(U): semi-discrete rate of ||u_h||^2/2 for linear periodic problems.
  double semi_discrete_energy_rate(const Eigen::VectorXd& u) const;

  /// Per-cell reference speed |f'(u)| (max over quadrature points).
  Eigen::VectorXd cell_speeds(const Eigen::VectorXd& u) const;
  double max_speed(const Eigen::VectorXd& u) const;

  /// Interpolation for nodal families, L2 projection for Bernstein.
  Eigen::VectorXd interpolate(const std::function<Eigen::VectorXd(double)>& g) const;

  /// u_h(x) for x inside cell `cell`, reference coordinate xi.
  Eigen::VectorXd evaluate(const Eigen::VectorXd& u, int cell, double xi) const;

  /// sqrt(sum_K int_K |u_h - g|^2) for component `comp`, integrated with the
  /// element quadrature, or with a (p+3)-point Gauss-Legendre rule when `fine` is set.
  double l2_error(const Eigen::VectorXd& u, const std::function<double(double)>& g,
                  int comp = 0, bool fine = false) const;

  /// True when a SUPG tau fell back to zero because the speed vanished.
  bool zero_speed_warning() const { return zero_speed_warning_; }

 private:
  void assemble_mass(const Eigen::VectorXd* frozen);
  void gather(const Eigen::VectorXd& u, int cell, int comp, Eigen::VectorXd& out) const;
  double point_speed(const double* q) const;

  Mesh1D mesh_;
  ReferenceElement ref_;
  StabilizationSpec stab_;
  Flux flux_;
  SystemOptions options_;
  LocalMatrices lm_;
  int p_;
  int nc_;
  int n_scalar_;
  bool nonlinear_;

  Eigen::SparseMatrix<double> galerkin_mass_;  // scalar, unconstrained
  Eigen::SparseMatrix<double> mass_;           // full system, with SUPG block and boundary rows
  Eigen::VectorXd lumped_;
  bool mass_is_diagonal_ = false;
  Eigen::VectorXd mass_diagonal_;

  mutable std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> mass_lu_;
  mutable int factorizations_ = 0;

  // LPS projection (scalar galerkin mass, consistent or lumped).
  std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> projection_lu_;
  Eigen::VectorXd projection_diagonal_;
  bool projection_is_diagonal_ = false;

  mutable bool zero_speed_warning_ = false;
};

/// Builds and returns a heap-allocated system (avoids copying factorizations).
std::unique_ptr<DiscreteSystem> assemble_system(const Mesh1D& mesh, const ReferenceElement& ref,
                                                const StabilizationSpec& stab, const Flux& flux,
                                                SystemOptions options = {});

}  // namespace stabcg
