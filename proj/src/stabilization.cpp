#include "stabcg/stabilization.hpp"

#include <cmath>
#include <vector>

#include "stabcg/errors.hpp"

namespace stabcg {

namespace {

using Triplet = Eigen::Triplet<double>;
using SpMat = Eigen::SparseMatrix<double>;

std::unique_ptr<Eigen::SparseLU<SpMat>> factorize(const SpMat& m) {
  auto lu = std::make_unique<Eigen::SparseLU<SpMat>>();
  lu->analyzePattern(m);
  lu->factorize(m);
  if (lu->info() != Eigen::Success) throw Error(ErrorKind::SingularMass, "mass factorization failed");
  return lu;
}

}  // namespace

std::string_view to_string(StabKind kind) {
  switch (kind) {
    case StabKind::None: return "none";
    case StabKind::SUPG: return "supg";
    case StabKind::CIP: return "cip";
    case StabKind::LPS: return "lps";
  }
  return "?";
}

StabKind parse_stab(std::string_view name) {
  if (name == "none") return StabKind::None;
  if (name == "supg") return StabKind::SUPG;
  if (name == "cip") return StabKind::CIP;
  if (name == "lps") return StabKind::LPS;
  throw Error(ErrorKind::Config, "unknown stabilization '" + std::string(name) + "'");
}

int n_components(const Flux& flux) {
  return std::holds_alternative<ShallowWaterFlux>(flux) ? 2 : 1;
}

double tau_cell(const StabilizationSpec& stab, double dx, double speed, bool* speed_was_zero) {
  const double s = std::abs(speed);
  switch (stab.kind) {
    case StabKind::None: return 0.0;
    case StabKind::SUPG:
      if (s == 0.0) {
        if (speed_was_zero) *speed_was_zero = true;
        return 0.0;
      }
      return stab.delta * dx / s;
    case StabKind::LPS: return stab.delta * dx * s;
    case StabKind::CIP: return stab.delta * dx * dx * s;
  }
  return 0.0;
}

DiscreteSystem::DiscreteSystem(const Mesh1D& mesh, const ReferenceElement& ref,
                               const StabilizationSpec& stab, const Flux& flux,
                               SystemOptions options)
    : mesh_(mesh),
      ref_(ref),
      stab_(stab),
      flux_(flux),
      options_(std::move(options)),
      lm_(local_matrices(ref)),
      p_(ref.degree()),
      nc_(n_components(flux)),
      n_scalar_(mesh.n_dofs(ref.degree())),
      nonlinear_(!std::holds_alternative<LinearFlux>(flux)) {
  if (mesh_.n_cells < 1) throw Error(ErrorKind::Config, "mesh needs at least one cell");
  if (mesh_.boundary == Boundary::Periodic && n_scalar_ < 2)
    throw Error(ErrorKind::Config, "periodic mesh needs at least two dofs");
  if (mesh_.boundary == Boundary::Dirichlet && !options_.boundary_data)
    throw Error(ErrorKind::Config, "Dirichlet mesh requires boundary data");
  if (stab_.kind == StabKind::SUPG && nc_ > 1)
    throw Error(ErrorKind::Unsupported, "SUPG is implemented for scalar fluxes only");
  if (stab_.delta < 0.0) throw Error(ErrorKind::Config, "delta must be nonnegative");

  const double dx = mesh_.dx();
  std::vector<Triplet> trip;
  for (int c = 0; c < mesh_.n_cells; ++c)
    for (int i = 0; i <= p_; ++i)
      for (int j = 0; j <= p_; ++j)
        if (lm_.mass(i, j) != 0.0)
          trip.emplace_back(mesh_.dof(c, i, p_), mesh_.dof(c, j, p_), dx * lm_.mass(i, j));
  galerkin_mass_.resize(n_scalar_, n_scalar_);
  galerkin_mass_.setFromTriplets(trip.begin(), trip.end());

  if (stab_.kind == StabKind::LPS) {
    const bool diag = ref_.family() == ElementFamily::Cubature || stab_.lps_lumped_projection;
    if (diag) {
      projection_is_diagonal_ = true;
      projection_diagonal_ = galerkin_mass_ * Eigen::VectorXd::Ones(n_scalar_);
      if ((projection_diagonal_.array() <= 0.0).any())
        throw Error(ErrorKind::NonPositiveLumpedMass, "lumped projection mass not positive");
    } else {
      projection_lu_ = factorize(galerkin_mass_);
    }
  }

  if (nonlinear_ && stab_.kind == StabKind::SUPG) {
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(size());
    assemble_mass(&zero);
  } else {
    assemble_mass(nullptr);
  }
}

void DiscreteSystem::assemble_mass(const Eigen::VectorXd* frozen) {
  const double dx = mesh_.dx();
  const int nq = static_cast<int>(lm_.quad_weights.size());
  std::vector<Triplet> trip;
  const bool supg = stab_.kind == StabKind::SUPG;

  Eigen::VectorXd speeds;
  if (supg) speeds = frozen ? cell_speeds(*frozen) : Eigen::VectorXd::Constant(mesh_.n_cells, 0.0);
  if (supg && !nonlinear_) speeds.setConstant(std::abs(std::get<LinearFlux>(flux_).a));

  Eigen::VectorXd uc(p_ + 1);
  for (int c = 0; c < mesh_.n_cells; ++c) {
    Eigen::MatrixXd block = dx * lm_.mass;
    if (supg) {
      bool zero = false;
      const double tau = tau_cell(stab_, dx, speeds[c], &zero);
      if (zero) zero_speed_warning_ = true;
      if (tau != 0.0) {
        Eigen::VectorXd fp(nq);
        if (nonlinear_) {
          gather(*frozen, c, 0, uc);
          fp = lm_.basis_at_quad * uc;  // Burgers: f'(u) = u
        } else {
          fp.setConstant(std::get<LinearFlux>(flux_).a);
        }
        // tau int f'(u) phi_i' phi_j
        for (int q = 0; q < nq; ++q)
          block += tau * lm_.quad_weights[q] * fp[q] *
                   lm_.deriv_at_quad.row(q).transpose() * lm_.basis_at_quad.row(q);
      }
    }
    for (int i = 0; i <= p_; ++i)
      for (int j = 0; j <= p_; ++j)
        if (block(i, j) != 0.0)
          for (int k = 0; k < nc_; ++k)
            trip.emplace_back(index(mesh_.dof(c, i, p_), k), index(mesh_.dof(c, j, p_), k),
                              block(i, j));
  }

  SpMat m(size(), size());
  m.setFromTriplets(trip.begin(), trip.end());
  if (mesh_.boundary == Boundary::Dirichlet) {
    std::vector<Triplet> fixed;
    fixed.reserve(m.nonZeros());
    auto is_boundary = [&](Eigen::Index row) {
      const Eigen::Index d = row / nc_;
      return d == 0 || d == n_scalar_ - 1;
    };
    for (int col = 0; col < m.outerSize(); ++col)
      for (SpMat::InnerIterator it(m, col); it; ++it)
        if (!is_boundary(it.row())) fixed.emplace_back(it.row(), it.col(), it.value());
    for (int k = 0; k < nc_; ++k) {
      fixed.emplace_back(index(0, k), index(0, k), 1.0);
      fixed.emplace_back(index(n_scalar_ - 1, k), index(n_scalar_ - 1, k), 1.0);
    }
    m.setZero();
    m.setFromTriplets(fixed.begin(), fixed.end());
  }
  m.makeCompressed();
  mass_ = std::move(m);
  lumped_ = mass_ * Eigen::VectorXd::Ones(size());
  if ((lumped_.array() <= 0.0).any())
    throw Error(ErrorKind::NonPositiveLumpedMass, "lumped mass has nonpositive entries");

  mass_is_diagonal_ = true;
  for (int col = 0; col < mass_.outerSize() && mass_is_diagonal_; ++col)
    for (SpMat::InnerIterator it(mass_, col); it; ++it)
      if (it.row() != it.col() && it.value() != 0.0) {
        mass_is_diagonal_ = false;
        break;
      }
  if (mass_is_diagonal_) mass_diagonal_ = mass_.diagonal();
  mass_lu_.reset();
}

void DiscreteSystem::gather(const Eigen::VectorXd& u, int cell, int comp,
                            Eigen::VectorXd& out) const {
  out.resize(p_ + 1);
  for (int j = 0; j <= p_; ++j) out[j] = u[index(mesh_.dof(cell, j, p_), comp)];
}

double DiscreteSystem::point_speed(const double* q) const {
  if (const auto* lin = std::get_if<LinearFlux>(&flux_)) return std::abs(lin->a);
  if (std::holds_alternative<BurgersFlux>(flux_)) return std::abs(q[0]);
  const double g = std::get<ShallowWaterFlux>(flux_).g;
  const double h = q[0];
  if (!(h > 0.0)) throw Error(ErrorKind::NonFiniteState, "nonpositive water height");
  return std::abs(q[1] / h) + std::sqrt(g * h);
}

Eigen::VectorXd DiscreteSystem::cell_speeds(const Eigen::VectorXd& u) const {
  Eigen::VectorXd s(mesh_.n_cells);
  if (const auto* lin = std::get_if<LinearFlux>(&flux_)) {
    s.setConstant(std::abs(lin->a));
    return s;
  }
  const int nq = static_cast<int>(lm_.quad_weights.size());
  double uc[2][4];
  for (int c = 0; c < mesh_.n_cells; ++c) {
    for (int k = 0; k < nc_; ++k)
      for (int j = 0; j <= p_; ++j) uc[k][j] = u[index(mesh_.dof(c, j, p_), k)];
    double m = 0.0;
    for (int q = 0; q < nq; ++q) {
      double v[2] = {0.0, 0.0};
      for (int k = 0; k < nc_; ++k)
        for (int j = 0; j <= p_; ++j) v[k] += lm_.basis_at_quad(q, j) * uc[k][j];
      m = std::max(m, point_speed(v));
    }
    s[c] = m;
  }
  return s;
}

double DiscreteSystem::max_speed(const Eigen::VectorXd& u) const {
  return cell_speeds(u).maxCoeff();
}

Eigen::VectorXd DiscreteSystem::lps_project_gradient(const Eigen::VectorXd& u) const {
  if (stab_.kind != StabKind::LPS)
    throw Error(ErrorKind::Unsupported, "projection requires an LPS system");
  Eigen::VectorXd w(size());
  Eigen::VectorXd rhs(n_scalar_);
  Eigen::VectorXd uc;
  for (int k = 0; k < nc_; ++k) {
    rhs.setZero();
    for (int c = 0; c < mesh_.n_cells; ++c) {
      gather(u, c, k, uc);
      const Eigen::VectorXd local = lm_.deriv * uc;  // int phi_i u_h'
      for (int i = 0; i <= p_; ++i) rhs[mesh_.dof(c, i, p_)] += local[i];
    }
    Eigen::VectorXd wk = projection_is_diagonal_
                             ? Eigen::VectorXd(rhs.cwiseQuotient(projection_diagonal_))
                             : Eigen::VectorXd(projection_lu_->solve(rhs));
    for (int d = 0; d < n_scalar_; ++d) w[index(d, k)] = wk[d];
  }
  return w;
}

Eigen::VectorXd DiscreteSystem::residual(const Eigen::VectorXd& u, double t) const {
  const double dx = mesh_.dx();
  const int nq = static_cast<int>(lm_.quad_weights.size());
  const int nb = p_ + 1;
  Eigen::VectorXd r = Eigen::VectorXd::Zero(size());

  const bool need_speed = stab_.kind != StabKind::None;
  const Eigen::VectorXd speeds = need_speed ? cell_speeds(u) : Eigen::VectorXd();
  const bool lps = stab_.kind == StabKind::LPS;
  const bool supg = stab_.kind == StabKind::SUPG;
  const Eigen::VectorXd w = lps ? lps_project_gradient(u) : Eigen::VectorXd();
  const double a_lin = nonlinear_ ? 0.0 : std::get<LinearFlux>(flux_).a;

  // Fixed-size scratch: p <= 3, at most 2 components and 4 quadrature points.
  double uc[2][4], wc[2][4], uq[4][2], duq[4][2], wq[4][2], local[2][4];
  for (int c = 0; c < mesh_.n_cells; ++c) {
    int dofs[4];
    for (int j = 0; j < nb; ++j) dofs[j] = mesh_.dof(c, j, p_);
    for (int k = 0; k < nc_; ++k)
      for (int j = 0; j < nb; ++j) {
        uc[k][j] = u[index(dofs[j], k)];
        if (lps) wc[k][j] = w[index(dofs[j], k)];
      }
    for (int q = 0; q < nq; ++q)
      for (int k = 0; k < nc_; ++k) {
        double v = 0.0, dv = 0.0, wv = 0.0;
        for (int j = 0; j < nb; ++j) {
          v += lm_.basis_at_quad(q, j) * uc[k][j];
          dv += lm_.deriv_at_quad(q, j) * uc[k][j];
          if (lps) wv += lm_.basis_at_quad(q, j) * wc[k][j];
        }
        uq[q][k] = v;
        duq[q][k] = dv / dx;
        wq[q][k] = wv;
      }
    double tau = 0.0;
    if (need_speed && stab_.kind != StabKind::CIP) {
      bool zero = false;
      tau = tau_cell(stab_, dx, speeds[c], &zero);
      if (zero) zero_speed_warning_ = true;
    }
    for (int k = 0; k < nc_; ++k)
      for (int i = 0; i < nb; ++i) local[k][i] = 0.0;
    for (int q = 0; q < nq; ++q) {
      const double wgt = lm_.quad_weights[q];
      // flux derivative d/dx f(u_h) at the point, scaled to the reference cell
      double fx[2];
      if (!nonlinear_) {
        fx[0] = a_lin * duq[q][0] * dx;
      } else if (nc_ == 1) {
        fx[0] = uq[q][0] * duq[q][0] * dx;
      } else {
        const double g = std::get<ShallowWaterFlux>(flux_).g;
        const double h = uq[q][0], vel = uq[q][1] / h;
        fx[0] = duq[q][1] * dx;
        fx[1] = (2.0 * vel * duq[q][1] + (g * h - vel * vel) * duq[q][0]) * dx;
      }
      double src[2] = {0.0, 0.0};
      if (options_.source) options_.source(mesh_.x_left + (c + lm_.quad_points[q]) * dx, t, src);
      for (int k = 0; k < nc_; ++k) {
        // -int phi_i d_x f(u_h) minus the cell stabilization, plus int phi_i source
        double coef = 0.0;
        if (supg) {
          const double fp = nonlinear_ ? uq[q][0] : a_lin;
          coef -= tau * wgt * fp * fp * duq[q][k];
        } else if (lps) {
          coef -= tau * wgt * (duq[q][k] - wq[q][k]);
        }
        const double sc = wgt * (dx * src[k] - fx[k]);
        for (int i = 0; i < nb; ++i)
          local[k][i] += coef * lm_.deriv_at_quad(q, i) + sc * lm_.basis_at_quad(q, i);
      }
    }
    for (int k = 0; k < nc_; ++k)
      for (int i = 0; i < nb; ++i) r[index(dofs[i], k)] += local[k][i];
  }

  if (stab_.kind == StabKind::CIP) {
    const int first = mesh_.boundary == Boundary::Periodic ? 0 : 1;
    for (int c = first; c < mesh_.n_cells; ++c) {
      const int cl = (c - 1 + mesh_.n_cells) % mesh_.n_cells;
      const double tau_f = tau_cell(stab_, dx, std::max(speeds[cl], speeds[c]));
      for (int k = 0; k < nc_; ++k) {
        double jump = 0.0;
        for (int j = 0; j < nb; ++j)
          jump += lm_.deriv_left[j] * u[index(mesh_.dof(c, j, p_), k)] -
                  lm_.deriv_right[j] * u[index(mesh_.dof(cl, j, p_), k)];
        jump *= tau_f / (dx * dx);
        for (int i = 0; i < nb; ++i) {
          r[index(mesh_.dof(c, i, p_), k)] -= lm_.deriv_left[i] * jump;
          r[index(mesh_.dof(cl, i, p_), k)] += lm_.deriv_right[i] * jump;
        }
      }
    }
  }

  if (mesh_.boundary == Boundary::Dirichlet)
    for (int k = 0; k < nc_; ++k) {
      r[index(0, k)] = 0.0;
      r[index(n_scalar_ - 1, k)] = 0.0;
    }
  return r;
}

void DiscreteSystem::begin_step(const Eigen::VectorXd& u, double /*t*/) {
  if (nonlinear_ && stab_.kind == StabKind::SUPG) assemble_mass(&u);
}

Eigen::VectorXd DiscreteSystem::solve_mass(const Eigen::VectorXd& r) const {
  if (mass_is_diagonal_) return r.cwiseQuotient(mass_diagonal_);
  if (!mass_lu_) {
    mass_lu_ = factorize(mass_);
    ++factorizations_;
  }
  return mass_lu_->solve(r);
}

Eigen::VectorXd DiscreteSystem::apply_mass(const Eigen::VectorXd& u) const { return mass_ * u; }

void DiscreteSystem::constrain(Eigen::VectorXd& u, double t) const {
  if (mesh_.boundary != Boundary::Dirichlet) return;
  const Eigen::VectorXd left = options_.boundary_data(mesh_.x_left, t);
  const Eigen::VectorXd right = options_.boundary_data(mesh_.x_right, t);
  for (int k = 0; k < nc_; ++k) {
    u[index(0, k)] = left[k];
    u[index(n_scalar_ - 1, k)] = right[k];
  }
}

double DiscreteSystem::semi_discrete_energy_rate(const Eigen::VectorXd& u) const {
  if (stab_.kind == StabKind::SUPG)
    throw Error(ErrorKind::Unsupported, "energy rate is not defined for SUPG");
  if (nonlinear_ || mesh_.boundary != Boundary::Periodic)
    throw Error(ErrorKind::Unsupported, "energy rate requires a linear periodic problem");
  return u.dot(residual(u, 0.0));
}

Eigen::VectorXd DiscreteSystem::interpolate(
    const std::function<Eigen::VectorXd(double)>& g) const {
  const double dx = mesh_.dx();
  Eigen::VectorXd u(size());
  if (ref_.is_nodal()) {
    for (int c = 0; c < mesh_.n_cells; ++c)
      for (int j = 0; j <= p_; ++j) {
        const Eigen::VectorXd v = g(mesh_.x_left + (c + ref_.nodes()[j]) * dx);
        for (int k = 0; k < nc_; ++k) u[index(mesh_.dof(c, j, p_), k)] = v[k];
      }
    return u;
  }
  const QuadratureRule rule = gauss_legendre(p_ + 3);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n_scalar_, nc_);
  for (int c = 0; c < mesh_.n_cells; ++c)
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Eigen::VectorXd phi = ref_.eval_basis(rule.points[q]);
      const Eigen::VectorXd v = g(mesh_.x_left + (c + rule.points[q]) * dx);
      for (int i = 0; i <= p_; ++i)
        for (int k = 0; k < nc_; ++k)
          rhs(mesh_.dof(c, i, p_), k) += rule.weights[q] * dx * phi[i] * v[k];
    }
  auto lu = factorize(galerkin_mass_);
  for (int k = 0; k < nc_; ++k) {
    const Eigen::VectorXd col = lu->solve(rhs.col(k));
    for (int d = 0; d < n_scalar_; ++d) u[index(d, k)] = col[d];
  }
  if (mesh_.boundary == Boundary::Dirichlet) {
    const Eigen::VectorXd left = g(mesh_.x_left);
    const Eigen::VectorXd right = g(mesh_.x_right);
    for (int k = 0; k < nc_; ++k) {
      u[index(0, k)] = left[k];
      u[index(n_scalar_ - 1, k)] = right[k];
    }
  }
  return u;
}

Eigen::VectorXd DiscreteSystem::evaluate(const Eigen::VectorXd& u, int cell, double xi) const {
  const Eigen::VectorXd phi = ref_.eval_basis(xi);
  Eigen::VectorXd v(nc_);
  Eigen::VectorXd uc;
  for (int k = 0; k < nc_; ++k) {
    gather(u, cell, k, uc);
    v[k] = phi.dot(uc);
  }
  return v;
}

double DiscreteSystem::l2_error(const Eigen::VectorXd& u, const std::function<double(double)>& g,
                                int comp, bool fine) const {
  const double dx = mesh_.dx();
  const QuadratureRule rule = fine ? gauss_legendre(p_ + 3) : ref_.quadrature();
  std::vector<Eigen::VectorXd> phi;
  for (double x : rule.points) phi.push_back(ref_.eval_basis(x));
  double sum = 0.0;
  Eigen::VectorXd uc;
  for (int c = 0; c < mesh_.n_cells; ++c) {
    gather(u, c, comp, uc);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double e = phi[q].dot(uc) - g(mesh_.x_left + (c + rule.points[q]) * dx);
      sum += rule.weights[q] * dx * e * e;
    }
  }
  return std::sqrt(sum);
}

std::unique_ptr<DiscreteSystem> assemble_system(const Mesh1D& mesh, const ReferenceElement& ref,
                                                const StabilizationSpec& stab, const Flux& flux,
                                                SystemOptions options) {
  return std::make_unique<DiscreteSystem>(mesh, ref, stab, flux, std::move(options));
}

}  // namespace stabcg
