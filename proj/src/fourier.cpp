#include "stabcg/fourier.hpp"

#include <cmath>
#include <limits>

#include "stabcg/errors.hpp"

namespace stabcg {

namespace {

// Folds a real local matrix onto the p reduced unknowns. Slot s of the local
// matrix is reduced dof red[s] living in cell off[s] relative to cell 0.
Eigen::MatrixXcd fold(const Eigen::MatrixXd& a, const std::vector<int>& red,
                      const std::vector<int>& off, int p, double theta) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(p, p);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0.0)
        s(red[i], red[j]) += a(i, j) * std::polar(1.0, (off[j] - off[i]) * theta);
  return s;
}

}  // namespace

Eigen::MatrixXcd SymbolPair::generator() const {
  return -speed * mass.partialPivLu().solve(conv);
}

double time_step_from_cfl(double cfl, double dx, double speed) {
  return cfl * dx / std::abs(speed);
}

SymbolPair assemble_symbol(const ReferenceElement& ref, const StabilizationSpec& stab,
                           double theta, double dx, double speed) {
  if (speed == 0.0) throw Error(ErrorKind::Config, "symbol requires a nonzero speed");
  const int p = ref.degree();
  const LocalMatrices lm = local_matrices(ref);

  std::vector<int> red(p + 1), off(p + 1);
  for (int k = 0; k <= p; ++k) {
    red[k] = k % p;
    off[k] = k / p;
  }
  std::vector<int> red2(2 * p + 2), off2(2 * p + 2);
  for (int k = 0; k <= p; ++k) {
    red2[k] = k % p;
    off2[k] = -1 + k / p;
    red2[p + 1 + k] = k % p;
    off2[p + 1 + k] = k / p;
  }

  const double a = speed;
  const Eigen::MatrixXd deriv_t = lm.deriv.transpose();  // int phi_i' phi_j
  Eigen::MatrixXd mass_loc = dx * lm.mass;
  Eigen::MatrixXd res_loc = a * deriv_t;
  Eigen::MatrixXcd res_extra = Eigen::MatrixXcd::Zero(p, p);

  switch (stab.kind) {
    case StabKind::None: break;
    case StabKind::SUPG: {
      const double tau = tau_cell(stab, dx, a);
      mass_loc += tau * a * deriv_t;
      res_loc -= tau * a * a * lm.grad_grad / dx;
      break;
    }
    case StabKind::LPS: {
      const double tau = tau_cell(stab, dx, a);
      const Eigen::MatrixXcd gg = fold(lm.grad_grad / dx, red, off, p, theta);
      const Eigen::MatrixXcd bt = fold(deriv_t, red, off, p, theta);
      const Eigen::MatrixXcd b = fold(lm.deriv, red, off, p, theta);
      Eigen::MatrixXcd proj;
      if (ref.family() == ElementFamily::Cubature || stab.lps_lumped_projection) {
        const Eigen::MatrixXcd m0 = fold(dx * lm.mass, red, off, p, 0.0);
        proj = m0.real().rowwise().sum().cast<cplx>().asDiagonal();
      } else {
        proj = fold(dx * lm.mass, red, off, p, theta);
      }
      res_extra -= tau * (gg - bt * proj.partialPivLu().solve(b));
      break;
    }
    case StabKind::CIP: {
      const double tau_f = tau_cell(stab, dx, a);
      Eigen::VectorXd j(2 * p + 2);
      j.head(p + 1) = -lm.deriv_right / dx;
      j.tail(p + 1) = lm.deriv_left / dx;
      res_extra -= tau_f * fold(j * j.transpose(), red2, off2, p, theta);
      break;
    }
  }

  SymbolPair s;
  s.theta = theta;
  s.speed = a;
  s.mass = fold(mass_loc, red, off, p, theta);
  const Eigen::MatrixXcd rhs = fold(res_loc, red, off, p, theta) + res_extra;
  s.conv = -rhs / a;
  s.lumped = fold(mass_loc, red, off, p, 0.0).real().rowwise().sum();
  return s;
}

int principal_mode(const std::vector<Mode>& modes, double k, double speed) {
  int best = 0;
  double err = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double e = std::abs(modes[i].omega_over_k * k - speed * k);
    if (e < err) {
      err = e;
      best = static_cast<int>(i);
    }
  }
  return best;
}

ModeAnalysis semidiscrete_modes(const SymbolPair& symbol, double k) {
  const Eigen::MatrixXcd op = symbol.speed * symbol.mass.partialPivLu().solve(symbol.conv);
  ModeAnalysis out;
  out.theta = symbol.theta;
  for (const cplx& l : small_complex_eigenvalues(op))
    out.modes.push_back({l.imag() / k, -l.real(), l});
  out.principal = principal_mode(out.modes, k, symbol.speed);
  return out;
}

Eigen::MatrixXcd amplification_from_symbol(const SymbolPair& symbol, const TimeScheme& scheme,
                                           double dt) {
  const Eigen::Index p = symbol.mass.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(p, p);
  if (scheme.kind != SchemeKind::DeC) {
    const Eigen::MatrixXcd z = dt * symbol.generator();
    Eigen::MatrixXcd g = id;
    Eigen::MatrixXcd pw = id;
    for (double nu : stability_polynomial(scheme)) {
      pw = pw * z;
      g += nu * pw;
    }
    return g;
  }
  // Literal matrix form of the DeC update with D~ = diag(lumped).
  const DeCConfig& c = scheme.dec;
  const Eigen::VectorXcd dinv = symbol.lumped.cwiseInverse().cast<cplx>();
  const Eigen::MatrixXcd rhs = -symbol.speed * symbol.conv;
  const Eigen::MatrixXcd dm = dinv.asDiagonal() * symbol.mass;
  const Eigen::MatrixXcd dr = dt * (dinv.asDiagonal() * rhs);
  std::vector<Eigen::MatrixXcd> cur(c.M + 1, id);
  for (int k = 0; k < c.K; ++k) {
    std::vector<Eigen::MatrixXcd> next(c.M + 1, id);
    for (int m = 1; m <= c.M; ++m) {
      next[m] = cur[m] - dm * (cur[m] - id);
      for (int z = 0; z <= c.M; ++z)
        if (c.rho[m - 1][z] != 0.0) next[m] += c.rho[m - 1][z] * (dr * cur[z]);
    }
    cur = std::move(next);
  }
  return cur[c.M];
}

AmplificationMatrix amplification_matrix(const ReferenceElement& ref,
                                         const StabilizationSpec& stab,
                                         const TimeScheme& scheme, double theta, double cfl,
                                         double dx, double speed) {
  AmplificationMatrix out;
  out.theta = theta;
  out.cfl = cfl;
  out.delta = stab.delta;
  out.dt = time_step_from_cfl(cfl, dx, speed);
  out.G = amplification_from_symbol(assemble_symbol(ref, stab, theta, dx, speed), scheme, out.dt);
  return out;
}

ModeAnalysis extract_modes(const std::vector<cplx>& lambda, double theta, double k, double dt,
                           double speed) {
  ModeAnalysis out;
  out.theta = theta;
  for (const cplx& l : lambda) {
    Mode m;
    m.eigenvalue = l;
    const double mag = std::abs(l);
    if (mag == 0.0) {
      m.omega_over_k = 0.0;
      m.epsilon = -std::numeric_limits<double>::infinity();
    } else {
      m.omega_over_k = std::atan2(-l.imag(), l.real()) / (k * dt);
      m.epsilon = std::log(mag) / dt;
    }
    out.modes.push_back(m);
  }
  out.principal = principal_mode(out.modes, k, speed);
  return out;
}

ModeAnalysis extract_modes(const AmplificationMatrix& g, double k, double speed) {
  return extract_modes(small_complex_eigenvalues(g.G), g.theta, k, g.dt, speed);
}

double p1_omega_over_k(double theta, double speed) {
  return speed * (std::sin(theta) / theta) * 3.0 / (2.0 + std::cos(theta));
}

double p2_omega_over_k(double theta, double speed, int sign) {
  const double s = std::sin(theta);
  const double h = std::sin(0.5 * theta);
  return speed * (4.0 * s + sign * 2.0 * std::sqrt(40.0 * h * h - s * s)) /
         (theta * (std::cos(theta) - 3.0));
}

}  // namespace stabcg
