#include <doctest.h>

#include <cmath>
#include <random>

#include "stabcg/errors.hpp"
#include "stabcg/stabilization.hpp"

using namespace stabcg;

namespace {

Mesh1D periodic(int n) { return {0.0, 1.0, n, Boundary::Periodic}; }

Eigen::VectorXd random_state(Eigen::Index n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u[i] = dist(gen);
  return u;
}

}  // namespace

TEST_CASE("tau scaling") {
  CHECK(tau_cell({StabKind::SUPG, 0.5}, 0.05, 1.0) == doctest::Approx(0.025));
  CHECK(tau_cell({StabKind::LPS, 0.5}, 0.05, 2.0) == doctest::Approx(0.05));
  CHECK(tau_cell({StabKind::CIP, 0.4}, 0.05, 1.0) == doctest::Approx(1e-3));
  bool zero = false;
  tau_cell({StabKind::SUPG, 0.5}, 0.05, 0.0, &zero);
  CHECK(zero);
}

TEST_CASE("constant states have zero residual") {
  for (auto f : {ElementFamily::Basic, ElementFamily::Cubature, ElementFamily::Bernstein})
    for (auto s : {StabKind::None, StabKind::SUPG, StabKind::CIP, StabKind::LPS})
      for (int p = 1; p <= 3; ++p) {
        DiscreteSystem sys(periodic(6), ReferenceElement(f, p), {s, 0.3}, LinearFlux{1.0});
        const Eigen::VectorXd u = Eigen::VectorXd::Constant(sys.size(), 2.5);
        CHECK(sys.residual(u, 0.0).cwiseAbs().maxCoeff() < 1e-13);
      }
}

TEST_CASE("unstabilized convection is skew") {
  for (auto f : {ElementFamily::Basic, ElementFamily::Cubature, ElementFamily::Bernstein})
    for (int p = 1; p <= 3; ++p) {
      DiscreteSystem sys(periodic(7), ReferenceElement(f, p), {StabKind::None, 0.0},
                         LinearFlux{1.3});
      const Eigen::VectorXd u = random_state(sys.size(), 11u + p);
      CHECK(std::abs(sys.semi_discrete_energy_rate(u)) < 1e-12);
    }
}

TEST_CASE("CIP energy rate equals minus the weighted gradient jumps") {
  const double a = 1.0, delta = 0.2;
  for (int p = 1; p <= 3; ++p) {
    const Mesh1D mesh = periodic(5);
    const ReferenceElement ref(ElementFamily::Basic, p);
    DiscreteSystem sys(mesh, ref, {StabKind::CIP, delta}, LinearFlux{a});
    const Eigen::VectorXd u = random_state(sys.size(), 3u * p);
    const double dx = mesh.dx();
    const Eigen::VectorXd dl = ref.eval_basis_deriv(0.0) / dx;
    const Eigen::VectorXd dr = ref.eval_basis_deriv(1.0) / dx;
    double expected = 0.0;
    for (int c = 0; c < mesh.n_cells; ++c) {
      const int cl = (c + mesh.n_cells - 1) % mesh.n_cells;
      double jump = 0.0;
      for (int j = 0; j <= p; ++j)
        jump += dl[j] * u[mesh.dof(c, j, p)] - dr[j] * u[mesh.dof(cl, j, p)];
      expected -= delta * dx * dx * a * jump * jump;
    }
    CHECK(expected < 0.0);
    CHECK(sys.semi_discrete_energy_rate(u) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("two-cell linear CIP system by hand") {
  // Periodic, two P1 cells of width 1/2, dofs at x = 0 and 1/2.
  const double delta = 0.5, dx = 0.5;
  DiscreteSystem sys(periodic(2), ReferenceElement(ElementFamily::Basic, 1),
                     {StabKind::CIP, delta}, LinearFlux{1.0});
  const Eigen::Vector2d u(1.0, -2.0);
  // Convection cancels. Both faces give [u'][phi_0'] = 4 (u0 - u1) / dx^2.
  const double tau = delta * dx * dx;
  const double r0 = -2.0 * tau * 4.0 * (u[0] - u[1]) / (dx * dx);
  const Eigen::VectorXd r = sys.residual(u, 0.0);
  CHECK(r[0] == doctest::Approx(r0));
  CHECK(r[1] == doctest::Approx(-r0));
  CHECK(r0 == doctest::Approx(-12.0));
}

TEST_CASE("LPS projection reproduces a constant gradient") {
  for (auto f : {ElementFamily::Basic, ElementFamily::Cubature, ElementFamily::Bernstein})
    for (int p = 1; p <= 3; ++p) {
      SystemOptions opt;
      opt.boundary_data = [](double x, double) { return Eigen::VectorXd::Constant(1, x); };
      DiscreteSystem sys({0.0, 1.0, 4, Boundary::Dirichlet}, ReferenceElement(f, p),
                         {StabKind::LPS, 0.1}, LinearFlux{1.0}, opt);
      const Eigen::VectorXd u =
          sys.interpolate([](double x) { return Eigen::VectorXd::Constant(1, 3.0 * x - 1.0); });
      const Eigen::VectorXd w = sys.lps_project_gradient(u);
      CHECK((w.array() - 3.0).abs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("stabilized residual is linear for a linear flux") {
  for (auto s : {StabKind::SUPG, StabKind::CIP, StabKind::LPS}) {
    DiscreteSystem sys(periodic(6), ReferenceElement(ElementFamily::Bernstein, 2), {s, 0.3},
                       LinearFlux{-0.7});
    const Eigen::VectorXd u = random_state(sys.size(), 1), v = random_state(sys.size(), 2);
    const Eigen::VectorXd lhs = sys.residual(2.0 * u - 0.5 * v, 0.0);
    const Eigen::VectorXd rhs = 2.0 * sys.residual(u, 0.0) - 0.5 * sys.residual(v, 0.0);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("energy rate rejects SUPG") {
  DiscreteSystem sys(periodic(4), ReferenceElement(ElementFamily::Basic, 1),
                     {StabKind::SUPG, 0.1}, LinearFlux{1.0});
  const Eigen::VectorXd u = random_state(sys.size(), 5);
  try {
    sys.semi_discrete_energy_rate(u);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unsupported);
  }
}
