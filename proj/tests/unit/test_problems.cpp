#include <doctest.h>

#include <cmath>

#include "stabcg/problems.hpp"
#include "stabcg/solver.hpp"

using namespace stabcg;

TEST_CASE("burgers exact solution") {
  for (double t : {0.0, 0.05, 0.125}) CHECK(std::abs(exact_burgers(1.0, t)) < 1e-14);
  for (double x : {0.0, 0.7, 1.3}) CHECK(exact_burgers(x, 0.0) == burgers_u0(x));
  // u_t + u u_x = 0 by central differences
  const double h = 1e-5;
  double worst = 0.0;
  for (double x = 0.05; x < 2.0; x += 0.1)
    for (double t : {0.02, 0.07, 0.12}) {
      const double u = exact_burgers(x, t);
      const double ut = (exact_burgers(x, t + h) - exact_burgers(x, t - h)) / (2 * h);
      const double ux = (exact_burgers(x + h, t) - exact_burgers(x - h, t)) / (2 * h);
      worst = std::max(worst, std::abs(ut + u * ux));
    }
  CHECK(worst < 1e-6);
}

TEST_CASE("solitary wave data") {
  const ShallowWaterParams prm;
  CHECK(prm.kappa() == doctest::Approx(0.63960).epsilon(1e-5));
  const double c = prm.celerity();
  CHECK(exact_shallow_water(0.0, 0.0)[0] == doctest::Approx(2.2));
  CHECK(exact_shallow_water(3.0 * c, 3.0)[0] == doctest::Approx(2.2));
  CHECK(exact_shallow_water(150.0, 0.0)[0] == doctest::Approx(1.0));
  CHECK(std::abs(exact_shallow_water(150.0, 0.0)[1]) < 1e-12);
  for (double d : {0.3, 1.1, 2.5})
    CHECK(shallow_water_source(c + d, 1.0) == doctest::Approx(-shallow_water_source(c - d, 1.0)));
}

TEST_CASE("shallow water source balances the exact solution") {
  const ProblemSpec p = make_problem(ProblemKind::ShallowWater);
  const double g = p.sw.g, h = 1e-5;
  auto flux = [g](const Eigen::Vector2d& q) {
    return Eigen::Vector2d(q[1], q[1] * q[1] / q[0] + 0.5 * g * q[0] * q[0]);
  };
  double worst = 0.0;
  for (double x = 0.5; x < 20.0; x += 0.37)
    for (double t : {0.5, 2.0}) {
      const Eigen::Vector2d qt =
          (exact_shallow_water(x, t + h) - exact_shallow_water(x, t - h)) / (2 * h);
      const Eigen::Vector2d fx =
          (flux(exact_shallow_water(x + h, t)) - flux(exact_shallow_water(x - h, t))) / (2 * h);
      const Eigen::VectorXd s = p.source(x, t);
      worst = std::max(worst, (qt + fx - Eigen::Vector2d(s[0], s[1])).cwiseAbs().maxCoeff());
    }
  CHECK(worst < 1e-6);
}

TEST_CASE("level cell counts") {
  const ProblemSpec b = make_problem(ProblemKind::Burgers);
  CHECK(default_levels(b, 1) == std::vector<int>{40, 80, 160, 320});
  CHECK(default_levels(b, 3) == std::vector<int>{13, 27, 53, 107});
}

TEST_CASE("least squares order") {
  const std::vector<double> dx = {0.1, 0.05, 0.025};
  std::vector<double> e;
  for (double h : dx) e.push_back(3.0 * h * h * h);
  CHECK(fit_order(dx, e) == doctest::Approx(3.0));
}

TEST_CASE("short advection run improves with refinement") {
  ProblemSpec p = make_problem(ProblemKind::Advection);
  p.t_final = 0.5;
  SimulationSettings s;
  s.degree = 2;
  s.stab = StabKind::CIP;
  s.delta = 3.46e-3;
  s.cfl = 0.3;
  s.n_cells = 20;
  const SimulationResult coarse = run_simulation(p, s);
  s.n_cells = 40;
  const SimulationResult fine = run_simulation(p, s);
  REQUIRE(coarse.ok);
  REQUIRE(fine.ok);
  CHECK(std::log2(coarse.l2_error / fine.l2_error) > 2.5);
}
