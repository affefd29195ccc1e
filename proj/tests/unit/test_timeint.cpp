#include <doctest.h>

#include <cmath>

#include "stabcg/stabilization.hpp"
#include "stabcg/timeint.hpp"

using namespace stabcg;

namespace {

// u' = lambda u with identity mass
class Decay : public OdeSystem {
 public:
  explicit Decay(double lambda) : lambda_(lambda), ones_(Eigen::VectorXd::Ones(1)) {}
  Eigen::Index size() const override { return 1; }
  Eigen::VectorXd residual(const Eigen::VectorXd& u, double) const override {
    return lambda_ * u;
  }
  Eigen::VectorXd solve_mass(const Eigen::VectorXd& r) const override { return r; }
  Eigen::VectorXd apply_mass(const Eigen::VectorXd& u) const override { return u; }
  const Eigen::VectorXd& lumped_mass() const override { return ones_; }

 private:
  double lambda_;
  Eigen::VectorXd ones_;
};

double error_at_one(const TimeScheme& s, int steps) {
  Decay sys(-1.0);
  Eigen::VectorXd u = Eigen::VectorXd::Ones(1);
  const double dt = 1.0 / steps;
  for (int n = 0; n < steps; ++n) u = step(sys, u, n * dt, dt, s);
  return std::abs(u[0] - std::exp(-1.0));
}

}  // namespace

TEST_CASE("RK4 reproduces the Taylor polynomial") {
  const auto nu = expand_rk_coefficients(butcher_tableau(4));
  REQUIRE(nu.size() == 4);
  const double taylor[] = {1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(nu[i] - taylor[i]) < 1e-14);
}

TEST_CASE("RK2 tableau") {
  const ButcherTableau t = butcher_tableau(2);
  REQUIRE(t.alpha.size() == 1);
  CHECK(t.alpha[0][0] == 1.0);
  CHECK(t.beta[0] == 0.5);
  CHECK(t.beta[1] == 0.5);
}

TEST_CASE("SSPRK tableaux") {
  const ShuOsherTableau s32 = shu_osher_tableau(2);
  CHECK(s32.gamma[2][0] == doctest::Approx(1.0 / 3.0));
  CHECK(s32.gamma[2][1] == 0.0);
  CHECK(s32.gamma[2][2] == doctest::Approx(2.0 / 3.0));
  CHECK(s32.mu[2][2] == doctest::Approx(1.0 / 3.0));
  CHECK(shu_osher_tableau(4).mu[0][0] == 0.391752226571890);
  for (int order = 2; order <= 4; ++order)
    for (const auto& row : shu_osher_tableau(order).gamma) {
      double sum = 0.0;
      for (double g : row) sum += g;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("SSPRK(3,2) stability polynomial") {
  const auto nu = expand_ssprk_coefficients(shu_osher_tableau(2));
  REQUIRE(nu.size() == 3);
  CHECK(nu[0] == doctest::Approx(1.0));
  CHECK(nu[1] == doctest::Approx(0.5));
  CHECK(nu[2] == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("DeC weights") {
  for (int order = 2; order <= 4; ++order) {
    const DeCConfig c = dec_config(order);
    REQUIRE(c.rho.size() == static_cast<std::size_t>(c.M));
    for (int m = 0; m < c.M; ++m) {
      double sum = 0.0;
      for (double r : c.rho[m]) sum += r;
      CHECK(sum == doctest::Approx(c.beta[m]).epsilon(1e-14));
    }
  }
}

TEST_CASE("DeC never factorizes a diagonal mass") {
  DiscreteSystem sys({0.0, 1.0, 8, Boundary::Periodic}, ReferenceElement(ElementFamily::Cubature, 3),
                     {StabKind::CIP, 0.01}, LinearFlux{1.0});
  Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(sys.size(), 0.0, 1.0);
  for (int n = 0; n < 5; ++n) u = dec_step(sys, u, 0.0, 0.01, dec_config(4));
  CHECK(sys.mass_factorizations() == 0);
}

TEST_CASE("observed orders on exponential decay") {
  for (auto kind : {SchemeKind::RK, SchemeKind::SSPRK, SchemeKind::DeC})
    for (int degree = 1; degree <= 3; ++degree) {
      const TimeScheme s = default_scheme(kind, degree);
      const double order = std::log2(error_at_one(s, 10) / error_at_one(s, 20));
      INFO(s.name());
      CHECK(std::abs(order - s.order) < 0.2);
    }
}
