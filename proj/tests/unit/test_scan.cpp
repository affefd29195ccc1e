#include <doctest.h>

#include <cmath>

#include "stabcg/scan.hpp"

using namespace stabcg;

namespace {

Curve flat(double omega_scale, double eps) {
  Curve c;
  for (int i = 1; i <= 400; ++i) {
    const double k = M_PI * i / 400.0;
    c.k.push_back(k);
    c.omega.push_back(omega_scale * k);
    c.epsilon.push_back(eps);
  }
  return c;
}

ScanGrid small_grid() {
  ScanGrid g;
  g.cfl = geometric_grid(0.05, 2.0, std::pow(2.0, 1.0 / 4.0));
  g.delta = geometric_grid(1e-3, 1.0, 2.0);
  g.theta_samples = 40;
  return g;
}

}  // namespace

TEST_CASE("grid anchored at one") {
  const auto g = geometric_grid(0.01, 4.0, std::pow(2.0, 1.0 / 24.0));
  CHECK(g.front() >= 0.01);
  CHECK(g.back() <= 4.0 * (1.0 + 1e-12));
  bool has_one = false;
  for (double v : g) has_one |= std::abs(v - 1.0) < 1e-14;
  CHECK(has_one);
  CHECK(g.size() == 24 * 2 + 1 + 159);
}

TEST_CASE("error functionals on analytic curves") {
  // the first sample is extended down to k = 0
  const double c = 0.3, len = M_PI;
  // pure damping: only the (e^eps - 1)^2 term remains
  const double e = std::exp(c) - 1.0;
  CHECK(eta_u(flat(1.0, c)) == doctest::Approx(std::sqrt(3.0 / (2.0 * M_PI) * e * e * len)));
  CHECK(eta_w(flat(1.0, 0.0)) == doctest::Approx(0.0));
  // doubled dispersion: (omega - k)^2 = k^2
  const double k2 = M_PI * M_PI * M_PI / 3.0;
  CHECK(eta_u(flat(2.0, 0.0)) == doctest::Approx(std::sqrt(3.0 / (2.0 * M_PI) * k2)).epsilon(1e-4));
  CHECK(eta_w(flat(2.0, 0.0)) == doctest::Approx(std::sqrt(len)));
}

TEST_CASE("scan is deterministic and strategies are ordered") {
  Combination combo{ElementFamily::Cubature, 2, StabKind::CIP, SchemeKind::SSPRK};
  ScanResult a = scan(combo, small_grid());
  ScanResult b = scan(combo, small_grid());
  CHECK(a.stable == b.stable);
  optimize_all(a);
  REQUIRE(a.optima.size() == 3);
  const Optimum& maxc = a.optima[0];
  const Optimum& etu = a.optima[1];
  CHECK(maxc.strategy == Strategy::MaxCFL);
  CHECK(maxc.cfl >= etu.cfl);
  for (std::size_t i = 0; i < a.stable.size(); ++i)
    if (a.stable[i]) CHECK(etu.objective <= a.eta_u[i] * 1.3 + 1e-12);
}

TEST_CASE("unstable everywhere yields no optimum") {
  Combination combo{ElementFamily::Basic, 3, StabKind::None, SchemeKind::RK};
  ScanGrid g;
  g.cfl = {3.0, 3.5};
  g.delta = {1e-3};
  g.theta_samples = 20;
  ScanResult r = scan(combo, g);
  CHECK_FALSE(r.any_stable());
  optimize_all(r);
  CHECK(r.optima.empty());
}
