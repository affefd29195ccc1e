#include <doctest.h>

#include <cmath>

#include "stabcg/eigen_small.hpp"
#include "stabcg/fourier.hpp"

using namespace stabcg;

namespace {

bool contains(const std::vector<cplx>& v, cplx z, double tol = 1e-12) {
  for (const cplx& w : v)
    if (std::abs(w - z) < tol) return true;
  return false;
}

}  // namespace

TEST_CASE("small eigenvalue solver") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = cplx(0.0, 3.0);
  auto ev = small_complex_eigenvalues(a);
  CHECK(contains(ev, 2.0));
  CHECK(contains(ev, cplx(0.0, 3.0)));

  // companion matrix of z^3 - 1
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(3, 3);
  c(1, 0) = 1.0;
  c(2, 1) = 1.0;
  c(0, 2) = 1.0;
  ev = small_complex_eigenvalues(c);
  for (int k = 0; k < 3; ++k) CHECK(contains(ev, std::polar(1.0, 2.0 * M_PI * k / 3.0)));

  Eigen::MatrixXcd r(3, 3);
  r << cplx(1, 2), 0.5, cplx(0, -1), 3.0, cplx(-1, 1), 2.0, 0.25, cplx(4, 0), cplx(0.5, -0.5);
  ev = small_complex_eigenvalues(r);
  cplx prod = 1.0;
  for (const cplx& z : ev) prod *= z;
  CHECK(std::abs(prod - r.determinant()) < 1e-10);
}

TEST_CASE("mode extraction") {
  const double dt = 0.2, k = 1.0, speed = 1.0;
  ModeAnalysis m = extract_modes({cplx(1.0, 0.0)}, 0.3, k, dt, speed);
  CHECK(std::abs(m.modes[0].omega_over_k) < 1e-15);
  CHECK(std::abs(m.modes[0].epsilon) < 1e-15);
  m = extract_modes({std::polar(0.5, -M_PI / 4.0)}, 0.3, 1.0, 1.0, speed);
  CHECK(m.modes[0].omega_over_k == doctest::Approx(M_PI / 4.0));
  CHECK(m.modes[0].epsilon == doctest::Approx(std::log(0.5)));
}

TEST_CASE("zero CFL gives the identity") {
  const ReferenceElement ref(ElementFamily::Bernstein, 3);
  const auto g = amplification_matrix(ref, {StabKind::LPS, 0.1}, default_scheme(SchemeKind::RK, 3),
                                      0.7, 0.0, 3.0);
  CHECK((g.G - Eigen::MatrixXcd::Identity(g.G.rows(), g.G.cols())).norm() < 1e-14);
}

TEST_CASE("long waves have an eigenvalue near one") {
  const ReferenceElement ref(ElementFamily::Cubature, 2);
  const auto g = amplification_matrix(ref, {StabKind::CIP, 0.01},
                                      default_scheme(SchemeKind::SSPRK, 2), 1e-6, 0.3, 2.0);
  CHECK(contains(small_complex_eigenvalues(g.G), 1.0, 1e-5));
}

TEST_CASE("P1 semi-discrete closed form") {
  CHECK(p1_omega_over_k(M_PI / 2.0, 1.0) == doctest::Approx(3.0 / M_PI));
  const ReferenceElement ref(ElementFamily::Basic, 1);
  const SymbolPair s = assemble_symbol(ref, {StabKind::None, 0.0}, M_PI / 2.0, 1.0);
  const ModeAnalysis m = semidiscrete_modes(s, M_PI / 2.0);
  CHECK(m.modes[m.principal].omega_over_k == doctest::Approx(3.0 / M_PI));
}

TEST_CASE("amplification is conjugate symmetric in theta") {
  const ReferenceElement ref(ElementFamily::Basic, 2);
  const TimeScheme rk = default_scheme(SchemeKind::RK, 2);
  const auto gp = amplification_matrix(ref, {StabKind::SUPG, 0.1}, rk, 1.1, 0.4, 2.0);
  const auto gm = amplification_matrix(ref, {StabKind::SUPG, 0.1}, rk, -1.1, 0.4, 2.0);
  CHECK((gp.G - gm.G.conjugate()).norm() < 1e-13);
}
