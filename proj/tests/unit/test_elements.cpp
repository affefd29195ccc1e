#include <doctest.h>

#include "stabcg/elements.hpp"
#include "stabcg/errors.hpp"

using namespace stabcg;

TEST_CASE("bernstein quadratic values and derivatives") {
  ReferenceElement e(ElementFamily::Bernstein, 2);
  const auto v = e.eval_basis(0.5);
  CHECK(v[0] == doctest::Approx(0.25));
  CHECK(v[1] == doctest::Approx(0.5));
  CHECK(v[2] == doctest::Approx(0.25));
  const auto d = e.eval_basis_deriv(0.0);
  CHECK(d[0] == doctest::Approx(-2.0));
  CHECK(d[1] == doctest::Approx(2.0));
  CHECK(d[2] == doctest::Approx(0.0));
}

TEST_CASE("linear lagrange values and mass") {
  ReferenceElement e(ElementFamily::Basic, 1);
  const auto v = e.eval_basis(0.25);
  CHECK(v[0] == doctest::Approx(0.75));
  CHECK(v[1] == doctest::Approx(0.25));
  const LocalMatrices lm = local_matrices(e);
  CHECK(lm.mass(0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(lm.mass(0, 1) == doctest::Approx(1.0 / 6.0));
  CHECK(lm.mass(1, 1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("lobatto weights for the quadratic cubature element") {
  ReferenceElement e(ElementFamily::Cubature, 2);
  const auto& w = e.quadrature().weights;
  REQUIRE(w.size() == 3);
  CHECK(w[0] == doctest::Approx(1.0 / 6.0));
  CHECK(w[1] == doctest::Approx(2.0 / 3.0));
  CHECK(w[2] == doctest::Approx(1.0 / 6.0));
  const LocalMatrices lm = local_matrices(e);
  CHECK(lm.mass(0, 1) == doctest::Approx(0.0));
  CHECK(lm.mass(1, 1) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("partition of unity and derivative sum") {
  for (auto f : {ElementFamily::Basic, ElementFamily::Cubature, ElementFamily::Bernstein})
    for (int p = 1; p <= 3; ++p) {
      ReferenceElement e(f, p);
      for (double x : {0.0, 0.13, 0.5, 0.91, 1.0}) {
        CHECK(e.eval_basis(x).sum() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::abs(e.eval_basis_deriv(x).sum()) < 1e-12);
      }
    }
}

TEST_CASE("gauss legendre integrates the top degree exactly") {
  for (int n = 1; n <= 5; ++n) {
    const QuadratureRule q = gauss_legendre(n);
    double s = 0.0;
    for (std::size_t i = 0; i < q.points.size(); ++i)
      s += q.weights[i] * std::pow(q.points[i], 2 * n - 1);
    CHECK(s == doctest::Approx(1.0 / (2 * n)));
  }
}

TEST_CASE("unsupported degree") {
  CHECK_THROWS_AS(ReferenceElement(ElementFamily::Basic, 4), Error);
  try {
    ReferenceElement(ElementFamily::Cubature, 0);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedDegree);
  }
}
