#include "stabcg/eigen_small.hpp"

#include <cmath>

#include "stabcg/errors.hpp"

namespace stabcg {

namespace {

std::vector<cplx> solve(const Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  if (n == 1) return {a(0, 0)};
  if (n == 2) {
    const cplx tr = a(0, 0) + a(1, 1);
    const cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    // Pick the root without cancellation, recover the other from the product.
    const cplx q = std::abs(tr + disc) >= std::abs(tr - disc) ? 0.5 * (tr + disc) : 0.5 * (tr - disc);
    if (q == cplx(0.0)) return {cplx(0.0), cplx(0.0)};
    return {q, det / q};
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::EigenSolveFailure, "complex Schur iteration did not converge");
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

}  // namespace

std::vector<cplx> small_complex_eigenvalues(const Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  if (n < 1 || n > 4 || a.cols() != n)
    throw Error(ErrorKind::EigenSolveFailure, "matrix must be square with size 1..4");
  if (!a.allFinite()) throw Error(ErrorKind::EigenSolveFailure, "non-finite matrix entries");
  std::vector<cplx> lambda = solve(a);
  const double scale = std::pow(std::max(a.norm(), 1.0), static_cast<double>(n));
  for (const cplx& l : lambda) {
    Eigen::MatrixXcd shifted = a - l * Eigen::MatrixXcd::Identity(n, n);
    const double res = std::abs(shifted.determinant());
    if (!(res <= 1e-9 * scale))
      throw Error(ErrorKind::EigenSolveFailure, "eigenvalue residual check failed");
  }
  return lambda;
}

}  // namespace stabcg
