#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace stabcg {

using cplx = std::complex<double>;

/// Eigenvalues of a complex n x n matrix, 1 <= n <= 4. Closed forms for n <= 2,
/// Eigen's complex Schur solver otherwise. Every eigenvalue is checked against
/// |det(A - lambda I)| <= 1e-9 * max(||A||, 1)^n; failure throws EigenSolveFailure.
std::vector<cplx> small_complex_eigenvalues(const Eigen::MatrixXcd& a);

}  // namespace stabcg
