#pragma once

// Reference elements on the unit cell [0,1]: equispaced Lagrange ("basic"),
// Gauss-Lobatto Lagrange with collocated quadrature ("cubature") and
// Bernstein polynomials. Physical scaling by the cell size is applied by
// the assembly code, never here.

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace stabcg {

enum class ElementFamily { Basic, Cubature, Bernstein };

std::string_view to_string(ElementFamily family);
ElementFamily parse_family(std::string_view name);

struct QuadratureRule {
  std::vector<double> points;   // on [0,1]
  std::vector<double> weights;  // sum to 1
};

/// Gauss-Legendre rule with n points, mapped to [0,1].
QuadratureRule gauss_legendre(int n);

/// Gauss-Lobatto rule with n >= 2 points (endpoints included), mapped to [0,1].
/// Interior nodes are the roots of P'_{n-1}, found by Newton iteration.
QuadratureRule gauss_lobatto(int n);

class ReferenceElement {
 public:
  ReferenceElement(ElementFamily family, int degree);

  ElementFamily family() const { return family_; }
  int degree() const { return degree_; }
  int n_basis() const { return degree_ + 1; }

  /// Geometric dof locations; Greville points for Bernstein.
  const std::vector<double>& nodes() const { return nodes_; }
  const QuadratureRule& quadrature() const { return quad_; }

  /// True when the basis interpolates at its nodes.
  bool is_nodal() const { return family_ != ElementFamily::Bernstein; }

  Eigen::VectorXd eval_basis(double x) const;
  Eigen::VectorXd eval_basis_deriv(double x) const;

 private:
  ElementFamily family_;
  int degree_;
  std::vector<double> nodes_;
  QuadratureRule quad_;
};

/// Builds the reference element; throws Error(UnsupportedDegree) outside [1,3].
ReferenceElement build_reference_element(ElementFamily family, int degree);

struct LocalMatrices {
  Eigen::MatrixXd mass;       // int phi_i phi_j
  Eigen::MatrixXd deriv;      // int phi_i phi_j'
  Eigen::MatrixXd grad_grad;  // int phi_i' phi_j'
  Eigen::VectorXd lumped;     // row sums of mass

  // Tabulated basis at the quadrature points: (n_quad x n_basis).
  Eigen::MatrixXd basis_at_quad;
  Eigen::MatrixXd deriv_at_quad;
  Eigen::VectorXd quad_weights;
  Eigen::VectorXd quad_points;

  // Basis derivatives at x = 0 and x = 1, used for gradient jumps.
  Eigen::VectorXd deriv_left;
  Eigen::VectorXd deriv_right;
};

/// All integrals use the family's paired quadrature on [0,1].
LocalMatrices local_matrices(const ReferenceElement& ref);

}  // namespace stabcg
