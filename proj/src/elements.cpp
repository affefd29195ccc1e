#include "stabcg/elements.hpp"

#include <cmath>

#include "stabcg/errors.hpp"

namespace stabcg {

namespace {

constexpr double kNewtonTol = 1e-14;

// Legendre P_n(x) and P_n'(x) on [-1,1] by the three-term recurrence.
void legendre(int n, double x, double& value, double& deriv) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    value = 1.0;
    deriv = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  value = p1;
  // Valid away from x = +-1, which is all Newton ever sees here.
  deriv = n * (x * p1 - p0) / (x * x - 1.0);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<double> lagrange_values(const std::vector<double>& nodes, double x) {
  const std::size_t n = nodes.size();
  std::vector<double> v(n, 1.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m)
      if (m != j) v[j] *= (x - nodes[m]) / (nodes[j] - nodes[m]);
  return v;
}

std::vector<double> lagrange_derivs(const std::vector<double>& nodes, double x) {
  const std::size_t n = nodes.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      if (l == j) continue;
      double term = 1.0 / (nodes[j] - nodes[l]);
      for (std::size_t m = 0; m < n; ++m)
        if (m != j && m != l) term *= (x - nodes[m]) / (nodes[j] - nodes[m]);
      d[j] += term;
    }
  }
  return d;
}

}  // namespace

std::string_view to_string(ElementFamily family) {
  switch (family) {
    case ElementFamily::Basic: return "basic";
    case ElementFamily::Cubature: return "cubature";
    case ElementFamily::Bernstein: return "bernstein";
  }
  return "?";
}

ElementFamily parse_family(std::string_view name) {
  if (name == "basic") return ElementFamily::Basic;
  if (name == "cubature") return ElementFamily::Cubature;
  if (name == "bernstein") return ElementFamily::Bernstein;
  throw Error(ErrorKind::Config, "unknown element family '" + std::string(name) + "'");
}

QuadratureRule gauss_legendre(int n) {
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double value = 0.0;
    double deriv = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, value, deriv);
      const double dx = value / deriv;
      x -= dx;
      if (std::abs(dx) < kNewtonTol) break;
    }
    legendre(n, x, value, deriv);
    rule.points[i] = 0.5 * (x + 1.0);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * deriv * deriv);  // 2/(..) halved for [0,1]
  }
  return rule;
}

QuadratureRule gauss_lobatto(int n) {
  if (n < 2) throw Error(ErrorKind::UnsupportedDegree, "Gauss-Lobatto needs at least 2 points");
  const int order = n - 1;
  std::vector<double> x(n);
  x.front() = -1.0;
  x.back() = 1.0;
  // Interior nodes: roots of P'_order. Newton on q(x) = (1-x^2) P'_order(x),
  // whose derivative is -order(order+1) P_order(x).
  for (int i = 1; i < n - 1; ++i) {
    double xi = -std::cos(M_PI * i / order);
    for (int it = 0; it < 100; ++it) {
      double value = 0.0;
      double deriv = 0.0;
      legendre(order, xi, value, deriv);
      const double q = (1.0 - xi * xi) * deriv;
      const double dq = -order * (order + 1.0) * value;
      const double step = q / dq;
      xi -= step;
      if (std::abs(step) < kNewtonTol) break;
    }
    x[i] = xi;
  }
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double value = 0.0;
    double deriv = 0.0;
    if (std::abs(x[i]) == 1.0) {
      value = (x[i] > 0 || order % 2 == 0) ? 1.0 : -1.0;
    } else {
      legendre(order, x[i], value, deriv);
    }
    rule.points[i] = 0.5 * (x[i] + 1.0);
    rule.weights[i] = 1.0 / (order * (order + 1.0) * value * value);
  }
  return rule;
}

ReferenceElement::ReferenceElement(ElementFamily family, int degree)
    : family_(family), degree_(degree) {
  if (degree < 1 || degree > 3)
    throw Error(ErrorKind::UnsupportedDegree,
                "degree " + std::to_string(degree) + " outside [1,3]");
  switch (family) {
    case ElementFamily::Basic:
    case ElementFamily::Bernstein:
      nodes_.resize(degree + 1);
      for (int j = 0; j <= degree; ++j) nodes_[j] = static_cast<double>(j) / degree;
      quad_ = gauss_legendre(degree + 1);
      break;
    case ElementFamily::Cubature:
      quad_ = gauss_lobatto(degree + 1);
      nodes_ = quad_.points;
      break;
  }
}

Eigen::VectorXd ReferenceElement::eval_basis(double x) const {
  Eigen::VectorXd phi(n_basis());
  if (family_ == ElementFamily::Bernstein) {
    // B_j(x) = C(p,j) x^j (1-x)^(p-j): B_j is attached to the Greville point j/p.
    for (int j = 0; j <= degree_; ++j)
      phi[j] = binomial(degree_, j) * std::pow(x, j) * std::pow(1.0 - x, degree_ - j);
    return phi;
  }
  const auto v = lagrange_values(nodes_, x);
  for (int j = 0; j <= degree_; ++j) phi[j] = v[j];
  return phi;
}

Eigen::VectorXd ReferenceElement::eval_basis_deriv(double x) const {
  Eigen::VectorXd dphi(n_basis());
  if (family_ == ElementFamily::Bernstein) {
    const int p = degree_;
    for (int j = 0; j <= p; ++j) {
      double d = 0.0;
      if (j > 0) d += j * std::pow(x, j - 1) * std::pow(1.0 - x, p - j);
      if (j < p) d -= (p - j) * std::pow(x, j) * std::pow(1.0 - x, p - j - 1);
      dphi[j] = binomial(p, j) * d;
    }
    return dphi;
  }
  const auto d = lagrange_derivs(nodes_, x);
  for (int j = 0; j <= degree_; ++j) dphi[j] = d[j];
  return dphi;
}

ReferenceElement build_reference_element(ElementFamily family, int degree) {
  return ReferenceElement(family, degree);
}

LocalMatrices local_matrices(const ReferenceElement& ref) {
  const auto& q = ref.quadrature();
  const int nq = static_cast<int>(q.points.size());
  const int nb = ref.n_basis();

  LocalMatrices lm;
  lm.basis_at_quad.resize(nq, nb);
  lm.deriv_at_quad.resize(nq, nb);
  lm.quad_weights.resize(nq);
  lm.quad_points.resize(nq);
  for (int k = 0; k < nq; ++k) {
    lm.basis_at_quad.row(k) = ref.eval_basis(q.points[k]).transpose();
    lm.deriv_at_quad.row(k) = ref.eval_basis_deriv(q.points[k]).transpose();
    lm.quad_weights[k] = q.weights[k];
    lm.quad_points[k] = q.points[k];
  }
  const auto W = lm.quad_weights.asDiagonal();
  lm.mass = lm.basis_at_quad.transpose() * W * lm.basis_at_quad;
  lm.deriv = lm.basis_at_quad.transpose() * W * lm.deriv_at_quad;
  lm.grad_grad = lm.deriv_at_quad.transpose() * W * lm.deriv_at_quad;
  lm.lumped = lm.mass.rowwise().sum();
  lm.deriv_left = ref.eval_basis_deriv(0.0);
  lm.deriv_right = ref.eval_basis_deriv(1.0);
  return lm;
}

}  // namespace stabcg
