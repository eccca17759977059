#pragma once

#include <Eigen/Dense>

#include "pgc/fields.hpp"

namespace pgc {

// Fully antisymmetric rank-3 array J^{ijk} on an n-dimensional chart.
struct Trivector {
  int dim = 0;
  std::vector<double> c;  // flat, c[(i*dim+j)*dim+k]

  explicit Trivector(int n) : dim(n), c(static_cast<std::size_t>(n) * n * n, 0.0) {}
  double operator()(int i, int j, int k) const {
    return c[(static_cast<std::size_t>(i) * dim + j) * dim + k];
  }
  double& at(int i, int j, int k) {
    return c[(static_cast<std::size_t>(i) * dim + j) * dim + k];
  }
  double max_abs() const {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
  }
  // Largest violation of full antisymmetry under index swaps.
  double antisymmetry_defect() const;
};

// Jacobiator J^{ijk} = sum_l ( pi^{il} d_l pi^{jk} + pi^{jl} d_l pi^{ki}
//                            + pi^{kl} d_l pi^{ij} ); identically zero
// exactly when the bivector satisfies the Jacobi identity at p.
Trivector jacobiator(const BivectorField& pi, const Point& p);

double max_jacobiator_norm(const BivectorField& pi, std::span<const Point> probes);

// (phi_* pi)^{ab} = J^a_i J^b_j pi^{ij} evaluated at p, J the Jacobian of phi.
Eigen::MatrixXd pushforward_bivector(const SmoothMap& phi, const BivectorField& pi,
                                     const Point& p);

// Pfaffian with the (1,2)(3,4) ordering convention:
// Pf = m12 m34 - m13 m24 + m14 m23. Input must be antisymmetric to 1e-12.
double pfaffian4(const Eigen::Matrix4d& m);

// General even-dimensional Pfaffian by cofactor expansion along the first row.
double pfaffian(const Eigen::MatrixXd& m);

// v = pi^sharp(theta), the musical morphism with pi^sharp(theta) = pi(theta, .).
Eigen::VectorXd sharp(const BivectorField& pi, const Eigen::VectorXd& theta, const Point& p);

// Finite-difference cross checks (tests only; the fields themselves carry
// exact derivatives).
Eigen::VectorXd fd_gradient(const ScalarField& f, const Point& p, double h = 1e-5);
Eigen::MatrixXd fd_hessian(const ScalarField& f, const Point& p, double h = 1e-4);

}  // namespace pgc
