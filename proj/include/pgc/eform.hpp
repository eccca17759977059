#pragma once

#include "pgc/groupoid.hpp"
#include "pgc/small_linalg.hpp"

namespace pgc {

// Derivative of g along X as a reusable field. The returned field carries
// exact value/gradient/Hessian, obtained by evaluating g one jet order
// higher; orders above hessian are not available. Evaluation at derivative
// orders requires chart coordinate seeds (value/gradient/hessian of the
// field, probe sweeps) and verifies that at runtime.
ScalarField chart_directional_derivative(const VectorField& X, const ScalarField& g);

// Per-component [X,Y] = D_X Y - D_Y X with the same chart-locked contract.
VectorField lie_bracket_field(const VectorField& X, const VectorField& Y);

// c^l_{ij} with [X_i, X_j] = sum_l c^l_{ij} X_l, fitted pointwise by least
// squares on the anchor columns. Antisymmetry in (i,j) is structural: only
// i<j is stored.
struct StructureFunctions {
  int k = 0;
  std::vector<ScalarField> c;  // index l * C(k,2) + upper(i,j)
  double fit_residual = 0.0;   // worst probe residual at full-rank points
  int skipped_points = 0;      // probes below anchor rank k

  const ScalarField& upper_coef(int l, int i, int j) const {
    const int nut = k * (k - 1) / 2;
    return c[static_cast<std::size_t>(l * nut) + BivectorField::upper_index(k, i, j)];
  }
  double coef_value(int l, int i, int j, const Point& p) const {
    if (i == j) return 0.0;
    double s = i < j ? 1.0 : -1.0;
    return s * upper_coef(l, std::min(i, j), std::max(i, j)).value(p);
  }
};

StructureFunctions fit_structure_functions(const AnchoredFrame& frame,
                                           std::span<const Point> probes);

// E-form of degree p: coefficients on increasing multi-indices of the dual
// frame, stored in lexicographic order.
class EForm {
 public:
  EForm(int degree, int k, int chart_dim);

  static std::vector<std::vector<int>> multi_indices(int k, int p);

  int degree() const { return degree_; }
  int k() const { return k_; }
  int chart_dim() const { return chart_dim_; }

  const std::vector<std::vector<int>>& indices() const { return idx_; }
  void set_coef(const std::vector<int>& increasing_idx, ScalarField f);
  const ScalarField& coef(const std::vector<int>& increasing_idx) const;

  // value of omega(X_{j_0},...,X_{j_{p-1}}) for arbitrary (possibly unsorted)
  // index tuples, resolving the permutation sign; zero on repeats.
  ScalarField signed_coef(std::vector<int> idx) const;

  double max_coef_norm(std::span<const Point> probes) const;

  // the function case (degree 0)
  static EForm function(int k, ScalarField g);
  // dual basis 1-form alpha_l
  static EForm dual_basis(int k, int chart_dim, int l);
  // sum over given (i,j) pairs of coefficient fields: degree-2 constructor
  static EForm two_form(int k, int chart_dim,
                        const std::vector<std::tuple<int, int, ScalarField>>& terms);

 private:
  std::size_t rank_of(const std::vector<int>& idx) const;

  int degree_, k_, chart_dim_;
  std::vector<std::vector<int>> idx_;
  std::vector<ScalarField> coefs_;
};

// Cartan-type differential over the anchored frame: directional derivatives
// along the anchor images plus bracket terms through the structure functions.
EForm algebroid_d(const EForm& omega, const AnchoredFrame& frame,
                  const StructureFunctions& structure);

struct ClosednessReport {
  bool closed = false;
  double max_norm = 0.0;
  Point witness;
};

ClosednessReport is_closed(const EForm& omega, const AnchoredFrame& frame,
                           const StructureFunctions& structure, std::span<const Point> probes,
                           double tol = 1e-8);

// Basis change B with B^T W B equal to the canonical block pairing
// diag([[0,1],[-1,0]], ...). Pivots on the largest-magnitude pairing partner.
Eigen::MatrixXd symplectic_gram_schmidt(const Eigen::MatrixXd& W);

struct SplitFormCheck {
  bool duals_closed = false;
  bool frame_commutes = false;
  bool agree = false;
  double dual_d_norm = 0.0;
  double bracket_norm = 0.0;
};

// Checks the two halves of the closedness <-> commutativity equivalence for a
// split form sum_i alpha_i ^ beta_i on the given frame; they are computed by
// independent routes and must agree on every shipped fixture.
SplitFormCheck closedness_commutativity_check(const AnchoredFrame& frame,
                                              std::span<const Point> probes,
                                              double closed_tol = 1e-8,
                                              double commute_tol = 1e-9);

}  // namespace pgc
