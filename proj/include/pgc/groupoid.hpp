#pragma once

#include "pgc/flows.hpp"
#include "pgc/probes.hpp"

namespace pgc {

// k generating vector fields on a chart U; the anchor images of a frame of
// sections. Rank/commutativity are properties checked on probes, not assumed.
struct AnchoredFrame {
  std::vector<VectorField> fields;

  int k() const { return static_cast<int>(fields.size()); }
  int dim() const { return fields.empty() ? 0 : fields.front().dim(); }

  // anchor matrix at p: columns are the field values
  Eigen::MatrixXd anchor_matrix(const Point& p) const;
  int anchor_rank(const Point& p, double rel_tol = 1e-10) const;
};

// [X, Y]^l = X^m d_m Y^l - Y^m d_m X^l, evaluated pointwise.
Eigen::VectorXd lie_bracket_value(const VectorField& X, const VectorField& Y, const Point& p);

// Arrows are points (v, u) of a box inside R^k x U; source is the projection,
// target is the time-1 flow of sum v_i X_i, composition is addition in v.
struct Arrow {
  std::vector<double> v;
  Point u;
};

// (v, u) concatenated into one chart point of the arrow box.
Point arrow_point(const Arrow& a);

struct ChartGroupoid {
  AnchoredFrame frame;
  Box arrow_box;  // bounds for (v_1..v_k, u_1..u_n)
  Box base_box;   // bounds for U'

  OdeOptions ode;
  double composability_tol = 1e-9;
};

Point source(const ChartGroupoid& G, const Arrow& a);
Point target(const ChartGroupoid& G, const Arrow& a);
Arrow identity_arrow(const ChartGroupoid& G, const Point& u);
Arrow inverse(const ChartGroupoid& G, const Arrow& a);
// g after h; requires |source(g) - target(h)| below the metric tolerance.
Arrow compose(const ChartGroupoid& G, const Arrow& g, const Arrow& h);

struct CommutativityReport {
  bool commutes = true;
  double max_bracket_norm = 0.0;
  int witness_i = -1, witness_j = -1;
  Point witness;
};

CommutativityReport verify_commutative_frame(const AnchoredFrame& frame,
                                             std::span<const Point> probes, double tol = 1e-9);

struct AxiomReport {
  CommutativityReport commutativity;
  double target_comp_defect = 0.0;  // |target(g o h) - target(g)|
  double source_comp_defect = 0.0;  // |source(g o h) - source(h)|
  double assoc_defect = 0.0;        // exact in these charts (addition)
  double inverse_defect = 0.0;      // |target(h^{-1}) - source(h)|
  Arrow worst_g, worst_h;
  bool pass(double tol = 1e-7) const {
    return target_comp_defect < tol && source_comp_defect < tol && assoc_defect < tol &&
           inverse_defect < tol;
  }
};

// Samples composable arrow pairs over the probe cloud and reports the worst
// defect of each groupoid identity. The non-commuting negative control is
// expected to fail loudly here, so commutativity is reported, not enforced.
AxiomReport verify_axioms(const ChartGroupoid& G, std::span<const Point> base_probes,
                          std::uint64_t seed = 7);

// Minimum separation of (target, source) images over distinct probe arrows;
// a positive gap witnesses injectivity into the pair groupoid.
double pair_embedding_gap(const ChartGroupoid& G, std::span<const Point> base_probes,
                          std::uint64_t seed = 11);

}  // namespace pgc
