#include "pgc/groupoid.hpp"

namespace pgc {

Eigen::MatrixXd AnchoredFrame::anchor_matrix(const Point& p) const {
  Eigen::MatrixXd m(dim(), k());
  for (int j = 0; j < k(); ++j) m.col(j) = fields[static_cast<std::size_t>(j)].value(p);
  return m;
}

int AnchoredFrame::anchor_rank(const Point& p, double rel_tol) const {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(anchor_matrix(p));
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  if (smax == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > rel_tol * smax) ++r;
  return r;
}

Eigen::VectorXd lie_bracket_value(const VectorField& X, const VectorField& Y, const Point& p) {
  if (X.dim() != Y.dim()) throw DimensionMismatchError("bracket dimensions");
  const int n = X.dim();
  Eigen::VectorXd xv = X.value(p), yv = Y.value(p);
  Eigen::VectorXd out(n);
  for (int l = 0; l < n; ++l) {
    Eigen::VectorXd gy = Y.component(l).gradient(p);
    Eigen::VectorXd gx = X.component(l).gradient(p);
    out[l] = xv.dot(gy) - yv.dot(gx);
  }
  return out;
}

Point arrow_point(const Arrow& a) {
  Point p;
  p.x = a.v;
  p.x.insert(p.x.end(), a.u.x.begin(), a.u.x.end());
  return p;
}

Point source(const ChartGroupoid&, const Arrow& a) { return a.u; }

Point target(const ChartGroupoid& G, const Arrow& a) {
  Point t = time1_flow(G.frame.fields, a.v, a.u, G.ode);
  if (!G.base_box.contains(t, 1e-9)) throw OutOfChartError("target leaves the base chart");
  return t;
}

Arrow identity_arrow(const ChartGroupoid& G, const Point& u) {
  Arrow a;
  a.v.assign(static_cast<std::size_t>(G.frame.k()), 0.0);
  a.u = u;
  return a;
}

Arrow inverse(const ChartGroupoid& G, const Arrow& a) {
  Arrow r;
  r.v.resize(a.v.size());
  for (std::size_t i = 0; i < a.v.size(); ++i) r.v[i] = -a.v[i];
  r.u = target(G, a);
  return r;
}

Arrow compose(const ChartGroupoid& G, const Arrow& g, const Arrow& h) {
  Point th = target(G, h);
  Point sg = source(G, g);
  double gap = 0.0;
  for (int i = 0; i < sg.dim(); ++i) gap = std::max(gap, std::abs(sg[i] - th[i]));
  if (gap > G.composability_tol) throw DegenerateInputError("compose: arrows not composable");
  Arrow r;
  r.v.resize(g.v.size());
  for (std::size_t i = 0; i < g.v.size(); ++i) r.v[i] = g.v[i] + h.v[i];
  r.u = h.u;
  if (!G.arrow_box.contains(arrow_point(r), 1e-9))
    throw OutOfChartError("compose: result leaves the arrow box");
  return r;
}

CommutativityReport verify_commutative_frame(const AnchoredFrame& frame,
                                             std::span<const Point> probes, double tol) {
  CommutativityReport rep;
  for (const Point& p : probes) {
    for (int i = 0; i < frame.k(); ++i) {
      for (int j = i + 1; j < frame.k(); ++j) {
        double norm = lie_bracket_value(frame.fields[static_cast<std::size_t>(i)],
                                        frame.fields[static_cast<std::size_t>(j)], p)
                          .cwiseAbs()
                          .maxCoeff();
        if (norm > rep.max_bracket_norm) {
          rep.max_bracket_norm = norm;
          rep.witness_i = i;
          rep.witness_j = j;
          rep.witness = p;
        }
      }
    }
  }
  rep.commutes = rep.max_bracket_norm < tol;
  return rep;
}

namespace {

// arrow coefficients drawn inside the v-part of the arrow box, shrunk so that
// sums of two arrows stay inside
std::vector<double> draw_coeffs(const ChartGroupoid& G, std::mt19937_64& rng, double shrink) {
  const int k = G.frame.k();
  std::vector<double> v(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    double lo = G.arrow_box.lo(i) * shrink, hi = G.arrow_box.hi(i) * shrink;
    v[static_cast<std::size_t>(i)] = lo + uniform01(rng) * (hi - lo);
  }
  return v;
}

double max_abs_diff(const Point& a, const Point& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

AxiomReport verify_axioms(const ChartGroupoid& G, std::span<const Point> base_probes,
                          std::uint64_t seed) {
  AxiomReport rep;
  rep.commutativity = verify_commutative_frame(G.frame, base_probes);
  std::mt19937_64 rng(seed);
  for (const Point& u : base_probes) {
    std::vector<double> vh = draw_coeffs(G, rng, 0.45);
    std::vector<double> vg = draw_coeffs(G, rng, 0.45);
    Arrow h{vh, u};
    Point th;
    try {
      th = target(G, h);
    } catch (const OutOfChartError&) {
      continue;
    }
    Arrow g{vg, th};
    try {
      Arrow gh = compose(G, g, h);
      double td = max_abs_diff(target(G, gh), target(G, g));
      double sd = max_abs_diff(source(G, gh), source(G, h));
      if (td > rep.target_comp_defect) {
        rep.target_comp_defect = td;
        rep.worst_g = g;
        rep.worst_h = h;
      }
      rep.source_comp_defect = std::max(rep.source_comp_defect, sd);

      // associativity of the vector addition, checked literally
      std::vector<double> vk = draw_coeffs(G, rng, 0.05);
      Arrow k{vk, target(G, g)};
      Arrow left = compose(G, compose(G, k, g), h);
      Arrow right = compose(G, k, compose(G, g, h));
      double ad = 0.0;
      for (std::size_t i = 0; i < left.v.size(); ++i)
        ad = std::max(ad, std::abs(left.v[i] - right.v[i]));
      ad = std::max(ad, max_abs_diff(left.u, right.u));
      rep.assoc_defect = std::max(rep.assoc_defect, ad);

      rep.inverse_defect =
          std::max(rep.inverse_defect, max_abs_diff(target(G, inverse(G, h)), source(G, h)));
    } catch (const OutOfChartError&) {
      continue;
    } catch (const DegenerateInputError&) {
      continue;
    }
  }
  return rep;
}

double pair_embedding_gap(const ChartGroupoid& G, std::span<const Point> base_probes,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Point, Point>> images;
  std::vector<Arrow> arrows;
  for (const Point& u : base_probes) {
    Arrow a{draw_coeffs(G, rng, 0.9), u};
    try {
      images.emplace_back(target(G, a), source(G, a));
      arrows.push_back(a);
    } catch (const OutOfChartError&) {
    }
  }
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      double d = std::max(max_abs_diff(images[i].first, images[j].first),
                          max_abs_diff(images[i].second, images[j].second));
      gap = std::min(gap, d);
    }
  }
  return gap;
}

}  // namespace pgc
