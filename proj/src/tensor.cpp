#include "pgc/tensor.hpp"

namespace pgc {

double Trivector::antisymmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        double v = (*this)(i, j, k);
        worst = std::max(worst, std::abs(v + (*this)(j, i, k)));
        worst = std::max(worst, std::abs(v + (*this)(i, k, j)));
        worst = std::max(worst, std::abs(v - (*this)(j, k, i)));
      }
  return worst;
}

namespace {

struct BivectorJet1 {
  int n;
  std::vector<double> val;    // val[ut] upper-triangle values
  std::vector<double> grad;   // grad[ut*n + l]
};

BivectorJet1 eval_bivector_jet1(const BivectorField& pi, const Point& p) {
  const int n = pi.dim();
  BivectorJet1 out;
  out.n = n;
  auto args = detail::seed_point<J1>(p);
  const std::size_t nut = static_cast<std::size_t>(n * (n - 1) / 2);
  out.val.resize(nut);
  out.grad.assign(nut * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const std::size_t u = BivectorField::upper_index(n, i, j);
      J1 r = pi.upper(i, j).eval(std::span<const J1>(args));
      out.val[u] = r.v;
      for (int l = 0; l < r.n; ++l) out.grad[u * static_cast<std::size_t>(n) + l] = r.d[l];
    }
  return out;
}

double coef(const BivectorJet1& b, int i, int j) {
  if (i == j) return 0.0;
  double s = i < j ? 1.0 : -1.0;
  return s * b.val[BivectorField::upper_index(b.n, std::min(i, j), std::max(i, j))];
}
double dcoef(const BivectorJet1& b, int l, int i, int j) {
  if (i == j) return 0.0;
  double s = i < j ? 1.0 : -1.0;
  return s * b.grad[BivectorField::upper_index(b.n, std::min(i, j), std::max(i, j)) *
                        static_cast<std::size_t>(b.n) +
                    static_cast<std::size_t>(l)];
}

}  // namespace

Trivector jacobiator(const BivectorField& pi, const Point& p) {
  if (p.dim() != pi.dim()) throw DimensionMismatchError("jacobiator point dimension");
  const int n = pi.dim();
  BivectorJet1 b = eval_bivector_jet1(pi, p);
  Trivector J(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
          s += coef(b, i, l) * dcoef(b, l, j, k);
          s += coef(b, j, l) * dcoef(b, l, k, i);
          s += coef(b, k, l) * dcoef(b, l, i, j);
        }
        // fill all permutations with signs
        J.at(i, j, k) = s;
        J.at(j, k, i) = s;
        J.at(k, i, j) = s;
        J.at(j, i, k) = -s;
        J.at(i, k, j) = -s;
        J.at(k, j, i) = -s;
      }
  return J;
}

double max_jacobiator_norm(const BivectorField& pi, std::span<const Point> probes) {
  double worst = 0.0;
  for (const Point& p : probes) worst = std::max(worst, jacobiator(pi, p).max_abs());
  return worst;
}

Eigen::MatrixXd pushforward_bivector(const SmoothMap& phi, const BivectorField& pi,
                                     const Point& p) {
  if (phi.domain_dim() != pi.dim()) throw DimensionMismatchError("pushforward domain");
  Eigen::MatrixXd jac = phi.jacobian(p);
  Eigen::MatrixXd P = pi.value(p);
  return jac * P * jac.transpose();
}

double pfaffian4(const Eigen::Matrix4d& m) {
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw DegenerateInputError("pfaffian4: input not antisymmetric");
  return m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2);
}

namespace {
double pfaffian_rec(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1.0;
  if (n == 2) return m(0, 1);
  double acc = 0.0;
  double sign = 1.0;
  for (int j = 1; j < n; ++j) {
    Eigen::MatrixXd sub(n - 2, n - 2);
    int rr = 0;
    for (int r = 1; r < n; ++r) {
      if (r == j) continue;
      int cc = 0;
      for (int c = 1; c < n; ++c) {
        if (c == j) continue;
        sub(rr, cc) = m(r, c);
        ++cc;
      }
      ++rr;
    }
    acc += sign * m(0, j) * pfaffian_rec(sub);
    sign = -sign;
  }
  return acc;
}
}  // namespace

double pfaffian(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw DegenerateInputError("pfaffian: need an even square matrix");
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + m.cwiseAbs().maxCoeff()))
    throw DegenerateInputError("pfaffian: input not antisymmetric");
  return pfaffian_rec(m);
}

Eigen::VectorXd sharp(const BivectorField& pi, const Eigen::VectorXd& theta, const Point& p) {
  if (theta.size() != pi.dim() || p.dim() != pi.dim())
    throw DimensionMismatchError("sharp dimensions");
  // pi^sharp(theta) = pi(theta, .) = P^T theta with P^{ij} = pi(du^i, du^j).
  return pi.value(p).transpose() * theta;
}

Eigen::VectorXd fd_gradient(const ScalarField& f, const Point& p, double h) {
  Eigen::VectorXd g(p.dim());
  for (int i = 0; i < p.dim(); ++i) {
    Point a = p, b = p;
    a[i] += h;
    b[i] -= h;
    g[i] = (f.value(a) - f.value(b)) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const ScalarField& f, const Point& p, double h) {
  const int n = p.dim();
  Eigen::MatrixXd m(n, n);
  const double f0 = f.value(p);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (i == j) {
        Point a = p, b = p;
        a[i] += h;
        b[i] -= h;
        m(i, i) = (f.value(a) - 2.0 * f0 + f.value(b)) / (h * h);
      } else {
        Point pp = p, pm = p, mp = p, mm = p;
        pp[i] += h; pp[j] += h;
        pm[i] += h; pm[j] -= h;
        mp[i] -= h; mp[j] += h;
        mm[i] -= h; mm[j] -= h;
        double v = (f.value(pp) - f.value(pm) - f.value(mp) + f.value(mm)) / (4.0 * h * h);
        m(i, j) = v;
        m(j, i) = v;
      }
    }
  }
  return m;
}

}  // namespace pgc
