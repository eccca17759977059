#pragma once

#include <optional>
#include <string>

#include "pgc/fields.hpp"
#include "pgc/ode.hpp"
#include "pgc/probes.hpp"

namespace pgc {

// --- stable small-argument kernels ---------------------------------------

// e^w - 1 - w, full relative accuracy near 0.
template <class T>
T expm1_minus(const T& w) {
  if (std::abs(jet_value(w)) > 0.35) return expm1(w) - w;
  T term = w * w * 0.5;
  T acc = term;
  for (int k = 3; k <= 18; ++k) {
    term = term * w * (1.0 / k);
    acc = acc + term;
  }
  return acc;
}

// -log1p(-s) - s = sum_{k>=2} s^k/k, full relative accuracy near 0.
template <class T>
T neglog1p_minus(const T& s) {
  if (std::abs(jet_value(s)) > 0.25) return -(log1p(-s)) - s;
  T sk = s * s;
  T acc = sk * 0.5;
  for (int k = 3; k <= 34; ++k) {
    sk = sk * s;
    acc = acc + sk * (1.0 / k);
  }
  return acc;
}

// (e^a - 1)/a extended smoothly through a = 0; the removable singularity is
// handled by a 4-term Taylor branch below |a| = 1e-4.
inline constexpr double kSeamThreshold = 1e-4;

template <class T>
T exp_mean(const T& a) {
  if (std::abs(jet_value(a)) < kSeamThreshold)
    return T(1.0) + a * (1.0 / 2.0) + a * a * (1.0 / 6.0) + a * a * a * (1.0 / 24.0);
  return expm1(a) / a;
}

// n-th derivative of exp_mean; recurrence for moderate |a|, series near 0.
double exp_mean_derivative(int n, double a);

// --- generator data -------------------------------------------------------

// f(x, v) with hand-coded x-derivatives. The derivative fields are
// cross-checked against jets of f in the unit tests, so a wrong entry here
// cannot survive.
struct GeneratorFunction {
  std::string name;
  int vdim = 0;
  ScalarField f, fx, fxx, fxxx;  // fields on (x, v_1..v_vdim)
  std::vector<double> zeros_x;   // declared x-zero set (at shipped v)
  int bm_order = 0;              // m when f = x^m, else 0 (enables closed forms)

  static GeneratorFunction power(int m);
  static GeneratorFunction sine();
  static GeneratorFunction from_parts(std::string name, int vdim, ScalarField f, ScalarField fx,
                                      ScalarField fxx, ScalarField fxxx,
                                      std::vector<double> zeros_x);
};

enum class FlowMethod { automatic, closed_form, ode };

struct FlowOptions {
  double seam = kSeamThreshold;
  double zero_locus_eps = 1e-9;
  FlowMethod method = FlowMethod::automatic;
  OdeOptions ode;
};

template <class T>
struct FlowVals {
  T F;      // time-a flow of f through x
  T G;      // (x - F)/a, extended by -f at a = 0
  T alpha;  // -f/G, extended by 1 across the removable seams
  T beta;   // (1 - alpha)/a, the db^dy coefficient shape
};

// --- evaluation paths ------------------------------------------------------

namespace detail_flows {
template <class T>
std::vector<T> xv_args(const T& x, std::span<const T> v) {
  std::vector<T> a;
  a.reserve(v.size() + 1);
  a.push_back(x);
  a.insert(a.end(), v.begin(), v.end());
  return a;
}
}  // namespace detail_flows

// Taylor branch about a = 0. With D = 1 + (a/2) f' + (a^2/6)(f''f + f'^2)
//                                 + (a^3/24)(f'''f^2 + 4 f'' f' f + f'^3)
// the four quantities collapse to F = x + a f D, G = -f D, alpha = 1/D,
// beta = ((D-1)/a)/D, which keeps beta finite at a = 0.
template <class T>
FlowVals<T> flow_vals_series(const GeneratorFunction& g, const T& a, const T& x,
                             std::span<const T> v) {
  auto args = detail_flows::xv_args(x, v);
  T f = g.f.eval(args);
  T f1 = g.fx.eval(args);
  T f2 = g.fxx.eval(args);
  T f3 = g.fxxx.eval(args);
  T c1 = f1 * 0.5;
  T c2 = (f2 * f + f1 * f1) * (1.0 / 6.0);
  T c3 = (f3 * f * f + f2 * f1 * f * 4.0 + f1 * f1 * f1) * (1.0 / 24.0);
  T dm1_over_a = c1 + a * c2 + a * a * c3;  // (D-1)/a
  T D = T(1.0) + a * dm1_over_a;
  FlowVals<T> r;
  r.F = x + a * (f * D);
  r.G = -(f * D);
  r.alpha = T(1.0) / D;
  r.beta = dm1_over_a / D;
  return r;
}

// ODE path in the rescaled time sigma = s/a: integrating
//   Ft' = a f(Ft),  It' = f(Ft),  Jt' = (1-sigma) f'(Ft) f(Ft)
// over sigma in [0,1] gives F = Ft(1), G = -It(1), alpha = f/It,
// beta = Jt/It, all free of 1/a cancellation.
template <class T>
FlowVals<T> flow_vals_ode(const GeneratorFunction& g, const T& a, const T& x,
                          std::span<const T> v, const FlowOptions& opt = {}) {
  if (std::abs(jet_value(a)) < opt.seam) return flow_vals_series(g, a, x, v);

  std::array<T, kMaxOdeDim> y;
  y[0] = x;
  y[1] = T(0.0);
  y[2] = T(0.0);
  std::vector<T> args = detail_flows::xv_args(x, v);
  auto rhs = [&](double s, const std::array<T, kMaxOdeDim>& yy, std::array<T, kMaxOdeDim>& dy) {
    args[0] = yy[0];
    T fv = g.f.eval(args);
    T fxv = g.fx.eval(args);
    dy[0] = a * fv;
    dy[1] = fv;
    dy[2] = fxv * fv * (1.0 - s);
  };
  integrate_dopri5<T>(rhs, 0.0, 1.0, y, 3, opt.ode);

  args[0] = x;
  T f0 = g.f.eval(args);
  FlowVals<T> r;
  r.F = y[0];
  r.G = -y[1];
  if (std::abs(jet_value(f0)) < opt.zero_locus_eps) {
    // On (or next to) the zero locus of f the ratio -f/G degenerates; the
    // variational solution gives alpha = 1/exp_mean(a f'(x)) there.
    T fx0 = g.fx.eval(args);
    T w = a * fx0;
    T em = exp_mean(w);
    r.alpha = T(1.0) / em;
    if (std::abs(jet_value(w)) < 1e-12) r.beta = fx0 * 0.5;
    else r.beta = expm1_minus(w) / (a * (w * em));
  } else {
    r.alpha = f0 / y[1];
    r.beta = y[2] / y[1];
  }
  return r;
}

// Closed forms for f = x^m. For m >= 2 everything is expressed through
// s = (m-1) a x^{m-1} with expm1/log1p so no branch loses accuracy on the
// chart 1 - s > 0; m = 1 is the exponential family.
template <class T>
FlowVals<T> closed_form_bm_t(int m, const T& a, const T& x) {
  FlowVals<T> r;
  if (m == 1) {
    T em = exp_mean(a);
    r.F = x * exp(a);
    r.G = -(x * em);
    r.alpha = T(1.0) / em;
    if (std::abs(jet_value(a)) < 1e-12) r.beta = T(0.5);
    else r.beta = expm1_minus(a) / (a * (a * em));
    return r;
  }
  if (m < 1) throw DegenerateInputError("closed_form_bm: m must be >= 1");
  const double inv = 1.0 / (m - 1);
  T xm1 = ipow(x, m - 1);
  T u = a * xm1;
  T s = u * static_cast<double>(m - 1);
  if (jet_value(s) >= 1.0) throw OutOfChartError("closed_form_bm: 1-(m-1)ax^{m-1} <= 0");
  T w = -(log1p(-s)) * inv;
  T r1 = expm1(w);  // (1-s)^{-1/(m-1)} - 1
  r.F = x + x * r1;
  if (std::abs(jet_value(a)) < 1e-300) {
    r.G = -ipow(x, m);
    r.alpha = T(1.0);
    r.beta = xm1 * (0.5 * m);
    return r;
  }
  r.G = -(x * r1) / a;
  if (std::abs(jet_value(u)) < 1e-150) {
    r.alpha = T(1.0);
    r.beta = xm1 * (0.5 * m);
    return r;
  }
  r.alpha = u / r1;
  T num = expm1_minus(w) + neglog1p_minus(s) * inv;  // (r1 - u), stable
  r.beta = num / (a * r1);
  return r;
}

template <class T>
FlowVals<T> flow_vals(const GeneratorFunction& g, const T& a, const T& x, std::span<const T> v,
                      const FlowOptions& opt = {}) {
  if (std::abs(jet_value(a)) < opt.seam) return flow_vals_series(g, a, x, v);
  switch (opt.method) {
    case FlowMethod::closed_form:
      if (g.bm_order == 0)
        throw DegenerateInputError("flow_vals: no closed form for " + g.name);
      return closed_form_bm_t<T>(g.bm_order, a, x);
    case FlowMethod::automatic:
      if (g.bm_order > 0) return closed_form_bm_t<T>(g.bm_order, a, x);
      [[fallthrough]];
    case FlowMethod::ode:
      return flow_vals_ode(g, a, x, v, opt);
  }
  throw DegenerateInputError("flow_vals: bad method");
}

// --- spec-facing scalar operations ----------------------------------------

double solve_F(const GeneratorFunction& g, double a, double x, std::span<const double> v = {},
               const FlowOptions& opt = {});
double G_of(const GeneratorFunction& g, double a, double x, std::span<const double> v = {},
            const FlowOptions& opt = {});
double alpha_of(const GeneratorFunction& g, double a, double x, std::span<const double> v = {},
                const FlowOptions& opt = {});
double beta_of(const GeneratorFunction& g, double a, double x, std::span<const double> v = {},
               const FlowOptions& opt = {});
FlowVals<double> closed_form_bm(int m, double a, double x);

// |fd dF/dx - f(F)/f(x)|; the identity dF/dx = f(F)/f(x) from the
// variational equation. Throws where f(x) = 0.
double dFdx_check(const GeneratorFunction& g, double a, double x, const FlowOptions& opt = {});

// Endpoint of the time-1 integral curve of sum_i coeff_i X_i from u.
template <class T>
std::vector<T> time1_flow_t(std::span<const VectorField> fields, std::span<const T> coeffs,
                            std::span<const T> u0, const OdeOptions& opt = {}) {
  const int n = static_cast<int>(u0.size());
  std::array<T, kMaxOdeDim> y;
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = u0[static_cast<std::size_t>(i)];
  std::vector<T> state(static_cast<std::size_t>(n));
  auto rhs = [&](double, const std::array<T, kMaxOdeDim>& yy, std::array<T, kMaxOdeDim>& dy) {
    for (int i = 0; i < n; ++i) state[static_cast<std::size_t>(i)] = yy[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i) dy[static_cast<std::size_t>(i)] = T(0.0);
    for (std::size_t k = 0; k < fields.size(); ++k) {
      auto comps = fields[k].eval(std::span<const T>(state));
      for (int i = 0; i < n; ++i)
        dy[static_cast<std::size_t>(i)] =
            dy[static_cast<std::size_t>(i)] + coeffs[k] * comps[static_cast<std::size_t>(i)];
    }
  };
  integrate_dopri5<T>(rhs, 0.0, 1.0, y, n, opt);
  std::vector<T> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)];
  return out;
}

Point time1_flow(std::span<const VectorField> fields, std::span<const double> coeffs,
                 const Point& u, const OdeOptions& opt = {});

}  // namespace pgc
