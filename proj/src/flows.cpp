#include "pgc/flows.hpp"

namespace pgc {

double exp_mean_derivative(int n, double a) {
  if (n < 0) throw DegenerateInputError("exp_mean_derivative: n >= 0");
  if (std::abs(a) < 0.5) {
    // E^{(n)}(a) = sum_j a^j / (j! (j+n+1))
    double term = 1.0;  // a^j/j!
    double acc = 0.0;
    for (int j = 0; j <= 30; ++j) {
      acc += term / (j + n + 1);
      term *= a / (j + 1);
    }
    return acc;
  }
  double e = std::exp(a);
  double cur = std::expm1(a) / a;
  for (int k = 1; k <= n; ++k) cur = (e - k * cur) / a;
  return cur;
}

GeneratorFunction GeneratorFunction::power(int m) {
  if (m < 1) throw DegenerateInputError("GeneratorFunction::power: m >= 1");
  auto mono = [](int mm, double c) {
    return ScalarField::analytic(1, [mm, c](auto a) {
      using T = std::decay_t<decltype(a[0])>;
      if (mm < 0) return T(0.0);
      return ipow(a[0], mm) * c;
    });
  };
  GeneratorFunction g;
  g.name = "x^" + std::to_string(m);
  g.bm_order = m;
  g.f = mono(m, 1.0);
  g.fx = mono(m - 1, static_cast<double>(m));
  g.fxx = mono(m - 2, static_cast<double>(m) * (m - 1));
  g.fxxx = mono(m - 3, static_cast<double>(m) * (m - 1) * (m - 2));
  g.zeros_x = {0.0};
  return g;
}

GeneratorFunction GeneratorFunction::sine() {
  GeneratorFunction g;
  g.name = "sin";
  g.f = ScalarField::analytic(1, [](auto a) { return sin(a[0]); });
  g.fx = ScalarField::analytic(1, [](auto a) { return cos(a[0]); });
  g.fxx = ScalarField::analytic(1, [](auto a) { return -sin(a[0]); });
  g.fxxx = ScalarField::analytic(1, [](auto a) { return -cos(a[0]); });
  g.zeros_x = {0.0, 3.14159265358979323846, -3.14159265358979323846};
  return g;
}

GeneratorFunction GeneratorFunction::from_parts(std::string name, int vdim, ScalarField f,
                                                ScalarField fx, ScalarField fxx, ScalarField fxxx,
                                                std::vector<double> zeros_x) {
  GeneratorFunction g;
  g.name = std::move(name);
  g.vdim = vdim;
  g.f = std::move(f);
  g.fx = std::move(fx);
  g.fxx = std::move(fxx);
  g.fxxx = std::move(fxxx);
  g.zeros_x = std::move(zeros_x);
  return g;
}

double solve_F(const GeneratorFunction& g, double a, double x, std::span<const double> v,
               const FlowOptions& opt) {
  FlowOptions o = opt;
  o.method = o.method == FlowMethod::automatic ? FlowMethod::ode : o.method;
  return flow_vals<double>(g, a, x, v, o).F;
}

double G_of(const GeneratorFunction& g, double a, double x, std::span<const double> v,
            const FlowOptions& opt) {
  return flow_vals<double>(g, a, x, v, opt).G;
}

double alpha_of(const GeneratorFunction& g, double a, double x, std::span<const double> v,
                const FlowOptions& opt) {
  return flow_vals<double>(g, a, x, v, opt).alpha;
}

double beta_of(const GeneratorFunction& g, double a, double x, std::span<const double> v,
               const FlowOptions& opt) {
  return flow_vals<double>(g, a, x, v, opt).beta;
}

FlowVals<double> closed_form_bm(int m, double a, double x) {
  return closed_form_bm_t<double>(m, a, x);
}

double dFdx_check(const GeneratorFunction& g, double a, double x, const FlowOptions& opt) {
  std::vector<double> noargs;
  std::vector<double> xv{x};
  double fx0 = g.f.eval(std::span<const double>(xv));
  if (std::abs(fx0) < 1e-14) throw DegenerateInputError("dFdx_check: f(x) = 0");
  const double h = 1e-6 * std::max(1.0, std::abs(x));
  double fp = solve_F(g, a, x + h, noargs, opt);
  double fm = solve_F(g, a, x - h, noargs, opt);
  double fd = (fp - fm) / (2.0 * h);
  std::vector<double> Fv{solve_F(g, a, x, noargs, opt)};
  double rhs = g.f.eval(std::span<const double>(Fv)) / fx0;
  return std::abs(fd - rhs);
}

Point time1_flow(std::span<const VectorField> fields, std::span<const double> coeffs,
                 const Point& u, const OdeOptions& opt) {
  if (fields.size() != coeffs.size()) throw DimensionMismatchError("time1_flow: coeff count");
  auto out = time1_flow_t<double>(fields, coeffs, std::span<const double>(u.x), opt);
  return Point(std::move(out));
}

}  // namespace pgc
