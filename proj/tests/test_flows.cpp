#include <doctest.h>

#include <cmath>

#include "pgc/flows.hpp"

using namespace pgc;

namespace {
const std::vector<double> kNoV;
}

TEST_CASE("exponential family closed form: F(1,2) = 2e") {
  GeneratorFunction g = GeneratorFunction::power(1);
  CHECK(solve_F(g, 1.0, 2.0) == doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-10));
  CHECK(solve_F(g, 0.0, 1.37) == 1.37);  // initial condition, exact
}

TEST_CASE("f = x^2: F(0.5, 1) = 2 via the ODE and the closed form") {
  GeneratorFunction g = GeneratorFunction::power(2);
  CHECK(solve_F(g, 0.5, 1.0) == doctest::Approx(2.0).epsilon(1e-10));
  FlowVals<double> cf = closed_form_bm(2, 0.5, 1.0);
  CHECK(cf.F == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(cf.G == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(cf.alpha == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("G and alpha at a = 0 take their limit values exactly") {
  GeneratorFunction g = GeneratorFunction::power(2);
  CHECK(G_of(g, 0.0, 1.3) == -1.3 * 1.3);
  CHECK(alpha_of(g, 0.0, 0.77) == 1.0);
  CHECK(G_of(g, 0.5, 1.0) == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("f = x: G(a,x) = -x E(a) at a in {-1, 0.5, 2}") {
  GeneratorFunction g = GeneratorFunction::power(1);
  FlowOptions ode_only;
  ode_only.method = FlowMethod::ode;
  for (double a : {-1.0, 0.5, 2.0}) {
    double want = -1.4 * std::expm1(a) / a;
    CHECK(G_of(g, a, 1.4, kNoV, ode_only) == doctest::Approx(want).epsilon(1e-10));
    CHECK(G_of(g, a, 1.4) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("closed_form_bm worked values") {
  CHECK(closed_form_bm(3, 0.375, 1.0).F == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(closed_form_bm(1, 0.8, -1.2).F == doctest::Approx(-1.2 * std::exp(0.8)).epsilon(1e-14));
  CHECK_THROWS_AS(closed_form_bm(2, 1.0, 2.0), OutOfChartError);
}

TEST_CASE("closed form vs ODE agreement on the m-family charts") {
  FlowOptions ode_only;
  ode_only.method = FlowMethod::ode;
  for (int m = 1; m <= 4; ++m) {
    GeneratorFunction g = GeneratorFunction::power(m);
    for (double a : {-0.4, -0.1, 0.2, 0.45}) {
      for (double x : {-0.9, -0.3, 0.6, 1.1}) {
        double s = (m - 1) * a * ipow(x, m - 1);
        if (s >= 0.95) continue;
        FlowVals<double> cf = closed_form_bm_t<double>(m, a, x);
        CHECK(solve_F(g, a, x, kNoV, ode_only) == doctest::Approx(cf.F).epsilon(1e-8));
        CHECK(G_of(g, a, x, kNoV, ode_only) == doctest::Approx(cf.G).epsilon(1e-8));
        CHECK(alpha_of(g, a, x, kNoV, ode_only) == doctest::Approx(cf.alpha).epsilon(1e-8));
        CHECK(beta_of(g, a, x, kNoV, ode_only) == doctest::Approx(cf.beta).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("flow semigroup property: F(a+b, x) = F(a, F(b, x))") {
  FlowOptions ode_only;
  ode_only.method = FlowMethod::ode;
  GeneratorFunction g = GeneratorFunction::sine();
  for (double x : {0.4, 1.0, 2.2}) {
    for (double a : {-0.5, 0.3}) {
      for (double b : {0.2, 0.6}) {
        double lhs = solve_F(g, a + b, x, kNoV, ode_only);
        double rhs = solve_F(g, a, solve_F(g, b, x, kNoV, ode_only), kNoV, ode_only);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("seam continuity of G, alpha, beta and the exp-mean") {
  GeneratorFunction g3 = GeneratorFunction::power(3);
  GeneratorFunction gs = GeneratorFunction::sine();
  for (const GeneratorFunction* g : {&g3, &gs}) {
    for (double mag : {0.5e-4, 0.8e-4, 1.3e-4, 1.9e-4}) {
      for (double sgn : {-1.0, 1.0}) {
        double a = sgn * mag;
        double x = 0.9;
        FlowVals<double> ser = flow_vals_series<double>(*g, a, x, kNoV);
        FlowOptions direct;
        direct.seam = 0.0;  // force the sigma-ODE branch
        direct.method = FlowMethod::ode;
        FlowVals<double> ode = flow_vals_ode<double>(*g, a, x, kNoV, direct);
        CHECK(ser.G == doctest::Approx(ode.G).epsilon(1e-9));
        CHECK(ser.alpha == doctest::Approx(ode.alpha).epsilon(1e-9));
        CHECK(ser.beta == doctest::Approx(ode.beta).epsilon(1e-9));
      }
    }
  }
  for (double mag : {0.5e-4, 1.9e-4}) {
    for (double sgn : {-1.0, 1.0}) {
      double a = sgn * mag;
      double series = 1.0 + a / 2.0 + a * a / 6.0 + a * a * a / 24.0;
      CHECK(series == doctest::Approx(std::expm1(a) / a).epsilon(1e-12));
    }
  }
}

TEST_CASE("exp-mean derivative recurrence and values at zero") {
  for (int n = 0; n <= 4; ++n)
    CHECK(exp_mean_derivative(n, 0.0) == doctest::Approx(1.0 / (n + 1)).epsilon(1e-14));
  for (double a : {-1.5, -0.6, 0.7, 1.8}) {
    for (int n = 1; n <= 4; ++n) {
      double lhs = exp_mean_derivative(n, a);
      double rhs = (std::exp(a) - n * exp_mean_derivative(n - 1, a)) / a;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
  // cross-check against jets of the direct expression
  std::vector<J2> av{jet_var<J2>(0.9, 0, 1)};
  J2 em = exp_mean(av[0]);
  CHECK(em.d[0].v == doctest::Approx(exp_mean_derivative(1, 0.9)).epsilon(1e-12));
  CHECK(em.d[0].d[0] == doctest::Approx(exp_mean_derivative(2, 0.9)).epsilon(1e-12));
}

TEST_CASE("dFdx identity holds and degenerates only at zeros of f") {
  GeneratorFunction g1 = GeneratorFunction::power(1);
  CHECK(dFdx_check(g1, 0.7, 1.1) < 1e-6);
  GeneratorFunction g2 = GeneratorFunction::power(2);
  CHECK(dFdx_check(g2, 0.5, 1.0) < 1e-6);
  CHECK(dFdx_check(g2, 0.0, 0.8) < 1e-9);  // H = 1 at a = 0
  CHECK_THROWS_AS(dFdx_check(g2, 0.3, 0.0), DegenerateInputError);
}

TEST_CASE("time-1 flows: identity, commuting pair, generator pair") {
  VectorField xdx(
      {ScalarField::analytic(2, [](auto a) { return a[0]; }), ScalarField::constant(2, 0.0)});
  VectorField ddy({ScalarField::constant(2, 0.0), ScalarField::constant(2, 1.0)});
  std::vector<VectorField> frame{xdx, ddy};

  Point u{1.4, -0.2};
  std::vector<double> zero{0.0, 0.0};
  Point same = time1_flow(frame, zero, u);
  CHECK(same[0] == doctest::Approx(1.4).epsilon(1e-13));
  CHECK(same[1] == doctest::Approx(-0.2).epsilon(1e-13));

  std::vector<double> ab{0.6, 0.25};
  Point moved = time1_flow(frame, ab, u);
  CHECK(moved[0] == doctest::Approx(1.4 * std::exp(0.6)).epsilon(1e-11));
  CHECK(moved[1] == doctest::Approx(-0.2 + 0.25).epsilon(1e-11));

  // generators f dx, -f dy with f = x^2: endpoint (F(a,x), bG(a,x) + y)
  VectorField X({ScalarField::analytic(2, [](auto a) { return ipow(a[0], 2); }),
                 ScalarField::constant(2, 0.0)});
  VectorField Y({ScalarField::constant(2, 0.0),
                 ScalarField::analytic(2, [](auto a) { return -ipow(a[0], 2); })});
  std::vector<VectorField> gen{X, Y};
  double a = 0.35, b = 0.8, x = 1.0, y = 0.5;
  Point end = time1_flow(gen, std::vector<double>{a, b}, Point{x, y});
  FlowVals<double> cf = closed_form_bm(2, a, x);
  CHECK(end[0] == doctest::Approx(cf.F).epsilon(1e-10));
  CHECK(end[1] == doctest::Approx(b * cf.G + y).epsilon(1e-10));
}

TEST_CASE("blow-up raises an out-of-chart error") {
  GeneratorFunction g = GeneratorFunction::power(2);
  FlowOptions ode_only;
  ode_only.method = FlowMethod::ode;
  CHECK_THROWS_AS(solve_F(g, 1.0, 2.0, kNoV, ode_only), OutOfChartError);
}

TEST_CASE("flow evaluation composes with jets: dF/dx = e^a for f = x") {
  GeneratorFunction g = GeneratorFunction::power(1);
  FlowOptions ode_only;
  ode_only.method = FlowMethod::ode;
  double a = 0.8;
  std::vector<J1> args{jet_var<J1>(1.2, 0, 1)};
  std::vector<J1> noV;
  FlowVals<J1> fv = flow_vals_ode<J1>(g, J1(a), args[0], noV, ode_only);
  CHECK(fv.F.v == doctest::Approx(1.2 * std::exp(a)).epsilon(1e-10));
  CHECK(fv.F.d[0] == doctest::Approx(std::exp(a)).epsilon(1e-8));
  // alpha is x-independent for f = x
  CHECK(fv.alpha.d[0] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("generator derivative fields agree with jets of f") {
  for (GeneratorFunction g : {GeneratorFunction::power(3), GeneratorFunction::sine()}) {
    for (double x : {-1.1, 0.4, 0.9}) {
      std::vector<J2> a{jet_var<J2>(x, 0, 1)};
      J2 f = g.f.eval(std::span<const J2>(a));
      std::vector<double> xs{x};
      CHECK(g.fx.eval(std::span<const double>(xs)) == doctest::Approx(f.d[0].v).epsilon(1e-13));
      CHECK(g.fxx.eval(std::span<const double>(xs)) ==
            doctest::Approx(f.d[0].d[0]).epsilon(1e-13));
      std::vector<J1> a1{jet_var<J1>(x, 0, 1)};
      J1 fxx = g.fxx.eval(std::span<const J1>(a1));
      CHECK(g.fxxx.eval(std::span<const double>(xs)) == doctest::Approx(fxx.d[0]).epsilon(1e-13));
    }
  }
}
