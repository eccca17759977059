#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "pgc/errors.hpp"
#include "pgc/jet.hpp"

namespace pgc {

inline constexpr int kMaxOdeDim = 10;

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double initial_step = 1e-2;
  double min_step = 1e-14;
  double blowup_magnitude = 1e12;
};

// Dormand-Prince 5(4) embedded pair, templated on the state scalar so flows
// differentiate through integration (jet slots are included in the error
// norm). Adaptivity picks steps from the controlled error, so derivative
// noise stays at the tolerance scale.
template <class T, class Rhs>
void integrate_dopri5(Rhs&& rhs, double t0, double t1, std::array<T, kMaxOdeDim>& y, int n,
                      const OdeOptions& opt = {}) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // difference between 5th and embedded 4th order weights
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (t1 == t0) return;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  double t = t0;
  double h = std::min(opt.initial_step, span) * dir;

  std::array<T, kMaxOdeDim> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  rhs(t, y, k1);

  auto stage = [&](std::array<T, kMaxOdeDim>& out, double hh,
                   std::initializer_list<std::pair<const std::array<T, kMaxOdeDim>*, double>> terms) {
    for (int i = 0; i < n; ++i) {
      T acc = y[i];
      for (const auto& [kv, w] : terms) acc = acc + (*kv)[i] * (hh * w);
      out[i] = acc;
    }
  };

  int steps = 0;
  const int max_steps = 2000000;
  while ((t1 - t) * dir > 0.0) {
    if (++steps > max_steps) throw OutOfChartError("ode: step budget exhausted");
    if (std::abs(h) > std::abs(t1 - t)) h = t1 - t;

    stage(ytmp, h, {{&k1, a21}});
    rhs(t + c2 * h, ytmp, k2);
    stage(ytmp, h, {{&k1, a31}, {&k2, a32}});
    rhs(t + c3 * h, ytmp, k3);
    stage(ytmp, h, {{&k1, a41}, {&k2, a42}, {&k3, a43}});
    rhs(t + c4 * h, ytmp, k4);
    stage(ytmp, h, {{&k1, a51}, {&k2, a52}, {&k3, a53}, {&k4, a54}});
    rhs(t + c5 * h, ytmp, k5);
    stage(ytmp, h, {{&k1, a61}, {&k2, a62}, {&k3, a63}, {&k4, a64}, {&k5, a65}});
    rhs(t + h, ytmp, k6);
    stage(ynew, h, {{&k1, b1}, {&k3, b3}, {&k4, b4}, {&k5, b5}, {&k6, b6}});
    rhs(t + h, ynew, k7);

    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      T e = k1[i] * (h * e1) + k3[i] * (h * e3) + k4[i] * (h * e4) + k5[i] * (h * e5) +
            k6[i] * (h * e6) + k7[i] * (h * e7);
      double scale = opt.atol + opt.rtol * std::max(jet_abs_bound(y[i]), jet_abs_bound(ynew[i]));
      err = std::max(err, jet_abs_bound(e) / scale);
    }

    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      for (int i = 0; i < n; ++i)
        if (jet_abs_bound(y[i]) > opt.blowup_magnitude)
          throw OutOfChartError("ode: state magnitude blow-up");
    }
    double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    factor = std::clamp(factor, 0.2, 5.0);
    h *= factor;
    if (std::abs(h) < opt.min_step * std::max(1.0, std::abs(t)))
      throw OutOfChartError("ode: step size collapsed (blow-up before end time)");
  }
}

}  // namespace pgc
