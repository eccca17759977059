#pragma once

#include <array>
#include <cassert>
#include <cmath>

namespace pgc {

// Truncated forward-mode Taylor scalar: value plus first partials with
// respect to up to kMaxJetVars chart coordinates. Nesting (Jet<Jet<double>>)
// raises the derivative order; every layer is seeded with the same variable
// count, so for a nested jet r, r.d[i] is the one-order-lower jet of the
// i-th partial.
inline constexpr int kMaxJetVars = 8;

template <class T>
struct Jet {
  T v{};
  int n = 0;
  std::array<T, kMaxJetVars> d{};

  Jet() = default;
  Jet(double c) : v(c) {}  // NOLINT: implicit by design, constants promote
  Jet(T value, int nvars) : v(std::move(value)), n(nvars) {}
};

using J0 = double;
using J1 = Jet<double>;
using J2 = Jet<J1>;
using J3 = Jet<J2>;

template <class T>
struct jet_order {
  static constexpr int value = 0;
};
template <class T>
struct jet_order<Jet<T>> {
  static constexpr int value = 1 + jet_order<T>::value;
};

inline double jet_value(double x) { return x; }
template <class T>
double jet_value(const Jet<T>& x) {
  return jet_value(x.v);
}

inline double jet_abs_bound(double x) { return std::abs(x); }
template <class T>
double jet_abs_bound(const Jet<T>& x) {
  double m = jet_abs_bound(x.v);
  for (int i = 0; i < x.n; ++i) m = std::max(m, jet_abs_bound(x.d[i]));
  return m;
}

// Seeding ----------------------------------------------------------------

template <class T>
struct JetSeeder {
  static T constant(double c, int) { return c; }
  static T variable(double x, int, int) { return x; }
};
template <class U>
struct JetSeeder<Jet<U>> {
  static Jet<U> constant(double c, int n) {
    Jet<U> r(JetSeeder<U>::constant(c, n), n);
    for (int j = 0; j < n; ++j) r.d[j] = JetSeeder<U>::constant(0.0, n);
    return r;
  }
  static Jet<U> variable(double x, int i, int n) {
    Jet<U> r(JetSeeder<U>::variable(x, i, n), n);
    for (int j = 0; j < n; ++j) r.d[j] = JetSeeder<U>::constant(j == i ? 1.0 : 0.0, n);
    return r;
  }
};

template <class T>
T jet_const(double c, int n) {
  return JetSeeder<T>::constant(c, n);
}
template <class T>
T jet_var(double x, int i, int n) {
  return JetSeeder<T>::variable(x, i, n);
}

// Arithmetic -------------------------------------------------------------
// Binary ops take n = max of the operand widths; unseeded slots are zero.

template <class T>
Jet<T> operator+(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r(a.v + b.v, std::max(a.n, b.n));
  for (int i = 0; i < r.n; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}
template <class T>
Jet<T> operator-(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r(a.v - b.v, std::max(a.n, b.n));
  for (int i = 0; i < r.n; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}
template <class T>
Jet<T> operator-(const Jet<T>& a) {
  Jet<T> r(-a.v, a.n);
  for (int i = 0; i < r.n; ++i) r.d[i] = -a.d[i];
  return r;
}
template <class T>
Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r(a.v * b.v, std::max(a.n, b.n));
  for (int i = 0; i < r.n; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}
template <class T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r(a.v / b.v, std::max(a.n, b.n));
  for (int i = 0; i < r.n; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) / b.v;
  return r;
}

template <class T>
Jet<T> operator+(const Jet<T>& a, double c) {
  Jet<T> r = a;
  r.v = r.v + c;
  return r;
}
template <class T>
Jet<T> operator+(double c, const Jet<T>& a) {
  return a + c;
}
template <class T>
Jet<T> operator-(const Jet<T>& a, double c) {
  return a + (-c);
}
template <class T>
Jet<T> operator-(double c, const Jet<T>& a) {
  return (-a) + c;
}
template <class T>
Jet<T> operator*(const Jet<T>& a, double c) {
  Jet<T> r(a.v * c, a.n);
  for (int i = 0; i < r.n; ++i) r.d[i] = a.d[i] * c;
  return r;
}
template <class T>
Jet<T> operator*(double c, const Jet<T>& a) {
  return a * c;
}
template <class T>
Jet<T> operator/(const Jet<T>& a, double c) {
  return a * (1.0 / c);
}
template <class T>
Jet<T> operator/(double c, const Jet<T>& a) {
  return Jet<T>(c) / a;
}

template <class T>
Jet<T>& operator+=(Jet<T>& a, const Jet<T>& b) {
  a = a + b;
  return a;
}
template <class T>
Jet<T>& operator-=(Jet<T>& a, const Jet<T>& b) {
  a = a - b;
  return a;
}
template <class T>
Jet<T>& operator*=(Jet<T>& a, const Jet<T>& b) {
  a = a * b;
  return a;
}

// Elementary functions ----------------------------------------------------

template <class T>
Jet<T> apply_chain(const Jet<T>& a, T fv, T dfv) {
  Jet<T> r(std::move(fv), a.n);
  for (int i = 0; i < r.n; ++i) r.d[i] = dfv * a.d[i];
  return r;
}

using std::cos;
using std::exp;
using std::expm1;
using std::log;
using std::log1p;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

template <class T>
Jet<T> sin(const Jet<T>& a) {
  return apply_chain(a, sin(a.v), cos(a.v));
}
template <class T>
Jet<T> cos(const Jet<T>& a) {
  return apply_chain(a, cos(a.v), -sin(a.v));
}
template <class T>
Jet<T> exp(const Jet<T>& a) {
  T e = exp(a.v);
  return apply_chain(a, e, e);
}
template <class T>
Jet<T> expm1(const Jet<T>& a) {
  return apply_chain(a, expm1(a.v), exp(a.v));
}
template <class T>
Jet<T> log(const Jet<T>& a) {
  return apply_chain(a, log(a.v), T(1.0) / a.v);
}
template <class T>
Jet<T> log1p(const Jet<T>& a) {
  return apply_chain(a, log1p(a.v), T(1.0) / (T(1.0) + a.v));
}
template <class T>
Jet<T> sqrt(const Jet<T>& a) {
  T s = sqrt(a.v);
  return apply_chain(a, s, T(0.5) / s);
}

inline double ipow(double x, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= x;
  return r;
}
template <class T>
Jet<T> ipow(const Jet<T>& x, int m) {
  assert(m >= 0);
  Jet<T> r(1.0);
  for (int i = 0; i < m; ++i) r = r * x;
  return r;
}

template <class T>
Jet<T> pow(const Jet<T>& a, double r) {
  T p = pow(a.v, r);
  T dp = pow(a.v, r - 1.0) * r;
  return apply_chain(a, std::move(p), std::move(dp));
}

}  // namespace pgc
