#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "pgc/errors.hpp"
#include "pgc/jet.hpp"

namespace pgc {

struct Point {
  std::vector<double> x;

  Point() = default;
  explicit Point(std::vector<double> coords) : x(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : x(coords) {}

  int dim() const { return static_cast<int>(x.size()); }
  double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return x[static_cast<std::size_t>(i)]; }
};

namespace detail {

struct FieldImpl {
  virtual ~FieldImpl() = default;
  virtual J0 eval0(std::span<const J0> a) const = 0;
  virtual J1 eval1(std::span<const J1> a) const = 0;
  virtual J2 eval2(std::span<const J2> a) const = 0;
  virtual J3 eval3(std::span<const J3> a) const = 0;
};

template <class F>
struct AnalyticImpl final : FieldImpl {
  F f;
  explicit AnalyticImpl(F fn) : f(std::move(fn)) {}
  J0 eval0(std::span<const J0> a) const override { return f(a); }
  J1 eval1(std::span<const J1> a) const override { return f(a); }
  J2 eval2(std::span<const J2> a) const override { return f(a); }
  J3 eval3(std::span<const J3> a) const override { return f(a); }
};

template <class T>
std::vector<T> seed_point(const Point& p) {
  std::vector<T> a(p.x.size());
  for (int i = 0; i < p.dim(); ++i) a[static_cast<std::size_t>(i)] = jet_var<T>(p[i], i, p.dim());
  return a;
}

}  // namespace detail

class SmoothMap;

// A real-valued function on a coordinate chart. Evaluation is exact to
// machine precision at every supported jet order; finite differences are
// used in tests only, as an independent cross-check.
class ScalarField {
 public:
  ScalarField() = default;

  template <class F>
  static ScalarField analytic(int dim, F f) {
    ScalarField s;
    s.dim_ = dim;
    s.impl_ = std::make_shared<detail::AnalyticImpl<F>>(std::move(f));
    return s;
  }
  static ScalarField constant(int dim, double c) {
    return analytic(dim, [c](auto a) {
      using T = std::decay_t<decltype(a[0])>;
      (void)a;
      return T(c);
    });
  }
  static ScalarField coordinate(int dim, int i) {
    if (i < 0 || i >= dim) throw DimensionMismatchError("coordinate index out of range");
    return analytic(dim, [i](auto a) { return a[static_cast<std::size_t>(i)]; });
  }

  // Wraps an impl directly; used by derivative-style fields.
  static ScalarField from_impl(int dim, std::shared_ptr<const detail::FieldImpl> impl) {
    ScalarField s;
    s.dim_ = dim;
    s.impl_ = std::move(impl);
    return s;
  }

  bool valid() const { return impl_ != nullptr; }
  int dim() const { return dim_; }

  template <class T>
  T eval(std::span<const T> a) const {
    if (static_cast<int>(a.size()) != dim_) throw DimensionMismatchError("field arity");
    if constexpr (std::is_same_v<T, J0>) return impl_->eval0(a);
    else if constexpr (std::is_same_v<T, J1>) return impl_->eval1(a);
    else if constexpr (std::is_same_v<T, J2>) return impl_->eval2(a);
    else if constexpr (std::is_same_v<T, J3>) return impl_->eval3(a);
  }
  template <class T>
  T eval(const std::vector<T>& a) const {
    return eval(std::span<const T>(a));
  }

  double value(const Point& p) const {
    check_point(p);
    return impl_->eval0(std::span<const double>(p.x));
  }
  Eigen::VectorXd gradient(const Point& p) const {
    check_point(p);
    auto a = detail::seed_point<J1>(p);
    J1 r = impl_->eval1(a);
    Eigen::VectorXd g(p.dim());
    for (int i = 0; i < p.dim(); ++i) g[i] = i < r.n ? r.d[i] : 0.0;
    return g;
  }
  Eigen::MatrixXd hessian(const Point& p) const {
    check_point(p);
    auto a = detail::seed_point<J2>(p);
    J2 r = impl_->eval2(a);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p.dim(), p.dim());
    for (int i = 0; i < r.n; ++i)
      for (int j = 0; j < r.d[i].n; ++j) h(i, j) = r.d[i].d[j];
    return h;
  }

  ScalarField compose(const SmoothMap& phi) const;

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return lift2(a, b, [](auto x, auto y) { return x + y; });
  }
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return lift2(a, b, [](auto x, auto y) { return x - y; });
  }
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return lift2(a, b, [](auto x, auto y) { return x * y; });
  }
  friend ScalarField operator*(double c, const ScalarField& a) {
    ScalarField f = a;
    return analytic(a.dim_, [f, c](auto args) { return f.eval(args) * c; });
  }
  friend ScalarField operator-(const ScalarField& a) { return -1.0 * a; }

 private:
  void check_point(const Point& p) const {
    if (p.dim() != dim_) throw DimensionMismatchError("point/field dimension");
  }
  template <class Op>
  static ScalarField lift2(const ScalarField& a, const ScalarField& b, Op op) {
    if (a.dim_ != b.dim_) throw DimensionMismatchError("field dimensions differ");
    return analytic(a.dim_, [a, b, op](auto args) { return op(a.eval(args), b.eval(args)); });
  }

  int dim_ = 0;
  std::shared_ptr<const detail::FieldImpl> impl_;
};

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<ScalarField> comps) : comps_(std::move(comps)) {
    for (const auto& c : comps_)
      if (c.dim() != dim()) throw DimensionMismatchError("vector field components");
  }

  int dim() const { return comps_.empty() ? 0 : comps_.front().dim(); }
  const ScalarField& component(int i) const { return comps_[static_cast<std::size_t>(i)]; }
  const std::vector<ScalarField>& components() const { return comps_; }

  Eigen::VectorXd value(const Point& p) const {
    Eigen::VectorXd v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = comps_[static_cast<std::size_t>(i)].value(p);
    return v;
  }

  template <class T>
  std::vector<T> eval(std::span<const T> a) const {
    std::vector<T> v(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) v[i] = comps_[i].eval(a);
    return v;
  }

  // Builds a field from a generic lambda returning all components at once.
  template <class F>
  static VectorField analytic(int dim, int ncomp, F f) {
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(ncomp));
    for (int i = 0; i < ncomp; ++i)
      comps.push_back(ScalarField::analytic(dim, [f, i](auto a) { return f(a)[static_cast<std::size_t>(i)]; }));
    return VectorField(std::move(comps));
  }

 private:
  std::vector<ScalarField> comps_;
};

// Antisymmetric grid of coefficient fields pi^{ij} = pi(du^i, du^j); only the
// strict upper triangle is stored, so antisymmetry is exact by construction
// and the diagonal is identically zero. Also used for matrix-valued 2-forms.
class BivectorField {
 public:
  BivectorField() = default;
  explicit BivectorField(int dim) : dim_(dim), ut_(static_cast<std::size_t>(dim * (dim - 1) / 2)) {
    for (auto& f : ut_) f = ScalarField::constant(dim, 0.0);
  }

  int dim() const { return dim_; }

  void set(int i, int j, ScalarField f) {
    if (f.dim() != dim_) throw DimensionMismatchError("coefficient arity");
    if (i == j) throw DimensionMismatchError("diagonal coefficient must stay zero");
    if (i < j) ut_[idx(i, j)] = std::move(f);
    else ut_[idx(j, i)] = -1.0 * f;
  }
  // Upper-triangle accessor: requires i<j.
  const ScalarField& upper(int i, int j) const { return ut_[idx(i, j)]; }

  double coef_value(int i, int j, const Point& p) const {
    if (i == j) return 0.0;
    double s = i < j ? 1.0 : -1.0;
    return s * ut_[idx(std::min(i, j), std::max(i, j))].value(p);
  }

  Eigen::MatrixXd value(const Point& p) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j) {
        double v = ut_[idx(i, j)].value(p);
        m(i, j) = v;
        m(j, i) = -v;
      }
    return m;
  }

  // Flattened upper-triangle evaluation at arbitrary jet arguments.
  template <class T>
  std::vector<T> eval_upper(std::span<const T> a) const {
    std::vector<T> v(ut_.size());
    for (std::size_t i = 0; i < ut_.size(); ++i) v[i] = ut_[i].eval(a);
    return v;
  }

  static std::size_t upper_index(int dim, int i, int j) {
    return static_cast<std::size_t>(i * dim - i * (i + 1) / 2 + (j - i - 1));
  }

 private:
  std::size_t idx(int i, int j) const { return upper_index(dim_, i, j); }

  int dim_ = 0;
  std::vector<ScalarField> ut_;
};

class SmoothMap {
 public:
  SmoothMap() = default;
  SmoothMap(int domain_dim, std::vector<ScalarField> comps)
      : domain_(domain_dim), comps_(std::move(comps)) {
    for (const auto& c : comps_)
      if (c.dim() != domain_) throw DimensionMismatchError("map component arity");
  }

  int domain_dim() const { return domain_; }
  int codomain_dim() const { return static_cast<int>(comps_.size()); }
  const ScalarField& component(int i) const { return comps_[static_cast<std::size_t>(i)]; }

  static SmoothMap identity(int dim) {
    std::vector<ScalarField> comps;
    for (int i = 0; i < dim; ++i) comps.push_back(ScalarField::coordinate(dim, i));
    return SmoothMap(dim, std::move(comps));
  }
  // Projection onto the listed coordinates, in order.
  static SmoothMap projection(int dim, std::vector<int> coords) {
    std::vector<ScalarField> comps;
    for (int c : coords) comps.push_back(ScalarField::coordinate(dim, c));
    return SmoothMap(dim, std::move(comps));
  }

  Point apply(const Point& p) const {
    Point q;
    q.x.resize(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) q.x[i] = comps_[i].value(p);
    return q;
  }

  template <class T>
  std::vector<T> eval(std::span<const T> a) const {
    std::vector<T> v(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) v[i] = comps_[i].eval(a);
    return v;
  }

  Eigen::MatrixXd jacobian(const Point& p) const {
    Eigen::MatrixXd jac(codomain_dim(), domain_);
    auto a = detail::seed_point<J1>(p);
    for (int r = 0; r < codomain_dim(); ++r) {
      J1 y = comps_[static_cast<std::size_t>(r)].eval(std::span<const J1>(a));
      for (int c = 0; c < domain_; ++c) jac(r, c) = c < y.n ? y.d[c] : 0.0;
    }
    return jac;
  }

  SmoothMap compose_after(const SmoothMap& inner) const {
    if (inner.codomain_dim() != domain_) throw DimensionMismatchError("map composition");
    std::vector<ScalarField> comps;
    for (int i = 0; i < codomain_dim(); ++i) comps.push_back(component(i).compose(inner));
    return SmoothMap(inner.domain_dim(), std::move(comps));
  }

 private:
  int domain_ = 0;
  std::vector<ScalarField> comps_;
};

inline ScalarField ScalarField::compose(const SmoothMap& phi) const {
  if (phi.codomain_dim() != dim_) throw DimensionMismatchError("compose arity");
  ScalarField outer = *this;
  return ScalarField::analytic(phi.domain_dim(), [outer, phi](auto args) {
    auto mid = phi.eval(args);
    return outer.eval(mid);
  });
}

}  // namespace pgc
