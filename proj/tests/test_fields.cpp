#include <doctest.h>

#include "pgc/fields.hpp"
#include "pgc/probes.hpp"
#include "pgc/tensor.hpp"

using namespace pgc;

namespace {
ScalarField xy_field() {
  return ScalarField::analytic(2, [](auto a) { return a[0] * sin(a[1]) + ipow(a[0], 3); });
}
}  // namespace

TEST_CASE("ScalarField gradient/hessian agree with central differences") {
  ScalarField f = xy_field();
  ProbeSet ps = ProbeSet::make(Box{{-1.5, 1.5}, {-2.0, 2.0}}, 11, 16);
  for (const Point& p : ps.points()) {
    Eigen::VectorXd g = f.gradient(p);
    Eigen::VectorXd gfd = fd_gradient(f, p);
    CHECK((g - gfd).cwiseAbs().maxCoeff() < 1e-4 * std::max(1.0, gfd.cwiseAbs().maxCoeff()));
    Eigen::MatrixXd h = f.hessian(p);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::MatrixXd hfd = fd_hessian(f, p);
    CHECK((h - hfd).cwiseAbs().maxCoeff() < 1e-4 * std::max(1.0, hfd.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("BivectorField stores the upper triangle; antisymmetry is exact") {
  BivectorField pi(3);
  pi.set(0, 1, ScalarField::constant(3, 1.0));
  pi.set(2, 1, ScalarField::coordinate(3, 1));  // sets pi^{12} = -y
  Point p{0.5, 2.0, -1.0};
  Eigen::MatrixXd m = pi.value(p);
  CHECK(m(0, 1) == 1.0);
  CHECK(m(1, 0) == -1.0);
  CHECK(m(2, 1) == doctest::Approx(2.0));
  CHECK(m(1, 2) == doctest::Approx(-2.0));
  CHECK(m(0, 0) == 0.0);
  CHECK((m + m.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("SmoothMap jacobian and composition") {
  // phi(x,y) = (2x, y), psi(u,v) = (u+v, u v)
  SmoothMap phi(2, {ScalarField::analytic(2, [](auto a) { return a[0] * 2.0; }),
                    ScalarField::coordinate(2, 1)});
  SmoothMap psi(2, {ScalarField::analytic(2, [](auto a) { return a[0] + a[1]; }),
                    ScalarField::analytic(2, [](auto a) { return a[0] * a[1]; })});
  SmoothMap comp = phi.compose_after(psi);  // phi(psi(.))
  Point p{1.0, 2.0};
  Point q = comp.apply(p);
  CHECK(q[0] == doctest::Approx(6.0));
  CHECK(q[1] == doctest::Approx(2.0));
  Eigen::MatrixXd J = comp.jacobian(p);
  CHECK(J(0, 0) == doctest::Approx(2.0));
  CHECK(J(0, 1) == doctest::Approx(2.0));
  CHECK(J(1, 0) == doctest::Approx(2.0));
  CHECK(J(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("probe sets are deterministic and honor exclusions") {
  Box box{{-1.0, 1.0}, {0.0, 2.0}};
  auto a = ProbeSet::make(box, 42, 32, {{0, 0.0, 1e-1}});
  auto b = ProbeSet::make(box, 42, 32, {{0, 0.0, 1e-1}});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i][0] == b[i][0]);
    CHECK(std::abs(a[i][0]) >= 1e-1);
    CHECK(box.contains(a[i]));
  }
}
