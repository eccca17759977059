#include <doctest.h>

#include "pgc/probes.hpp"
#include "pgc/tensor.hpp"

using namespace pgc;

TEST_CASE("every bivector on a 2-dimensional chart satisfies Jacobi") {
  BivectorField pi(2);
  pi.set(0, 1, ScalarField::coordinate(2, 0));  // x dx^dy
  for (const Point& p : ProbeSet::make(Box{{-2, 2}, {-2, 2}}, 3, 16))
    CHECK(jacobiator(pi, p).max_abs() == doctest::Approx(0.0));
}

TEST_CASE("constant coefficients kill all jacobiator terms") {
  BivectorField pi(4);
  pi.set(0, 1, ScalarField::constant(4, 1.0));
  pi.set(2, 3, ScalarField::constant(4, 1.0));
  Point p{0.3, -1.0, 2.0, 0.7};
  CHECK(jacobiator(pi, p).max_abs() == doctest::Approx(0.0));
}

TEST_CASE("hand-evaluated cyclic sum on R^3") {
  // pi^{12} = 1, pi^{23} = y (coordinate 1), others zero -> J^{123} = 1
  BivectorField pi(3);
  pi.set(0, 1, ScalarField::constant(3, 1.0));
  pi.set(1, 2, ScalarField::coordinate(3, 1));
  for (const Point& p : ProbeSet::make(Box{{-1, 1}, {-1, 1}, {-1, 1}}, 5, 8)) {
    Trivector J = jacobiator(pi, p);
    CHECK(J(0, 1, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(J.antisymmetry_defect() < 1e-12);
  }
}

TEST_CASE("pushforward by the identity returns pi(p)") {
  BivectorField pi(2);
  pi.set(0, 1, ScalarField::coordinate(2, 0));
  Point p{1.3, -0.4};
  Eigen::MatrixXd m = pushforward_bivector(SmoothMap::identity(2), pi, p);
  CHECK(m(0, 1) == doctest::Approx(1.3));
}

TEST_CASE("constant jacobian scaling: (2x,y) pushes dx^dy to 2 dx^dy") {
  BivectorField pi(2);
  pi.set(0, 1, ScalarField::constant(2, 1.0));
  SmoothMap phi(2, {ScalarField::analytic(2, [](auto a) { return a[0] * 2.0; }),
                    ScalarField::coordinate(2, 1)});
  Eigen::MatrixXd m = pushforward_bivector(phi, pi, Point{0.2, 0.9});
  CHECK(m(0, 1) == doctest::Approx(2.0));
  CHECK(m(1, 0) == doctest::Approx(-2.0));
}

TEST_CASE("pushforward is functorial at probes") {
  // psi: R^2 -> R^3, phi: R^3 -> R^2, both nonlinear
  SmoothMap psi(2, {ScalarField::analytic(2, [](auto a) { return a[0] * a[1]; }),
                    ScalarField::analytic(2, [](auto a) { return sin(a[0]); }),
                    ScalarField::analytic(2, [](auto a) { return a[1] + ipow(a[0], 2); })});
  SmoothMap phi(3, {ScalarField::analytic(3, [](auto a) { return a[0] + a[2] * a[1]; }),
                    ScalarField::analytic(3, [](auto a) { return a[1] * a[2]; })});
  BivectorField pi(2);
  pi.set(0, 1, ScalarField::analytic(2, [](auto a) { return 1.0 + ipow(a[0], 2); }));
  SmoothMap comp = phi.compose_after(psi);
  for (const Point& p : ProbeSet::make(Box{{-1, 1}, {-1, 1}}, 7, 16)) {
    Eigen::MatrixXd direct = pushforward_bivector(comp, pi, p);
    Eigen::MatrixXd mid = pushforward_bivector(psi, pi, p);
    Eigen::MatrixXd jphi = phi.jacobian(psi.apply(p));
    Eigen::MatrixXd staged = jphi * mid * jphi.transpose();
    CHECK((direct - staged).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("pfaffian4 on the canonical pairing and the zero matrix") {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 3) = 1.0; m(3, 0) = -1.0;  // da^dy
  m(1, 2) = 1.0; m(2, 1) = -1.0;  // db^dx
  CHECK(pfaffian4(m) == doctest::Approx(1.0));
  CHECK(pfaffian4(Eigen::Matrix4d::Zero()) == doctest::Approx(0.0));
  Eigen::Matrix4d bad = Eigen::Matrix4d::Zero();
  bad(0, 1) = 1.0;  // not antisymmetric
  CHECK_THROWS_AS(pfaffian4(bad), DegenerateInputError);
}

TEST_CASE("general pfaffian squares to the determinant") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 5; ++rep) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        double v = 2.0 * uniform01(rng) - 1.0;
        a(i, j) = v;
        a(j, i) = -v;
      }
    double pf = pfaffian(a);
    CHECK(pf * pf == doctest::Approx(a.determinant()).epsilon(1e-10));
  }
  Eigen::Matrix4d m4 = Eigen::Matrix4d::Zero();
  m4(0, 1) = 2.0; m4(1, 0) = -2.0;
  m4(2, 3) = -3.0; m4(3, 2) = 3.0;
  CHECK(pfaffian(m4) == doctest::Approx(pfaffian4(m4)));
}

TEST_CASE("sharp follows the worked musical convention") {
  BivectorField pi(2);
  pi.set(0, 1, ScalarField::coordinate(2, 0));  // x dx^dy
  Point p{1.7, 0.4};
  Eigen::VectorXd dx(2); dx << 1.0, 0.0;
  Eigen::VectorXd v = sharp(pi, dx, p);
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(1.7));  // x d/dy

  Eigen::VectorXd zero = sharp(pi, Eigen::VectorXd::Zero(2), p);
  CHECK(zero.cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  BivectorField canon(2);
  canon.set(0, 1, ScalarField::constant(2, 1.0));
  Eigen::VectorXd dy(2); dy << 0.0, 1.0;
  Eigen::VectorXd w = sharp(canon, dy, p);
  CHECK(w[0] == doctest::Approx(-1.0));  // -d/dx
  CHECK(w[1] == doctest::Approx(0.0));
}
