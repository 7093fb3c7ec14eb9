#include <doctest.h>

#include <random>

#include "h2c/splines.hpp"
#include "support.hpp"

using namespace h2c;

TEST_CASE("basis rows form a partition of unity with local support") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> ux(0.0, 1.0), uth(-10.0, 10.0);
  for (int degree = 1; degree <= 5; ++degree) {
    const auto clamped = SplineSpace1D::clamped(degree, degree + 7);
    const auto periodic = SplineSpace1D::periodic(degree, 13);
    for (int trial = 0; trial < 50; ++trial) {
      const double x = ux(rng);
      const auto r0 = eval_basis(clamped, x, 0), r1 = eval_basis(clamped, x, 1);
      CHECK(r0.values.size() == degree + 1);
      CHECK(r0.values.sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(r1.values.sum()) < 1e-12 * degree * 10);
      const double th = uth(rng);
      const auto p0 = eval_basis(periodic, th, 0), p1 = eval_basis(periodic, th, 1);
      CHECK(p0.values.sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(p1.values.sum()) < 1e-11);
      CHECK((p0.values.array() >= 0.0).all());
    }
  }
}

TEST_CASE("endpoints of clamped spaces are evaluable") {
  const auto s = SplineSpace1D::clamped(3, 8);
  CHECK(eval_basis(s, 0.0).values(0) == doctest::Approx(1.0));
  const auto end = eval_basis(s, 1.0);
  CHECK(end.index(3) == 7);
  CHECK(end.values(3) == doctest::Approx(1.0));
}

TEST_CASE("degree one basis interpolates at interior knots") {
  const auto s = SplineSpace1D::clamped(1, 6);  // knots 0,0,.2,.4,.6,.8,1,1
  const auto row = eval_basis(s, 0.4);
  const Eigen::VectorXd dense = row.dense();
  CHECK(dense(2) == doctest::Approx(1.0));
  CHECK(dense.sum() == doctest::Approx(1.0));
  CHECK(dense.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("periodic rows repeat after one period") {
  const auto s = SplineSpace1D::periodic(3, 11);
  for (double x : {0.0, 0.3, 1.7, 4.0, 6.1}) {
    const auto a = eval_basis(s, x, 2).dense();
    const auto b = eval_basis(s, x + two_pi, 2).dense();
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("derivative order above degree is rejected") {
  const auto s = SplineSpace1D::periodic(2, 8);
  CHECK_THROWS_AS(eval_basis(s, 0.1, 3), InvalidOrderError);
  SplinePath p(SplineSpace1D::clamped(1, 3), s, Eigen::MatrixXd::Zero(24, 2));
  CHECK_THROWS_AS(p.eval(0.5, 0.1, 2, 0), InvalidOrderError);
  CHECK_THROWS_AS(p.eval(1.5, 0.1, 0, 0), DomainError);
}

TEST_CASE("greville abscissas reproduce the identity") {
  for (int degree : {1, 2, 3, 4}) {
    const auto s = SplineSpace1D::periodic(degree, 20);
    const Eigen::VectorXd xi = greville_abscissas(s);
    for (int k = 0; k < 100; ++k) {
      const double th = two_pi * (k + 0.37) / 100;
      const auto row = eval_basis(s, th);
      double sum = 0.0;
      for (int l = 0; l <= degree; ++l) sum += row.values(l) * (xi(row.index(l)) + two_pi * row.wraps(l));
      CHECK(std::abs(sum - th) < 1e-12);
    }
    for (int b = 1; b < 20; ++b) CHECK(xi(b) - xi(b - 1) == doctest::Approx(two_pi / 20).epsilon(1e-13));
  }
  const auto lin = SplineSpace1D::periodic(1, 9);
  const Eigen::VectorXd xi = greville_abscissas(lin);
  for (int b = 0; b < 9; ++b) CHECK(xi(b) == doctest::Approx(lin.knots()[b + 1]));
}

TEST_CASE("path evaluation: constants, boundary rows, finite differences") {
  std::mt19937 rng(7);
  const auto ts = SplineSpace1D::clamped(3, 7);
  const auto cs = SplineSpace1D::periodic(3, 10);
  {
    Eigen::MatrixXd ctrl(70, 2);
    ctrl.col(0).setConstant(1.5);
    ctrl.col(1).setConstant(-2.0);
    SplinePath p(ts, cs, ctrl);
    CHECK((p.eval(0.3, 1.1) - Eigen::RowVector2d(1.5, -2.0)).norm() < 1e-13);
    CHECK(p.eval(0.3, 1.1, 1, 0).norm() < 1e-12);
    CHECK(p.eval(0.3, 1.1, 0, 2).norm() < 1e-11);
  }
  SplinePath p(ts, cs, test::random_matrix(70, 2, rng));
  // Boundary rows alone determine c(0,.) and c(1,.).
  SplinePath q = p;
  q.controls().middleRows(10, 50) += test::random_matrix(50, 2, rng);
  for (double th : {0.0, 0.7, 3.3}) {
    CHECK((p.eval(0.0, th) - q.eval(0.0, th)).norm() < 1e-14);
    CHECK((p.eval(1.0, th) - q.eval(1.0, th)).norm() < 1e-14);
    CHECK((p.eval(0.0, th) - p.start().eval(th)).norm() < 1e-14);
  }
  // Central differences, step 1e-5.
  std::uniform_real_distribution<double> ut(0.05, 0.95), uth(0.0, two_pi);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = ut(rng), th = uth(rng), h = 1e-5;
    const Eigen::RowVectorXd dt = (p.eval(t + h, th) - p.eval(t - h, th)) / (2 * h);
    CHECK(test::max_rel_error(dt, p.eval(t, th, 1, 0)) < 1e-6);
    const Eigen::RowVectorXd dth = (p.eval(t, th + h, 0, 1) - p.eval(t, th - h, 0, 1)) / (2 * h);
    CHECK(test::max_rel_error(dth, p.eval(t, th, 0, 2)) < 1e-6);
    const Eigen::RowVectorXd mixed = (p.eval(t + h, th, 0, 1) - p.eval(t - h, th, 0, 1)) / (2 * h);
    CHECK(test::max_rel_error(mixed, p.eval(t, th, 1, 1)) < 1e-6);
  }
}

TEST_CASE("linear path is the affine blend") {
  const auto ts = SplineSpace1D::clamped(3, 9);
  const auto cs = SplineSpace1D::periodic(3, 12);
  std::mt19937 rng(3);
  const SplineCurve a(cs, test::random_matrix(12, 2, rng)), b(cs, test::random_matrix(12, 2, rng));
  const SplinePath p = SplinePath::linear(ts, a, b);
  for (double t : {0.0, 0.13, 0.5, 0.77, 1.0})
    for (double th : {0.2, 2.9}) {
      const Eigen::RowVectorXd expect = (1 - t) * a.eval(th) + t * b.eval(th);
      CHECK((p.eval(t, th) - expect).norm() < 1e-13);
    }
}

TEST_CASE("least-squares fitting") {
  std::mt19937 rng(11);
  const auto s = SplineSpace1D::periodic(3, 15);
  const SplineCurve c(s, test::random_matrix(15, 2, rng));
  const auto th = test::uniform_thetas(5 * 15);
  const SplineCurve f = fit_curve(th, c.eval(th), s);
  CHECK((f.controls() - c.controls()).cwiseAbs().maxCoeff() < 1e-10);
  // Fitting samples of a fit reproduces it (projection idempotence).
  const SplineCurve g = fit_curve(th, f.eval(th), s);
  CHECK((g.controls() - f.controls()).cwiseAbs().maxCoeff() < 1e-10);

  const auto s12 = SplineSpace1D::periodic(4, 12);
  const SplineCurve circ = test::circle(s12);
  double worst = 0.0;
  for (int k = 0; k < 2000; ++k) worst = std::max(worst, std::abs(circ.eval(two_pi * k / 2000).norm() - 1.0));
  CHECK(worst < 1e-3);

  const auto few = test::uniform_thetas(10);
  CHECK_THROWS_AS(fit_curve(few, Eigen::MatrixXd::Zero(10, 2), s12), FitDegenerateError);
}
