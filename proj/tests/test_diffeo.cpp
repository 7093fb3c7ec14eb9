#include <doctest.h>

#include <cmath>
#include <random>

#include "h2c/diffeo.hpp"
#include "h2c/shapes.hpp"
#include "support.hpp"

using namespace h2c;

namespace {

double max_distance(const SplineCurve& a, const std::function<Eigen::Vector2d(double)>& b, int samples = 1000) {
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = two_pi * (k + 0.37) / samples;
    worst = std::max(worst, (a.eval(t).transpose() - b(t)).norm());
  }
  return worst;
}

// Random admissible coefficients: cyclic differences bounded by a fraction of the gap.
Eigen::VectorXd random_admissible(int N, std::mt19937& rng, double fraction) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd f(N);
  for (int i = 0; i < N; ++i) f(i) = u(rng);
  f.array() -= f.mean();
  double maxdiff = 0.0;
  for (int i = 0; i < N; ++i) maxdiff = std::max(maxdiff, std::abs(f((i + N - 1) % N) - f(i)));
  return f * (fraction * two_pi / N / maxdiff);
}

}  // namespace

TEST_CASE("identity and shifts") {
  const auto ps = SplineSpace1D::periodic(3, 20);
  const DiffeoSpline id(ps);
  CHECK(id.is_identity());
  CHECK(id.is_admissible());
  for (double t : {0.0, 1.0, 6.0}) {
    CHECK(id.eval(t) == doctest::Approx(t).epsilon(1e-15));
    CHECK(id.derivative(t) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK((id.slack().array() - two_pi / 20).abs().maxCoeff() < 1e-12);
  const DiffeoSpline shift(ps, Eigen::VectorXd::Zero(20), 0.3);
  CHECK(shift.eval(1.0) == doctest::Approx(1.3));
  CHECK_FALSE(shift.is_identity());
}

TEST_CASE("admissible coefficients give increasing maps") {
  std::mt19937 rng(3);
  const auto ps = SplineSpace1D::periodic(3, 12);
  for (int trial = 0; trial < 20; ++trial) {
    const DiffeoSpline phi(ps, random_admissible(12, rng, 0.99), 0.1 * trial);
    CHECK(phi.is_admissible());
    double min_d = 1e300;
    for (int k = 0; k < 2000; ++k) min_d = std::min(min_d, phi.derivative(two_pi * k / 2000));
    CHECK(min_d > 0.0);
    CHECK(phi.eval(two_pi) - phi.eval(0.0) == doctest::Approx(two_pi).epsilon(1e-12));
    for (double y : {0.0, 1.0, 3.0, 6.2}) {
      const double t = phi.inverse(y);
      CHECK(t >= 0.0);
      CHECK(t < two_pi);
      CHECK(std::remainder(phi.eval(t) - y, two_pi) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    }
  }
  Eigen::VectorXd f = Eigen::VectorXd::Zero(12);
  f(3) = -0.6;  // f_3 - f_4 = -0.6 is fine, but f_2 - f_3 = 0.6 > gap = 0.52
  CHECK_FALSE(DiffeoSpline(ps, f, 0.0).is_admissible());
}

TEST_CASE("refit of a composition") {
  const auto cs = SplineSpace1D::periodic(3, 40);
  const auto ps = SplineSpace1D::periodic(3, 20);
  const SplineCurve c = fit_plane_curve(shapes::circle(), cs);

  // Identity: exact shortcut, and the generic projection reproduces the controls.
  CHECK(refit_composed(c, DiffeoSpline(ps)).controls() == c.controls());
  const CurveFitter fitter(cs, refit_nodes(cs, 5));
  CHECK((refit_mapped(c, [](double t) { return t; }, fitter).controls() - c.controls()).cwiseAbs().maxCoeff() <
        1e-12);

  // Rigid shift. A shifted cubic spline is not in the space, so the re-fit is only
  // as good as the space's approximation of the underlying circle.
  const double alpha = 0.7;
  const DiffeoSpline shift(ps, Eigen::VectorXd::Zero(20), alpha);
  const auto shifted_error = [&](const SplineCurve& curve) {
    return max_distance(refit_composed(curve, shift),
                        [&](double t) { return Eigen::Vector2d(curve.eval(t + alpha).transpose()); });
  };
  const double fit_error = max_distance(c, shapes::circle());
  CHECK(shifted_error(c) < 3.0 * fit_error);
  const SplineCurve quartic = fit_plane_curve(shapes::circle(), SplineSpace1D::periodic(4, 40));
  CHECK(shifted_error(quartic) < 1e-6);
  // Shifts by whole knot spans stay in the space.
  const DiffeoSpline knot_shift(ps, Eigen::VectorXd::Zero(20), 3 * two_pi / 40);
  CHECK(max_distance(refit_composed(c, knot_shift), [&](double t) {
          return Eigen::Vector2d(c.eval(t + 3 * two_pi / 40).transpose());
        }) < 1e-12);

  // Compose, then compose with the numerical inverse.
  std::mt19937 rng(11);
  const DiffeoSpline phi(ps, random_admissible(20, rng, 0.5), 0.4);
  const SplineCurve there = refit_composed(c, phi, fitter);
  const SplineCurve back = refit_mapped(there, [&](double t) { return phi.inverse(t); }, fitter);
  CHECK(max_distance(back, [&](double t) { return Eigen::Vector2d(c.eval(t).transpose()); }) < 1e-4);
}

TEST_CASE("diffeo input validation") {
  CHECK_THROWS_AS(DiffeoSpline(SplineSpace1D::clamped(3, 8)), InvalidParameterError);
  CHECK_THROWS_AS(DiffeoSpline(SplineSpace1D::periodic(3, 8), Eigen::VectorXd::Zero(7), 0.0), ShapeError);
  const auto cs = SplineSpace1D::periodic(3, 10);
  const CurveFitter wrong(SplineSpace1D::periodic(3, 12), refit_nodes(SplineSpace1D::periodic(3, 12), 3));
  CHECK_THROWS_AS(refit_mapped(test::circle(cs), [](double t) { return t; }, wrong), ShapeError);
}
