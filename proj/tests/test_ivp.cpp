#include <doctest.h>

#include <cmath>

#include "h2c/bvp.hpp"
#include "h2c/ivp.hpp"
#include "h2c/shapes.hpp"
#include "support.hpp"

using namespace h2c;

namespace {

const MetricParams kParams{1.0, 0.5, 0.01, false};

SplineCurve shifted(const SplineCurve& c, const Eigen::MatrixXd& delta) { return {c.space(), c.controls() + delta}; }

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  Eigen::MatrixXd A(x.size(), 2);
  Eigen::VectorXd b(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    A(k, 0) = std::log(x[k]);
    A(k, 1) = 1.0;
    b(k) = std::log(y[k]);
  }
  return A.colPivHouseholderQr().solve(b)(0);
}

}  // namespace

TEST_CASE("pair energy") {
  const auto cs = SplineSpace1D::periodic(3, 30);
  const CurveStencil st(cs, 5);
  const SplineCurve c = test::circle(cs);
  CHECK(pair_energy(kParams, c, c, st) == 0.0);
  // A constant difference field has vanishing arc-length derivatives.
  const double delta = 0.3;
  const Eigen::RowVector2d a(delta, 0.0);
  const double len = curve_length(c, st);
  CHECK(pair_energy(kParams, c, SplineCurve(cs, c.controls().rowwise() + a), st) ==
        doctest::Approx(0.5 * len * kParams.a0 * delta * delta).epsilon(1e-12));
  CHECK(len == doctest::Approx(two_pi).epsilon(1e-6));

  // W(c, d) - W(d, c) is of third order in |c - d|.
  const SplineCurve base = test::wobbly(cs);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Matrix<double, 6, 1> coef;
  for (int i = 0; i < 6; ++i) coef(i) = u(rng);
  // Smooth random direction built from the first three Fourier modes.
  const Eigen::MatrixXd h = test::fit_function(cs, [&](double t) {
                              return Eigen::Vector2d(coef(0) * std::cos(t) + coef(1) * std::sin(2 * t) + coef(2) * std::cos(3 * t),
                                                     coef(3) * std::sin(t) + coef(4) * std::cos(2 * t) + coef(5) * std::sin(3 * t));
                            }).controls();
  std::vector<double> deltas, gaps;
  for (double dl : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const SplineCurve other = shifted(base, dl * h);
    deltas.push_back(dl);
    gaps.push_back(std::abs(pair_energy(kParams, base, other, st) - pair_energy(kParams, other, base, st)));
  }
  CHECK(loglog_slope(deltas, gaps) == doctest::Approx(3.0).epsilon(0.05));

  CHECK_THROWS_AS(pair_energy(kParams, c, test::circle(SplineSpace1D::periodic(3, 31)), st), ShapeError);
}

TEST_CASE("two-step discrete energy") {
  const auto cs = SplineSpace1D::periodic(3, 24);
  const CurveStencil st(cs, 5);
  const SplineCurve c0 = test::wobbly(cs, 0.1);
  const SplineCurve c1 = test::wobbly(cs, 0.12, 3, 0.2);
  const SplineCurve c2 = test::wobbly(cs, 0.15, 3, 0.3);
  const auto diff = [&](const SplineCurve& a, const SplineCurve& b) {
    return SplineCurve(cs, b.controls() - a.controls());
  };
  const double direct = inner_product(kParams, c0, diff(c0, c1), diff(c0, c1), st) +
                        inner_product(kParams, c1, diff(c1, c2), diff(c1, c2), st);
  CHECK(discrete_energy(kParams, DiscretePath{{c0, c1, c2}}, st) == doctest::Approx(direct).epsilon(1e-12));
  CHECK_THROWS_AS(discrete_energy(kParams, DiscretePath{{c0}}, st), InvalidParameterError);
}

TEST_CASE("discrete exponential") {
  const auto cs = SplineSpace1D::periodic(3, 24);
  const CurveStencil st(cs, 5);
  const SplineCurve c0 = test::wobbly(cs);
  CHECK(discrete_exp(kParams, c0, c0).controls() == c0.controls());

  // Stationarity, checked through the independently assembled residual.
  const SplineCurve c1 = shifted(c0, 0.05 * (test::wobbly(cs, 0.1, 4).controls() - c0.controls()));
  const SplineCurve c2 = discrete_exp(kParams, c0, c1, st);
  const double scale = discrete_geodesic_residual(kParams, c0, c1, c1, st).cwiseAbs().maxCoeff();
  CHECK(discrete_geodesic_residual(kParams, c0, c1, c2, st).cwiseAbs().maxCoeff() < 1e-10 * scale);

  // Flat-space extrapolation up to second order in the step.
  const Eigen::MatrixXd dir = test::wobbly(cs, 0.1, 4).controls() - c0.controls();
  std::vector<double> steps, errors;
  for (double s : {0.04, 0.02, 0.01}) {
    const SplineCurve a = shifted(c0, s * dir);
    const Eigen::MatrixXd e = discrete_exp(kParams, c0, a, st).controls() - (2.0 * a.controls() - c0.controls());
    steps.push_back(s);
    errors.push_back(e.cwiseAbs().maxCoeff());
  }
  CHECK(loglog_slope(steps, errors) == doctest::Approx(2.0).epsilon(0.05));

  // A large step is not resolved within a couple of Newton iterations.
  ExpOptions few;
  few.max_iter = 2;
  CHECK_THROWS_AS(discrete_exp(kParams, c0, shifted(c0, 0.5 * dir), st, few), StepTooLargeError);
}

TEST_CASE("discrete exponential follows the boundary-value geodesic") {
  const auto cs = SplineSpace1D::periodic(3, 24);
  const CurveStencil st(cs, 5);
  const SplineCurve c0 = fit_plane_curve(shapes::ellipse(1.2, 0.8), cs);
  const SplineCurve c1 = fit_plane_curve(shapes::make("propeller3", 0.0), cs);
  Discretization disc;
  disc.num_time = 40;
  const GeodesicResult r = solve_parametrized(kParams, c0, c1, disc);
  REQUIRE(r.converged);
  std::vector<double> hs, errors;
  for (int K : {10, 20, 40}) {
    const SplineCurve next = discrete_exp(kParams, r.path.curve_at(0.0), r.path.curve_at(1.0 / K), st);
    hs.push_back(1.0 / K);
    errors.push_back((next.controls() - r.path.curve_at(2.0 / K).controls()).cwiseAbs().maxCoeff());
  }
  CHECK(errors[1] < errors[0]);
  CHECK(errors[2] < errors[1]);
  CHECK(loglog_slope(hs, errors) > 2.0);
}

TEST_CASE("shooting") {
  const auto cs = SplineSpace1D::periodic(3, 24);
  const CurveStencil st(cs, 5);
  const SplineCurve c0 = test::wobbly(cs);
  const SplineCurve zero(cs, Eigen::MatrixXd::Zero(cs.num_ctrl(), 2));
  const DiscretePath still = shoot(kParams, c0, zero, 5);
  REQUIRE(still.steps() == 5);
  for (const auto& c : still.curves) CHECK(c.controls() == c0.controls());

  const SplineCurve v(cs, test::wobbly(cs, 0.1, 4).controls() - c0.controls());
  const DiscretePath one = shoot(kParams, c0, v, 1);
  REQUIRE(one.steps() == 1);
  CHECK(one.back().controls() == c0.controls() + v.controls());

  CHECK_THROWS_AS(shoot(kParams, c0, v, 0), InvalidParameterError);
  ExpOptions few;
  few.max_iter = 1;
  try {
    shoot(kParams, c0, SplineCurve(cs, 3.0 * v.controls()), 3, st, few);
    FAIL("expected a failing step");
  } catch (const StepTooLargeError& e) {
    CHECK(e.step == 2);
  }
}

TEST_CASE("exponential of the logarithm") {
  const auto cs = SplineSpace1D::periodic(3, 24);
  const SplineCurve c0 = fit_plane_curve(shapes::ellipse(1.2, 0.8), cs);
  const SplineCurve c1 = fit_plane_curve(shapes::make("propeller3", 0.0), cs);
  double prev = 1e300;
  for (int n : {10, 20}) {
    Discretization disc;
    disc.num_time = n;
    const GeodesicResult r = solve_parametrized(kParams, c0, c1, disc);
    REQUIRE(r.converged);
    const DiscretePath p = shoot(kParams, c0, log_map(r), n);
    const double miss = solve_parametrized(kParams, p.back(), c1, disc).distance / r.distance;
    CHECK(miss < prev);
    prev = miss;
  }
  CHECK(prev < 2e-2);
}
