#include <doctest.h>

#include <cmath>

#include "h2c/bvp.hpp"
#include "h2c/shapes.hpp"
#include "support.hpp"

using namespace h2c;

namespace {

Eigen::MatrixXd rigid(const Eigen::MatrixXd& ctrl, double angle, const Eigen::Vector2d& shift) {
  RigidMotion m{angle, Eigen::Vector2d::Zero()};
  return m.apply(ctrl).rowwise() + shift.transpose();
}

double wrap_angle(double a) { return std::remainder(a, two_pi); }

Discretization small_disc() {
  Discretization d;
  d.num_time = 8;
  d.num_phi = 10;
  return d;
}

}  // namespace

TEST_CASE("identical endpoints give a zero geodesic") {
  const auto cs = SplineSpace1D::periodic(3, 20);
  const SplineCurve c = fit_plane_curve(shapes::make("propeller3", 0.05), cs);
  for (Mode mode : {Mode::parametrized, Mode::unparametrized, Mode::shape}) {
    const GeodesicResult r = solve(mode, MetricParams{}, c, c, small_disc());
    CHECK(r.distance == 0.0);
    CHECK(r.iterations <= 1);
    CHECK(r.converged);
    CHECK(log_map(r).controls().cwiseAbs().maxCoeff() == 0.0);
    if (r.diffeo) CHECK(r.diffeo->is_identity());
    if (r.motion) {
      CHECK(r.motion->angle == 0.0);
      CHECK(r.motion->translation.norm() == 0.0);
    }
  }
}

TEST_CASE("translated curves: straight path energy and optimality") {
  const auto cs = SplineSpace1D::periodic(3, 40);
  const SplineCurve c0 = fit_plane_curve(shapes::circle(), cs);
  const Eigen::RowVector2d a(0.3, -0.4);
  const SplineCurve c1(cs, c0.controls().rowwise() + a);
  const MetricParams mp{1.0, 0.5, 0.01, false};
  const GeodesicResult r = solve_parametrized(mp, c0, c1);
  const double straight = mp.a0 * curve_length(c0, CurveStencil(cs, 5)) * a.squaredNorm();
  // The linear path is the start value; its energy has the closed form.
  CHECK(std::abs(r.history.front() - straight) / straight < 1e-6);
  CHECK(r.converged);
  CHECK(r.energy.total <= straight);
  CHECK(std::abs(r.distance * r.distance - r.energy.total) <= 1e-12 * r.energy.total);
  for (std::size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] < r.history[k - 1]);
  // The tangent of the straight path is the translation itself.
  const SplineCurve v = initial_velocity(SplinePath::linear(SplineSpace1D::clamped(3, 20), c0, c1));
  CHECK((v.controls().rowwise() - a).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("parametrized geodesic: rigid invariance and constant speed") {
  const auto cs = SplineSpace1D::periodic(3, 24);
  const SplineCurve c0 = fit_plane_curve(shapes::ellipse(1.2, 0.8), cs);
  const SplineCurve c1 = fit_plane_curve(shapes::make("propeller3", 0.0), cs);
  const MetricParams mp;
  const GeodesicResult r = solve_parametrized(mp, c0, c1);
  REQUIRE(r.converged);
  const Eigen::Vector2d b(0.7, -2.0);
  const GeodesicResult rr = solve_parametrized(mp, SplineCurve(cs, rigid(c0.controls(), 1.1, b)),
                                               SplineCurve(cs, rigid(c1.controls(), 1.1, b)));
  CHECK(std::abs(rr.distance - r.distance) < 1e-8 * r.distance);
  // Minimizers have constant speed, so the initial kinetic energy is the total energy.
  const SplineCurve v = log_map(r);
  const double g = inner_product(mp, c0, v, v, CurveStencil(cs, 5));
  CHECK(std::abs(g - r.energy.total) < 0.02 * r.energy.total);
}

TEST_CASE("unparametrized geodesic recovers a parameter shift") {
  const auto cs = SplineSpace1D::periodic(3, 40);
  const SplineCurve c0 = fit_plane_curve(shapes::wrap(), cs);
  const double s = 1.3;
  const SplineCurve c1 = fit_plane_curve([&](double t) { return shapes::wrap()(t + s); }, cs);
  const GeodesicResult r = solve_unparametrized(MetricParams{}, c0, c1);
  CHECK(r.converged);
  CHECK(r.distance < 1e-4 * curve_diameter(c0));
  REQUIRE(r.diffeo);
  CHECK(std::abs(wrap_angle(r.diffeo->shift() + s)) < 1e-3);
  CHECK(r.diffeo->is_admissible());
}

TEST_CASE("shape geodesic recovers a rigid motion") {
  const auto cs = SplineSpace1D::periodic(3, 40);
  const SplineCurve c0 = fit_plane_curve(shapes::wrap(), cs);
  const double gamma = 2.0;
  const Eigen::Vector2d b(0.4, 1.5);
  const SplineCurve c1(cs, RigidMotion{gamma, b}.apply(c0.controls()));
  const GeodesicResult r = solve_shape(MetricParams{}, c0, c1);
  CHECK(r.converged);
  CHECK(r.distance < 1e-4 * curve_diameter(c0));
  REQUIRE(r.motion);
  // R_beta(R_gamma(x + b) + a) = x for all x.
  CHECK(std::abs(wrap_angle(r.motion->angle + gamma)) < 1e-4);
  const Eigen::Vector2d expected = -(RigidMotion{gamma, Eigen::Vector2d::Zero()}.rotation() * b);
  CHECK((r.motion->translation - expected).norm() < 1e-4);
}

TEST_CASE("quotient distances are ordered") {
  const auto cs = SplineSpace1D::periodic(3, 24);
  const SplineCurve c0 = fit_plane_curve(shapes::make("propeller3", 0.0), cs);
  const SplineCurve c1 = fit_plane_curve(shapes::make("propeller4", 0.0), cs);
  const Discretization disc = small_disc();
  const double dp = solve_parametrized(MetricParams{}, c0, c1, disc).distance;
  const double du = solve_unparametrized(MetricParams{}, c0, c1, disc).distance;
  const double ds = solve_shape(MetricParams{}, c0, c1, disc).distance;
  CHECK(du <= dp * (1 + 1e-6));
  CHECK(ds <= du * (1 + 1e-6));
  CHECK(ds > 0.0);
}

TEST_CASE("unparametrized distance is nearly symmetric") {
  const auto cs = SplineSpace1D::periodic(3, 40);
  const SplineCurve c0 = fit_plane_curve(shapes::propeller(3), cs);
  const SplineCurve c1 = fit_plane_curve(shapes::make("propeller4", 0.03, 12, 1.0), cs);
  const double fwd = solve_unparametrized(MetricParams{}, c0, c1).distance;
  const double bwd = solve_unparametrized(MetricParams{}, c1, c0).distance;
  CHECK(std::abs(fwd - bwd) / std::max(fwd, bwd) < 0.05);
}

TEST_CASE("warm start and failure modes") {
  const auto cs = SplineSpace1D::periodic(3, 20);
  const SplineCurve c0 = fit_plane_curve(shapes::ellipse(), cs);
  const SplineCurve c1 = fit_plane_curve(shapes::make("propeller4", 0.02), cs);
  const Discretization disc = small_disc();
  const GeodesicResult r = solve_unparametrized(MetricParams{}, c0, c1, disc);
  const GeodesicResult again = solve_unparametrized(MetricParams{}, c0, c1, disc, {}, &r);
  CHECK(again.iterations <= 1);
  CHECK(std::abs(again.distance - r.distance) < 1e-8 * r.distance);

  // The straight line between c and -c passes through a point curve.
  const SplineCurve flipped(cs, -c0.controls());
  CHECK_THROWS_AS(solve_parametrized(MetricParams{}, c0, flipped), InitDegenerateError);

  GeodesicResult bad = r;
  bad.converged = false;
  CHECK_THROWS_AS(log_map(bad), NotConvergedError);
  CHECK_THROWS_AS(solve_parametrized(MetricParams{}, c0, test::circle(SplineSpace1D::periodic(3, 21))), ShapeError);
  CHECK_THROWS_AS(mode_from_string("affine"), InvalidParameterError);
  CHECK(mode_from_string(to_string(Mode::shape)) == Mode::shape);
}

TEST_CASE("distance grows with the second-order weight") {
  const auto cs = SplineSpace1D::periodic(3, 24);
  const SplineCurve c0 = fit_plane_curve(shapes::circle(), cs);
  const SplineCurve c1 = fit_plane_curve(shapes::make("propeller4", 0.0), cs);
  double prev = 0.0;
  for (double scale : {1.0, 10.0, 100.0, 1000.0}) {
    const double d = solve_parametrized(MetricParams{1.0, 0.0, scale / 4096.0, false}, c0, c1, small_disc()).distance;
    CHECK(d > prev);
    prev = d;
  }
}
