#include "h2c/shapes.hpp"

#include <cmath>
#include <numbers>

namespace h2c {
namespace shapes {

PlaneCurve circle(double radius) {
  return [radius](double t) { return Eigen::Vector2d(radius * std::cos(t), radius * std::sin(t)); };
}

PlaneCurve ellipse(double a, double b) {
  return [a, b](double t) { return Eigen::Vector2d(a * std::cos(t), b * std::sin(t)); };
}

PlaneCurve wrap(double width, double opening) {
  // Outer arc for theta in (0, pi), inner arc back for (pi, 2 pi); the radial
  // velocity keeps the turning points immersed.
  return [width, opening](double t) {
    const double r = 1.0 + width * std::sin(t);
    const double a = opening * std::numbers::pi * std::cos(t);
    return Eigen::Vector2d(r * std::cos(a), r * std::sin(a));
  };
}

PlaneCurve propeller(int blades, double depth) {
  return [blades, depth](double t) {
    const double r = 1.0 + depth * std::cos(blades * t);
    return Eigen::Vector2d(r * std::cos(t), r * std::sin(t));
  };
}

PlaneCurve with_normal_noise(PlaneCurve c, double eps, int freq, double phase) {
  if (eps == 0.0) return c;
  return [c = std::move(c), eps, freq, phase](double t) {
    const double h = 1e-5;
    const Eigen::Vector2d d = (c(t + h) - c(t - h)) / (2 * h);
    // The library curves are counter-clockwise, so the outer normal is (d_y, -d_x).
    const Eigen::Vector2d n = Eigen::Vector2d(d(1), -d(0)).normalized();
    return Eigen::Vector2d(c(t) + eps * std::sin(freq * t + phase) * n);
  };
}

std::vector<std::string> names() { return {"circle", "ellipse", "wrap", "propeller3", "propeller4", "propeller5"}; }

PlaneCurve make(const std::string& name, double noise, int noise_freq, double noise_phase) {
  PlaneCurve base;
  if (name == "circle") {
    base = circle();
  } else if (name == "ellipse") {
    base = ellipse();
  } else if (name == "wrap") {
    base = wrap();
  } else if (name.rfind("propeller", 0) == 0 && name.size() > 9) {
    const int k = std::stoi(name.substr(9));
    if (k < 2) throw InvalidParameterError("propellers need at least two blades");
    base = propeller(k);
  } else {
    throw InvalidParameterError("unknown shape '" + name + "'");
  }
  return with_normal_noise(std::move(base), noise, noise_freq, noise_phase);
}

std::vector<NamedCurve> symmetry_suite() {
  return {{"circle", circle()},
          {"propeller3", propeller(3)},
          {"propeller4", propeller(4)},
          {"propeller3-noisy", make("propeller3", 0.03)},
          {"propeller4-noisy", make("propeller4", 0.03, 12, 1.0)}};
}

}  // namespace shapes

SplineCurve fit_plane_curve(const PlaneCurve& c, const SplineSpace1D& space, int samples_per_ctrl) {
  const int n = samples_per_ctrl * space.num_ctrl();
  std::vector<double> th(n);
  Eigen::MatrixXd pts(n, 2);
  for (int k = 0; k < n; ++k) {
    th[k] = two_pi * k / n;
    pts.row(k) = c(th[k]).transpose();
  }
  return fit_curve(th, pts, space);
}

double curve_diameter(const SplineCurve& c) {
  std::vector<double> th(200);
  for (int k = 0; k < 200; ++k) th[k] = two_pi * k / 200;
  const Eigen::MatrixXd p = c.eval(th);
  return (p.colwise().maxCoeff() - p.colwise().minCoeff()).norm();
}

}  // namespace h2c
