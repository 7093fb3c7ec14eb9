#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "h2c/splines.hpp"

namespace h2c::test {

inline std::vector<double> uniform_thetas(int n) {
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = two_pi * k / n;
  return t;
}

// Least-squares spline of an analytic closed curve sampled densely.
inline SplineCurve fit_function(const SplineSpace1D& space,
                                const std::function<Eigen::Vector2d(double)>& f, int samples = 0) {
  if (samples == 0) samples = 20 * space.num_ctrl();
  const auto th = uniform_thetas(samples);
  Eigen::MatrixXd pts(samples, 2);
  for (int k = 0; k < samples; ++k) pts.row(k) = f(th[k]).transpose();
  return fit_curve(th, pts, space);
}

inline SplineCurve circle(const SplineSpace1D& space, double radius = 1.0) {
  return fit_function(space, [radius](double t) { return Eigen::Vector2d(radius * std::cos(t), radius * std::sin(t)); });
}

// Circle with a smooth random-free wobble, immersed for |eps| < 0.2.
inline SplineCurve wobbly(const SplineSpace1D& space, double eps = 0.15, int k = 3, double phase = 0.0) {
  return fit_function(space, [=](double t) {
    const double r = 1.0 + eps * std::cos(k * t + phase);
    return Eigen::Vector2d(r * std::cos(t), 0.8 * r * std::sin(t));
  });
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

// Curve near a circle with random control perturbation of relative size `noise`.
inline SplineCurve random_curve(const SplineSpace1D& space, std::mt19937& rng, double noise = 0.1) {
  SplineCurve c = circle(space);
  c.controls() += random_matrix(space.num_ctrl(), 2, rng, noise);
  return c;
}

inline double max_rel_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

}  // namespace h2c::test
