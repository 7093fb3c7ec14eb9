#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "h2c/splines.hpp"

namespace h2c {

using PlaneCurve = std::function<Eigen::Vector2d(double)>;

/// Synthetic planar test curves, all positively oriented and immersed.
namespace shapes {

PlaneCurve circle(double radius = 1.0);
PlaneCurve ellipse(double a = 2.0, double b = 1.0);
// A "C"-shaped band wrapped around the origin: not star-shaped.
PlaneCurve wrap(double width = 0.3, double opening = 0.8);
// r(theta) = 1 + depth cos(k theta).
PlaneCurve propeller(int blades, double depth = 0.4);
// c + eps sin(freq theta + phase) n, n the unit outer normal of c (numerically differentiated).
PlaneCurve with_normal_noise(PlaneCurve c, double eps, int freq = 12, double phase = 0.0);

// Names accepted by make(): circle, ellipse, wrap, propeller3, propeller4, ...
std::vector<std::string> names();
PlaneCurve make(const std::string& name, double noise = 0.0, int noise_freq = 12, double noise_phase = 0.0);

struct NamedCurve {
  std::string name;
  PlaneCurve curve;
};

// Fixed set used for distance-symmetry audits: circle, 3- and 4-bladed propellers,
// and the propellers with normal noise of amplitude 0.03.
std::vector<NamedCurve> symmetry_suite();

}  // namespace shapes

/// Least-squares fit of a parametrized plane curve at `samples_per_ctrl` * N uniform parameters.
SplineCurve fit_plane_curve(const PlaneCurve& c, const SplineSpace1D& space, int samples_per_ctrl = 10);

/// Bounding-box diagonal of the curve sampled at 200 parameters.
double curve_diameter(const SplineCurve& c);

}  // namespace h2c
