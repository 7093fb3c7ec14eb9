#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

#include "h2c/splines.hpp"

namespace h2c {

/// Orientation-preserving reparametrization phi(theta) = theta + shift + sum_i f_i D_i(theta)
/// with D_i the basis of a periodic spline space.
///
/// phi' = sum_i (xi_i + f_i - xi_{i-1} - f_{i-1}) D^{(n-1)}_i / h, so phi is a
/// diffeomorphism whenever every cyclic slack (xi_i - xi_{i-1}) - (f_{i-1} - f_i) is positive.
class DiffeoSpline {
 public:
  DiffeoSpline() = default;
  explicit DiffeoSpline(SplineSpace1D space);  // identity
  DiffeoSpline(SplineSpace1D space, Eigen::VectorXd f, double shift);

  const SplineSpace1D& space() const { return space_; }
  const Eigen::VectorXd& f() const { return f_; }
  double shift() const { return shift_; }
  int num_ctrl() const { return space_.num_ctrl(); }

  bool is_identity() const { return shift_ == 0.0 && (f_.array() == 0.0).all(); }

  double eval(double theta) const;
  double derivative(double theta) const;
  // Solves phi(theta) = y (mod 2pi) for theta in [0, 2pi).
  double inverse(double y) const;

  // Cyclic slacks (xi_i - xi_{i-1}) - (f_{i-1} - f_i), i = 0..N-1 (i-1 taken mod N).
  Eigen::VectorXd slack() const;
  // Margin used to keep phi' strictly positive: 1e-3 * 2pi / N.
  double margin() const { return 1e-3 * two_pi / num_ctrl(); }
  bool is_admissible() const { return (slack().array() >= margin()).all(); }

 private:
  SplineSpace1D space_;
  Eigen::VectorXd f_;
  double shift_ = 0.0;
};

/// Normalized cumulative arc length s(theta) in [0, 1] on `samples` + 1 uniform
/// parameters 2 pi k / samples (trapezoid rule on |c'|).
Eigen::VectorXd relative_arclength(const SplineCurve& c, int samples);

/// Reparametrization in `space` approximating theta -> s1^{-1}(s0(theta) + offset), which
/// carries relative arc length of c0 onto that of c1 (so c1 o phi is traversed like c0).
/// The oscillating part is scaled down if needed to satisfy the admissibility slack.
DiffeoSpline arclength_matching(const SplineCurve& c0, const SplineCurve& c1, double offset, const SplineSpace1D& space);

/// Sample parameters used when re-fitting a composed curve: the Gauss nodes of
/// the curve space with m points per knot interval.
std::vector<double> refit_nodes(const SplineSpace1D& space, int m_theta);

/// Least-squares fit of theta -> curve(phi(theta)) at the fitter's sample parameters,
/// in the curve's space. The identity returns the curve unchanged.
SplineCurve refit_composed(const SplineCurve& curve, const DiffeoSpline& phi, const CurveFitter& fitter);
SplineCurve refit_composed(const SplineCurve& curve, const DiffeoSpline& phi, int m_theta = 5);

/// Same for an arbitrary parameter map.
SplineCurve refit_mapped(const SplineCurve& curve, const std::function<double(double)>& map, const CurveFitter& fitter);

}  // namespace h2c
