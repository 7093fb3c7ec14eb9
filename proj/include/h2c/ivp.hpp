#pragma once

#include <vector>

#include "h2c/metric.hpp"
#include "h2c/splines.hpp"

namespace h2c {

/// Curves c_0, ..., c_K of a discrete path in one curve space.
struct DiscretePath {
  std::vector<SplineCurve> curves;

  int steps() const { return static_cast<int>(curves.size()) - 1; }
  const SplineCurve& front() const { return curves.front(); }
  const SplineCurve& back() const { return curves.back(); }
};

/// W(c, d) = 1/2 G_c(c - d, c - d), a local approximation of dist(c, d)^2 / 2.
double pair_energy(const MetricParams& params, const SplineCurve& c, const SplineCurve& d,
                   const CurveStencil& stencil);

/// E_K = K sum_k W(c_{k-1}, c_k).
double discrete_energy(const MetricParams& params, const DiscretePath& path, const CurveStencil& stencil);

/// Residual of the discrete geodesic equation in the middle curve,
/// d/dc1 [G_{c0}(c1 - c0, c1 - c0) + G_{c1}(c2 - c1, c2 - c1)], shaped like the controls.
Eigen::MatrixXd discrete_geodesic_residual(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                                           const SplineCurve& c2, const CurveStencil& stencil);

struct ExpOptions {
  double tol = 1e-10;  // residual infinity norm relative to the size of d/dc1 G_{c0}(c1 - c0, c1 - c0)
  int max_iter = 50;
};

/// Discrete exponential: the c2 making (c0, c1, c2) a discrete geodesic, by damped
/// Newton iteration from 2 c1 - c0. Throws StepTooLargeError if Newton fails.
SplineCurve discrete_exp(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                         const CurveStencil& stencil, const ExpOptions& opts = {});
SplineCurve discrete_exp(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1);

/// Geodesic shooting with K steps: c_1 = c_0 + v0 / K, c_{k+1} = Exp_{c_{k-1}} c_k.
DiscretePath shoot(const MetricParams& params, const SplineCurve& c0, const SplineCurve& v0, int steps,
                   const CurveStencil& stencil, const ExpOptions& opts = {});
DiscretePath shoot(const MetricParams& params, const SplineCurve& c0, const SplineCurve& v0, int steps);

}  // namespace h2c
