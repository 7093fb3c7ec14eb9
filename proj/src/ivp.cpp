#include "h2c/ivp.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

namespace h2c {

namespace {

void check_same_space(const SplineCurve& a, const SplineCurve& b, const CurveStencil& stencil) {
  if (!(a.space() == stencil.space()) || !(b.space() == stencil.space()) || a.dim() != b.dim())
    throw ShapeError("curves must share the stencil's curve space and dimension");
}

struct Residual {
  Eigen::MatrixXd value;
  Eigen::MatrixXd jacobian;  // d value / d c2, flattened
};

Residual residual(const MetricParams& params, const Eigen::MatrixXd& first_term, const SplineCurve& c1,
                  const Eigen::MatrixXd& c2, const CurveStencil& stencil, bool with_jacobian) {
  const Eigen::MatrixXd w = c2 - c1.controls();
  const SliceDerivatives s = slice_form(params, stencil, c1.controls(), w,
                                        with_jacobian ? DerivativeLevel::hessian : DerivativeLevel::gradient);
  Residual r;
  r.value = first_term + s.grad_x - s.grad_w;
  if (with_jacobian) {
    const Eigen::Index n = w.size();
    r.jacobian = s.hessian.topRightCorner(n, n) - s.hessian.bottomRightCorner(n, n);
  }
  return r;
}

}  // namespace

double pair_energy(const MetricParams& params, const SplineCurve& c, const SplineCurve& d,
                   const CurveStencil& stencil) {
  check_same_space(c, d, stencil);
  const SplineCurve diff(c.space(), c.controls() - d.controls());
  return 0.5 * inner_product(params, c, diff, diff, stencil);
}

double discrete_energy(const MetricParams& params, const DiscretePath& path, const CurveStencil& stencil) {
  const int K = path.steps();
  if (K < 1) throw InvalidParameterError("a discrete path needs at least two curves");
  double sum = 0.0;
  for (int k = 1; k <= K; ++k) sum += pair_energy(params, path.curves[k - 1], path.curves[k], stencil);
  return K * sum;
}

Eigen::MatrixXd discrete_geodesic_residual(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                                           const SplineCurve& c2, const CurveStencil& stencil) {
  check_same_space(c0, c1, stencil);
  check_same_space(c1, c2, stencil);
  const Eigen::MatrixXd first =
      slice_form(params, stencil, c0.controls(), c1.controls() - c0.controls(), DerivativeLevel::gradient).grad_w;
  return residual(params, first, c1, c2.controls(), stencil, false).value;
}

SplineCurve discrete_exp(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                         const CurveStencil& stencil, const ExpOptions& opts) {
  params.validate();
  check_same_space(c0, c1, stencil);
  const int d = c0.dim();
  const Eigen::MatrixXd first =
      slice_form(params, stencil, c0.controls(), c1.controls() - c0.controls(), DerivativeLevel::gradient).grad_w;
  const double target = opts.tol * first.cwiseAbs().maxCoeff();

  Eigen::MatrixXd c2 = 2.0 * c1.controls() - c0.controls();
  Residual r = residual(params, first, c1, c2, stencil, true);
  double norm = r.value.cwiseAbs().maxCoeff();
  for (int it = 0; it < opts.max_iter; ++it) {
    if (norm <= target) return SplineCurve(c0.space(), c2);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(r.jacobian);
    const Eigen::MatrixXd step = unflatten(lu.solve(-flatten(r.value)), d);
    if (!step.allFinite()) break;
    // Halve the step until the residual decreases; the curve c1 carries the
    // metric, so c2 may be anything and the residual is always defined.
    double t = 1.0;
    bool accepted = false;
    for (int half = 0; half < 30; ++half, t *= 0.5) {
      const Eigen::MatrixXd trial = c2 + t * step;
      Residual rt = residual(params, first, c1, trial, stencil, true);
      const double nt = rt.value.cwiseAbs().maxCoeff();
      if (std::isfinite(nt) && (nt < norm || nt <= target)) {
        c2 = trial;
        r = std::move(rt);
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (norm <= target) return SplineCurve(c0.space(), c2);
  throw StepTooLargeError("discrete exponential: Newton iteration did not converge (residual " +
                          std::to_string(norm) + ", target " + std::to_string(target) + ")");
}

SplineCurve discrete_exp(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1) {
  return discrete_exp(params, c0, c1, CurveStencil(c0.space(), 5));
}

DiscretePath shoot(const MetricParams& params, const SplineCurve& c0, const SplineCurve& v0, int steps,
                   const CurveStencil& stencil, const ExpOptions& opts) {
  if (steps < 1) throw InvalidParameterError("shooting needs at least one step");
  check_same_space(c0, v0, stencil);
  DiscretePath path;
  path.curves.reserve(steps + 1);
  path.curves.push_back(c0);
  path.curves.emplace_back(c0.space(), c0.controls() + v0.controls() / steps);
  for (int k = 2; k <= steps; ++k) {
    try {
      path.curves.push_back(discrete_exp(params, path.curves[k - 2], path.curves[k - 1], stencil, opts));
    } catch (const StepTooLargeError& e) {
      throw StepTooLargeError(std::string(e.what()) + " at step " + std::to_string(k), k);
    }
  }
  return path;
}

DiscretePath shoot(const MetricParams& params, const SplineCurve& c0, const SplineCurve& v0, int steps) {
  return shoot(params, c0, v0, steps, CurveStencil(c0.space(), 5));
}

}  // namespace h2c
