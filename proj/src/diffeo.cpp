#include "h2c/diffeo.hpp"

#include <algorithm>
#include <cmath>

#include "h2c/quadrature.hpp"

namespace h2c {

DiffeoSpline::DiffeoSpline(SplineSpace1D space) : DiffeoSpline(space, Eigen::VectorXd::Zero(space.num_ctrl()), 0.0) {}

DiffeoSpline::DiffeoSpline(SplineSpace1D space, Eigen::VectorXd f, double shift)
    : space_(std::move(space)), f_(std::move(f)), shift_(shift) {
  if (!space_.is_periodic()) throw InvalidParameterError("diffeomorphisms need a periodic space");
  if (f_.size() != space_.num_ctrl()) throw ShapeError("diffeomorphism: wrong number of coefficients");
}

double DiffeoSpline::eval(double theta) const {
  return theta + shift_ + eval_spline<double>(space_, f_, theta, 0)(0);
}

double DiffeoSpline::derivative(double theta) const { return 1.0 + eval_spline<double>(space_, f_, theta, 1)(0); }

double DiffeoSpline::inverse(double y) const {
  // phi - id is periodic, so phi maps [0, 2pi) onto [phi(0), phi(0) + 2pi).
  const double lo0 = eval(0.0);
  const double target = y - two_pi * std::floor((y - lo0) / two_pi);
  double lo = 0.0, hi = two_pi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (eval(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd DiffeoSpline::slack() const {
  const int N = num_ctrl();
  const Eigen::VectorXd xi = greville_abscissas(space_);
  Eigen::VectorXd s(N);
  for (int i = 0; i < N; ++i) {
    const int prev = (i + N - 1) % N;
    const double gap = xi(i) - xi(prev) + (i == 0 ? two_pi : 0.0);
    s(i) = gap - (f_(prev) - f_(i));
  }
  return s;
}

Eigen::VectorXd relative_arclength(const SplineCurve& c, int samples) {
  std::vector<double> th(samples + 1);
  for (int k = 0; k <= samples; ++k) th[k] = two_pi * k / samples;
  const Eigen::VectorXd speed = c.eval(th, 1).rowwise().norm();
  Eigen::VectorXd s(samples + 1);
  s(0) = 0.0;
  for (int k = 1; k <= samples; ++k) s(k) = s(k - 1) + 0.5 * (speed(k - 1) + speed(k));
  return s / s(samples);
}

namespace {

// Piecewise linear interpolation of a nondecreasing table on [0, 1], extended by periodicity.
double table_inverse(const Eigen::VectorXd& s, double y) {
  const int n = static_cast<int>(s.size()) - 1;
  const double whole = std::floor(y);
  const double frac = y - whole;
  const auto* begin = s.data();
  const auto* it = std::upper_bound(begin, begin + n + 1, frac);
  const int k = std::clamp(static_cast<int>(it - begin) - 1, 0, n - 1);
  const double span = s(k + 1) - s(k);
  const double local = span > 0.0 ? (frac - s(k)) / span : 0.0;
  return two_pi * (whole + (k + local) / n);
}

}  // namespace

DiffeoSpline arclength_matching(const SplineCurve& c0, const SplineCurve& c1, double offset, const SplineSpace1D& space) {
  const int samples = 50 * std::max(c0.space().num_ctrl(), space.num_ctrl());
  const Eigen::VectorXd s0 = relative_arclength(c0, samples), s1 = relative_arclength(c1, samples);
  const std::vector<double> th = refit_nodes(space, 4);
  Eigen::MatrixXd g(th.size(), 1);
  for (std::size_t k = 0; k < th.size(); ++k) {
    const double pos = th[k] / two_pi * samples;
    const int j = std::min(static_cast<int>(pos), samples - 1);
    const double s = s0(j) + (pos - j) * (s0(j + 1) - s0(j));
    g(k, 0) = table_inverse(s1, s + offset) - th[k];
  }
  const Eigen::VectorXd coef = fit_curve(th, g, space).controls().col(0);
  const double shift = coef.mean();
  Eigen::VectorXd f = coef.array() - shift;
  // Largest scaling t <= 1 keeping every slack at least a tenth of its gap.
  const DiffeoSpline id(space);
  const Eigen::VectorXd gap = id.slack();
  double t = 1.0;
  const int N = space.num_ctrl();
  for (int i = 0; i < N; ++i) {
    const double drop = f((i + N - 1) % N) - f(i);
    if (drop > 0.0) t = std::min(t, 0.9 * gap(i) / drop);
  }
  return DiffeoSpline(space, t * f, shift);
}

std::vector<double> refit_nodes(const SplineSpace1D& space, int m_theta) { return build_rule(space, m_theta).nodes(); }

SplineCurve refit_mapped(const SplineCurve& curve, const std::function<double(double)>& map, const CurveFitter& fitter) {
  if (!(fitter.space() == curve.space())) throw ShapeError("refit: fitter space differs from curve space");
  const auto& th = fitter.thetas();
  Eigen::MatrixXd samples(th.size(), curve.dim());
  for (std::size_t k = 0; k < th.size(); ++k) samples.row(k) = curve.eval(map(th[k]));
  return fitter.fit(samples);
}

SplineCurve refit_composed(const SplineCurve& curve, const DiffeoSpline& phi, const CurveFitter& fitter) {
  if (phi.is_identity()) return curve;
  return refit_mapped(curve, [&](double t) { return phi.eval(t); }, fitter);
}

SplineCurve refit_composed(const SplineCurve& curve, const DiffeoSpline& phi, int m_theta) {
  if (phi.is_identity()) return curve;
  return refit_composed(curve, phi, CurveFitter(curve.space(), refit_nodes(curve.space(), m_theta)));
}

}  // namespace h2c
