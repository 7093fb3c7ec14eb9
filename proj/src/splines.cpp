#include "h2c/splines.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <string>

namespace h2c {

SplineSpace1D::SplineSpace1D(int degree, int num_ctrl, KnotKind kind)
    : degree_(degree), num_ctrl_(num_ctrl), kind_(kind) {
  if (degree < 0) throw InvalidParameterError("spline degree must be nonnegative");
  if (kind == KnotKind::clamped) {
    if (num_ctrl < degree + 1)
      throw InvalidParameterError("clamped space needs at least degree+1 controls");
    const int intervals = num_ctrl - degree;
    knots_.reserve(num_ctrl + degree + 1);
    for (int k = 0; k <= degree; ++k) knots_.push_back(0.0);
    for (int k = 1; k < intervals; ++k) knots_.push_back(static_cast<double>(k) / intervals);
    for (int k = 0; k <= degree; ++k) knots_.push_back(1.0);
  } else {
    if (num_ctrl < degree + 1 || num_ctrl < 1)
      throw InvalidParameterError("periodic space needs at least degree+1 controls");
    const double h = two_pi / num_ctrl;
    knots_.reserve(num_ctrl + 2 * degree + 1);
    for (int j = 0; j <= num_ctrl + 2 * degree; ++j) knots_.push_back((j - degree) * h);
  }
}

SplineSpace1D SplineSpace1D::clamped(int degree, int num_ctrl) {
  return SplineSpace1D(degree, num_ctrl, KnotKind::clamped);
}

SplineSpace1D SplineSpace1D::periodic(int degree, int num_ctrl) {
  return SplineSpace1D(degree, num_ctrl, KnotKind::periodic);
}

std::vector<double> SplineSpace1D::breakpoints() const {
  std::vector<double> out;
  const int n = num_intervals();
  out.reserve(n + 1);
  for (int k = 0; k <= n; ++k) out.push_back(knots_[degree_ + k]);
  return out;
}

double SplineSpace1D::reduce(double x) const {
  if (is_periodic()) {
    double r = std::fmod(x, two_pi);
    if (r < 0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
  }
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("parameter " + std::to_string(x) + " outside [0,1]");
  return x;
}

int SplineSpace1D::find_span(double x) const {
  const int lo = degree_, hi = degree_ + num_intervals() - 1;
  if (is_periodic()) {
    const double h = two_pi / num_ctrl_;
    return std::clamp(degree_ + static_cast<int>(std::floor(x / h)), lo, hi);
  }
  if (x >= knots_[hi + 1]) return hi;
  // Upper bound over the interior knots.
  const auto it = std::upper_bound(knots_.begin() + lo, knots_.begin() + hi + 1, x);
  return std::clamp(static_cast<int>(it - knots_.begin()) - 1, lo, hi);
}

Eigen::VectorXd BasisRow::dense() const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(num_ctrl);
  for (int l = 0; l < values.size(); ++l) out(index(l)) += values(l);
  return out;
}

std::vector<BasisRow> eval_basis_all(const SplineSpace1D& space, double x, int max_order) {
  if (max_order < 0 || max_order > space.degree())
    throw InvalidOrderError("derivative order " + std::to_string(max_order) + " exceeds degree " +
                            std::to_string(space.degree()));
  const double xr = space.reduce(x);
  const int span = space.find_span(xr);
  const Eigen::MatrixXd ders = detail::basis_derivatives<double>(space.knots(), span, xr, space.degree(), max_order);
  std::vector<BasisRow> rows(max_order + 1);
  for (int k = 0; k <= max_order; ++k) {
    rows[k].first = span - space.degree();
    rows[k].num_ctrl = space.num_ctrl();
    rows[k].values = ders.row(k).transpose();
  }
  return rows;
}

BasisRow eval_basis(const SplineSpace1D& space, double x, int deriv_order) {
  if (deriv_order < 0 || deriv_order > space.degree())
    throw InvalidOrderError("derivative order " + std::to_string(deriv_order) + " exceeds degree " +
                            std::to_string(space.degree()));
  return eval_basis_all(space, x, deriv_order).back();
}

Eigen::VectorXd greville_abscissas(const SplineSpace1D& space) {
  const int n = space.degree(), N = space.num_ctrl();
  Eigen::VectorXd xi(N);
  const auto& t = space.knots();
  for (int b = 0; b < N; ++b) {
    if (n == 0) {
      xi(b) = 0.5 * (t[b] + t[b + 1]);
      continue;
    }
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += t[b + k];
    xi(b) = s / n;
  }
  return xi;
}

// ---------------------------------------------------------------------------

SplineCurve::SplineCurve(SplineSpace1D space, Eigen::MatrixXd controls)
    : space_(std::move(space)), controls_(std::move(controls)) {
  if (!space_.is_periodic()) throw InvalidParameterError("closed curves need a periodic space");
  if (controls_.rows() != space_.num_ctrl())
    throw ShapeError("curve controls have " + std::to_string(controls_.rows()) + " rows, space has " +
                     std::to_string(space_.num_ctrl()));
}

Eigen::RowVectorXd SplineCurve::eval(double theta, int order) const {
  const BasisRow row = eval_basis(space_, theta, order);
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(dim());
  for (int l = 0; l < row.values.size(); ++l) out += row.values(l) * controls_.row(row.index(l));
  return out;
}

Eigen::MatrixXd SplineCurve::eval(std::span<const double> thetas, int order) const {
  Eigen::MatrixXd out(thetas.size(), dim());
  for (std::size_t k = 0; k < thetas.size(); ++k) out.row(k) = eval(thetas[k], order);
  return out;
}

double SplineCurve::min_speed(int samples) const {
  double m = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) m = std::min(m, eval(two_pi * k / samples, 1).norm());
  return m;
}

// ---------------------------------------------------------------------------

SplinePath::SplinePath(SplineSpace1D time_space, SplineSpace1D curve_space, Eigen::MatrixXd controls)
    : time_space_(std::move(time_space)), curve_space_(std::move(curve_space)), controls_(std::move(controls)) {
  if (time_space_.is_periodic()) throw InvalidParameterError("path time space must be clamped");
  if (!curve_space_.is_periodic()) throw InvalidParameterError("path curve space must be periodic");
  if (controls_.rows() != static_cast<Eigen::Index>(num_time()) * num_space())
    throw ShapeError("path controls must have N_t * N_theta rows");
}

Eigen::RowVectorXd SplinePath::eval(double t, double theta, int dt_order, int dtheta_order) const {
  const BasisRow bt = eval_basis(time_space_, t, dt_order);
  const BasisRow bs = eval_basis(curve_space_, theta, dtheta_order);
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(dim());
  for (int a = 0; a < bt.values.size(); ++a)
    for (int b = 0; b < bs.values.size(); ++b)
      out += bt.values(a) * bs.values(b) * controls_.row(bt.index(a) * num_space() + bs.index(b));
  return out;
}

SplineCurve SplinePath::curve_at(double t, int dt_order) const {
  const BasisRow bt = eval_basis(time_space_, t, dt_order);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(num_space(), dim());
  for (int a = 0; a < bt.values.size(); ++a) c += bt.values(a) * ctrl_row(bt.index(a));
  return SplineCurve(curve_space_, std::move(c));
}

SplinePath SplinePath::linear(const SplineSpace1D& time_space, const SplineCurve& c0, const SplineCurve& c1) {
  if (!(c0.space() == c1.space()) || c0.dim() != c1.dim())
    throw ShapeError("linear path endpoints live in different spaces");
  const Eigen::VectorXd tau = greville_abscissas(time_space);
  const int Nt = time_space.num_ctrl(), Ns = c0.space().num_ctrl();
  Eigen::MatrixXd ctrl(static_cast<Eigen::Index>(Nt) * Ns, c0.dim());
  for (int i = 0; i < Nt; ++i) {
    ctrl.middleRows(i * Ns, Ns) = c0.controls() + tau(i) * (c1.controls() - c0.controls());
  }
  ctrl.bottomRows(Ns) = c1.controls();
  return SplinePath(time_space, c0.space(), std::move(ctrl));
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd collocation_matrix(const SplineSpace1D& space, std::span<const double> xs, int order) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(xs.size(), space.num_ctrl());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const BasisRow row = eval_basis(space, xs[k], order);
    for (int l = 0; l < row.values.size(); ++l) A(k, row.index(l)) += row.values(l);
  }
  return A;
}

namespace {

Eigen::MatrixXd least_squares_projector(const Eigen::MatrixXd& A) {
  if (A.rows() < A.cols())
    throw FitDegenerateError("fit needs at least " + std::to_string(A.cols()) + " samples, got " +
                             std::to_string(A.rows()));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= 1e-10 * s(0))
    throw FitDegenerateError("collocation matrix is rank deficient");
  return svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
}

}  // namespace

SplineCurve fit_curve(std::span<const double> thetas, const Eigen::MatrixXd& points, const SplineSpace1D& space) {
  if (!space.is_periodic()) throw InvalidParameterError("fit_curve needs a periodic space");
  if (points.rows() != static_cast<Eigen::Index>(thetas.size()))
    throw ShapeError("fit_curve: theta count differs from point count");
  const Eigen::MatrixXd P = least_squares_projector(collocation_matrix(space, thetas));
  return SplineCurve(space, P * points);
}

CurveFitter::CurveFitter(const SplineSpace1D& space, std::vector<double> thetas)
    : space_(space), thetas_(std::move(thetas)) {
  projector_ = least_squares_projector(collocation_matrix(space_, thetas_));
}

SplineCurve CurveFitter::fit(const Eigen::MatrixXd& points) const {
  if (points.rows() != projector_.cols()) throw ShapeError("CurveFitter: wrong number of samples");
  return SplineCurve(space_, projector_ * points);
}

Eigen::VectorXd fit_scalar(const SplineSpace1D& space, const std::function<double(double)>& f,
                           int samples_per_interval) {
  const auto br = space.breakpoints();
  std::vector<double> xs;
  for (std::size_t k = 0; k + 1 < br.size(); ++k)
    for (int s = 0; s < samples_per_interval; ++s)
      xs.push_back(br[k] + (br[k + 1] - br[k]) * (s + 0.5) / samples_per_interval);
  if (!space.is_periodic()) {
    xs.push_back(space.domain_begin());
    xs.push_back(space.domain_end());
  }
  const Eigen::MatrixXd A = collocation_matrix(space, xs);
  Eigen::VectorXd y(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) y(k) = f(xs[k]);
  return least_squares_projector(A) * y;
}

}  // namespace h2c
