#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "h2c/errors.hpp"

namespace h2c {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class KnotKind { clamped, periodic };

namespace detail {

// Cox-de Boor recursion for all nonzero basis functions and their derivatives up
// to `nder` at `x`, where knots[span] <= x < knots[span + 1]. Row k of the result
// holds the k-th derivatives of basis functions span-degree .. span.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> basis_derivatives(std::span<const double> knots, int span,
                                                                        Scalar x, int degree, int nder) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int p = degree;
  Matrix ndu(p + 1, p + 1);
  std::vector<Scalar> left(p + 1), right(p + 1);
  ndu(0, 0) = Scalar(1);
  for (int j = 1; j <= p; ++j) {
    left[j] = x - Scalar(knots[span + 1 - j]);
    right[j] = Scalar(knots[span + j]) - x;
    Scalar saved(0);
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const Scalar temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }

  Matrix ders = Matrix::Zero(nder + 1, p + 1);
  for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);

  Matrix a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = Scalar(1);
    for (int k = 1; k <= nder; ++k) {
      Scalar d(0);
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }
  Scalar factor(p);
  for (int k = 1; k <= nder; ++k) {
    ders.row(k) *= factor;
    factor *= Scalar(p - k);
  }
  return ders;
}

}  // namespace detail

/// One-dimensional spline space with uniform simple interior knots.
///
/// Clamped spaces live on [0,1] with boundary knots of multiplicity degree+1, so
/// num_ctrl - degree uniform intervals. Periodic spaces live on [0,2pi) with
/// num_ctrl intervals of width 2pi/num_ctrl; basis function b is supported on
/// [(b-degree)h, (b+1)h] and wraps modulo 2pi.
class SplineSpace1D {
 public:
  SplineSpace1D() = default;

  static SplineSpace1D clamped(int degree, int num_ctrl);
  static SplineSpace1D periodic(int degree, int num_ctrl);

  int degree() const { return degree_; }
  int num_ctrl() const { return num_ctrl_; }
  KnotKind kind() const { return kind_; }
  bool is_periodic() const { return kind_ == KnotKind::periodic; }

  // Full knot vector; for periodic spaces the extended vector (j - degree) h,
  // j = 0 .. num_ctrl + 2 degree.
  const std::vector<double>& knots() const { return knots_; }

  double domain_begin() const { return 0.0; }
  double domain_end() const { return is_periodic() ? two_pi : 1.0; }
  int num_intervals() const { return is_periodic() ? num_ctrl_ : num_ctrl_ - degree_; }
  // Distinct knots bounding the intervals of the domain, size num_intervals()+1.
  std::vector<double> breakpoints() const;

  // Knot span index for x (x already reduced into the domain).
  int find_span(double x) const;
  // Reduce x into [0, 2pi) for periodic spaces; range-checks clamped spaces.
  double reduce(double x) const;

  friend bool operator==(const SplineSpace1D& a, const SplineSpace1D& b) {
    return a.degree_ == b.degree_ && a.num_ctrl_ == b.num_ctrl_ && a.kind_ == b.kind_;
  }

 private:
  SplineSpace1D(int degree, int num_ctrl, KnotKind kind);

  int degree_ = 0;
  int num_ctrl_ = 0;
  KnotKind kind_ = KnotKind::clamped;
  std::vector<double> knots_;
};

/// Nonzero basis values at a point: entries l = 0..degree belong to basis
/// function first + l. For periodic spaces `first + l` may exceed num_ctrl - 1;
/// index() wraps it.
struct BasisRow {
  int first = 0;
  int num_ctrl = 0;
  Eigen::VectorXd values;

  int index(int l) const { return (first + l) % num_ctrl; }
  // Number of periods the unwrapped index first + l lies beyond the first.
  int wraps(int l) const { return (first + l) / num_ctrl; }
  Eigen::VectorXd dense() const;
};

/// Values (deriv_order = 0) or derivatives of all basis functions nonzero at x.
BasisRow eval_basis(const SplineSpace1D& space, double x, int deriv_order = 0);

/// Basis rows for orders 0..max_order at once; element k is order k.
std::vector<BasisRow> eval_basis_all(const SplineSpace1D& space, double x, int max_order);

/// Scalar-generic evaluation of sum_b coeffs(b, :) * B_b^{(order)}(x).
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, 1, Eigen::Dynamic> eval_spline(const SplineSpace1D& space,
                                                     const Eigen::MatrixBase<Derived>& coeffs, Scalar x,
                                                     int order) {
  if (order < 0 || order > space.degree())
    throw InvalidOrderError("derivative order exceeds spline degree");
  using std::floor;
  if (space.is_periodic()) x = x - Scalar(two_pi) * floor(x / Scalar(two_pi));
  const double xd = static_cast<double>(x);
  const int span = space.find_span(space.is_periodic() ? xd : space.reduce(xd));
  const auto ders = detail::basis_derivatives<Scalar>(space.knots(), span, x, space.degree(), order);
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> out = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>::Zero(coeffs.cols());
  const int first = span - space.degree();
  for (int l = 0; l <= space.degree(); ++l) {
    const int b = (first + l) % space.num_ctrl();
    out += ders(order, l) * coeffs.row(b).template cast<Scalar>();
  }
  return out;
}

/// Greville abscissas: control values of the identity function.
///
/// Periodic spaces return xi_b = (b + (1 - degree)/2) h, strictly increasing; the
/// identity is reproduced on [0,2pi) when wrapped indices carry +2pi.
Eigen::VectorXd greville_abscissas(const SplineSpace1D& space);

/// Closed curve theta -> sum_j controls.row(j) C_j(theta).
class SplineCurve {
 public:
  SplineCurve() = default;
  SplineCurve(SplineSpace1D space, Eigen::MatrixXd controls);

  const SplineSpace1D& space() const { return space_; }
  const Eigen::MatrixXd& controls() const { return controls_; }
  Eigen::MatrixXd& controls() { return controls_; }
  int dim() const { return static_cast<int>(controls_.cols()); }

  Eigen::RowVectorXd eval(double theta, int order = 0) const;
  // Points (or derivatives) at each theta, one row per sample.
  Eigen::MatrixXd eval(std::span<const double> thetas, int order = 0) const;

  // min |c'| over `samples` uniform parameters.
  double min_speed(int samples) const;
  bool is_immersed(int samples, double eps = 1e-8) const { return min_speed(samples) > eps; }

 private:
  SplineSpace1D space_;
  Eigen::MatrixXd controls_;
};

/// Tensor-product path of closed curves; controls row i * N_theta + j holds c_{i,j}.
class SplinePath {
 public:
  SplinePath() = default;
  SplinePath(SplineSpace1D time_space, SplineSpace1D curve_space, Eigen::MatrixXd controls);

  const SplineSpace1D& time_space() const { return time_space_; }
  const SplineSpace1D& curve_space() const { return curve_space_; }
  const Eigen::MatrixXd& controls() const { return controls_; }
  Eigen::MatrixXd& controls() { return controls_; }
  int dim() const { return static_cast<int>(controls_.cols()); }
  int num_time() const { return time_space_.num_ctrl(); }
  int num_space() const { return curve_space_.num_ctrl(); }

  auto ctrl_row(int i) { return controls_.middleRows(i * num_space(), num_space()); }
  auto ctrl_row(int i) const { return controls_.middleRows(i * num_space(), num_space()); }

  Eigen::RowVectorXd eval(double t, double theta, int dt_order = 0, int dtheta_order = 0) const;
  // The curve at time t (or its dt_order-th time derivative) in the curve space.
  SplineCurve curve_at(double t, int dt_order = 0) const;

  SplineCurve start() const { return SplineCurve(curve_space_, ctrl_row(0)); }
  SplineCurve end() const { return SplineCurve(curve_space_, ctrl_row(num_time() - 1)); }

  /// Path whose control rows blend c0 and c1 by the clamped Greville abscissas,
  /// which represents (1 - t) c0 + t c1 exactly.
  static SplinePath linear(const SplineSpace1D& time_space, const SplineCurve& c0, const SplineCurve& c1);

 private:
  SplineSpace1D time_space_;
  SplineSpace1D curve_space_;
  Eigen::MatrixXd controls_;
};

/// Least-squares fit of samples (thetas[k], points.row(k)) in a periodic space.
/// Throws FitDegenerateError when the collocation matrix is rank deficient.
SplineCurve fit_curve(std::span<const double> thetas, const Eigen::MatrixXd& points, const SplineSpace1D& space);

/// Collocation matrix (samples x num_ctrl) of a space at the given parameters.
Eigen::MatrixXd collocation_matrix(const SplineSpace1D& space, std::span<const double> xs, int order = 0);

/// Precomputed least-squares projector for a fixed set of sample parameters.
class CurveFitter {
 public:
  CurveFitter(const SplineSpace1D& space, std::vector<double> thetas);

  const SplineSpace1D& space() const { return space_; }
  const std::vector<double>& thetas() const { return thetas_; }
  // num_ctrl x samples; controls = projector() * samples.
  const Eigen::MatrixXd& projector() const { return projector_; }

  SplineCurve fit(const Eigen::MatrixXd& points) const;

 private:
  SplineSpace1D space_;
  std::vector<double> thetas_;
  Eigen::MatrixXd projector_;
};

/// Interpolate a scalar function of t in a clamped space by least squares at
/// dense samples; used to build separable paths.
Eigen::VectorXd fit_scalar(const SplineSpace1D& space, const std::function<double(double)>& f, int samples_per_interval = 8);

}  // namespace h2c
