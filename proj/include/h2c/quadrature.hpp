#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "h2c/splines.hpp"

namespace h2c {

/// Gauss-Legendre nodes and weights on [-1,1], computed by Newton iteration on
/// the Legendre polynomial P_m.
template <typename Scalar = double>
std::pair<std::vector<Scalar>, std::vector<Scalar>> gauss_legendre(int m) {
  using std::abs;
  using std::cos;
  std::vector<Scalar> x(m), w(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    Scalar z = cos(Scalar(std::numbers::pi) * (Scalar(i) + Scalar(0.75)) / (Scalar(m) + Scalar(0.5)));
    Scalar dp(0);
    for (int it = 0; it < 100; ++it) {
      Scalar p0(1), p1(0);
      for (int k = 1; k <= m; ++k) {
        const Scalar p2 = p1;
        p1 = p0;
        p0 = ((Scalar(2 * k - 1)) * z * p1 - Scalar(k - 1) * p2) / Scalar(k);
      }
      dp = Scalar(m) * (z * p0 - p1) / (z * z - Scalar(1));
      const Scalar dz = p0 / dp;
      z -= dz;
      if (abs(dz) < Scalar(1e-15)) break;
    }
    // Recompute the derivative at the converged node for the weight.
    Scalar p0(1), p1(0);
    for (int k = 1; k <= m; ++k) {
      const Scalar p2 = p1;
      p1 = p0;
      p0 = ((Scalar(2 * k - 1)) * z * p1 - Scalar(k - 1) * p2) / Scalar(k);
    }
    dp = Scalar(m) * (z * p0 - p1) / (z * z - Scalar(1));
    x[i] = -z;
    x[m - 1 - i] = z;
    w[i] = w[m - 1 - i] = Scalar(2) / ((Scalar(1) - z * z) * dp * dp);
  }
  if (m % 2 == 1) x[m / 2] = Scalar(0);
  return {x, w};
}

/// Composite Gauss-Legendre rule: m points on each interval between breakpoints.
class QuadratureRule {
 public:
  QuadratureRule() = default;
  QuadratureRule(std::span<const double> breakpoints, int m);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  int points_per_interval() const { return m_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  double domain_begin() const { return begin_; }
  double domain_end() const { return end_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  int m_ = 0;
  double begin_ = 0.0;
  double end_ = 0.0;
};

/// Rule with m Gauss points per knot interval of `space`.
QuadratureRule build_rule(const SplineSpace1D& space, int m);

/// Sum of weights * values, left to right.
double integrate(const QuadratureRule& rule, std::span<const double> values);

template <typename Derived>
double integrate(const QuadratureRule& rule, const Eigen::DenseBase<Derived>& values) {
  const Eigen::VectorXd v = values;
  return integrate(rule, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

}  // namespace h2c
