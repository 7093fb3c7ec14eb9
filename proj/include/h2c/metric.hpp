#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <vector>

#include "h2c/integrand.hpp"
#include "h2c/quadrature.hpp"
#include "h2c/splines.hpp"

namespace h2c {

/// Coefficients of G_c(h,k) = int a0 <h,k> + a1 <D_s h, D_s k> + a2 <D_s^2 h, D_s^2 k> ds.
/// With scale_invariant set the weights become a0/l^3, a1/l, a2 l (l the curve length).
struct MetricParams {
  double a0 = 1.0;
  double a1 = 0.0;
  double a2 = 1.0 / 4096.0;
  bool scale_invariant = false;

  void validate() const;
};

struct EnergyReport {
  double total = 0.0;
  double e_l2 = 0.0;
  double e_h1 = 0.0;
  double e_h2 = 0.0;

  // Fraction carried by the second-order term, e_h2 / total (0 for a zero report).
  double rho_h2() const { return total > 0.0 ? e_h2 / total : 0.0; }
};

inline constexpr double immersion_eps = 1e-8;

/// Basis tables of one spline space at the nodes of a quadrature rule.
/// Node k touches basis functions first[k] + l (wrapped), l = 0..degree.
class BasisTable {
 public:
  BasisTable() = default;
  BasisTable(const SplineSpace1D& space, const QuadratureRule& rule, int max_order);

  int num_nodes() const { return static_cast<int>(first_.size()); }
  int width() const { return width_; }
  int num_ctrl() const { return num_ctrl_; }
  int index(int node, int l) const { return (first_[node] + l) % num_ctrl_; }
  double value(int order, int node, int l) const { return values_[order](node, l); }
  // Dense num_nodes x num_ctrl table of the given derivative order.
  Eigen::MatrixXd dense(int order) const;

 private:
  int width_ = 0;
  int num_ctrl_ = 0;
  std::vector<int> first_;
  std::vector<Eigen::MatrixXd> values_;
};

/// Spatial quadrature machinery for one curve space.
class CurveStencil {
 public:
  CurveStencil() = default;
  CurveStencil(const SplineSpace1D& space, int m_theta);
  CurveStencil(const SplineSpace1D& space, QuadratureRule rule);

  const SplineSpace1D& space() const { return space_; }
  const QuadratureRule& rule() const { return rule_; }
  const BasisTable& table() const { return table_; }

 private:
  SplineSpace1D space_;
  QuadratureRule rule_;
  BasisTable table_;
};

/// Quadrature and basis tables for a path space; independent of path controls.
class PathStencil {
 public:
  PathStencil() = default;
  PathStencil(const SplineSpace1D& time_space, const SplineSpace1D& curve_space, int m_t, int m_theta);

  const SplineSpace1D& time_space() const { return time_space_; }
  const SplineSpace1D& curve_space() const { return curve_.space(); }
  const QuadratureRule& time_rule() const { return time_rule_; }
  const BasisTable& time_table() const { return time_table_; }
  const CurveStencil& curve() const { return curve_; }

 private:
  SplineSpace1D time_space_;
  QuadratureRule time_rule_;
  BasisTable time_table_;
  CurveStencil curve_;
};

/// Value, gradient and Hessian of Q(x, w) = G_x(w, w) in the controls of the
/// footpoint x and the tangent w (both num_ctrl x d).
struct SliceDerivatives {
  EnergyReport value;
  Eigen::MatrixXd grad_x;
  Eigen::MatrixXd grad_w;
  // 2 N d square, ordering [x (j*d + r), w (j*d + r)]; empty unless requested.
  Eigen::MatrixXd hessian;
};

enum class DerivativeLevel { value, gradient, hessian };

/// Evaluates Q(x, w) on one curve; time_node is only used in error reports.
SliceDerivatives slice_form(const MetricParams& params, const CurveStencil& stencil, const Eigen::MatrixXd& x,
                            const Eigen::MatrixXd& w, DerivativeLevel level, int time_node = -1);

/// Symmetric Hessian of the path energy in block-banded storage.
///
/// Block (i, k), |i - k| <= time degree, couples control rows i and k and is a
/// dense (N_theta d) square; flat index (i * N_theta + j) * d + r.
class PathHessian {
 public:
  PathHessian(int num_time, int bandwidth, int block_size);

  int num_time() const { return num_time_; }
  int bandwidth() const { return bandwidth_; }
  int block_size() const { return block_size_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(num_time_) * block_size_; }

  Eigen::MatrixXd& block(int i, int k) { return blocks_[slot(i, k)]; }
  const Eigen::MatrixXd& block(int i, int k) const { return blocks_[slot(i, k)]; }
  bool in_band(int i, int k) const { return std::abs(i - k) <= bandwidth_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& h) const;
  Eigen::MatrixXd dense() const;
  // Sparse submatrix over control rows [row_begin, row_end).
  Eigen::SparseMatrix<double> sparse(int row_begin, int row_end) const;
  // Nonzeros of the same submatrix, shifted by `offset` in both indices.
  void append_triplets(int row_begin, int row_end, std::vector<Eigen::Triplet<double>>& out,
                       Eigen::Index offset = 0) const;

 private:
  int slot(int i, int k) const { return i * (2 * bandwidth_ + 1) + (k - i + bandwidth_); }

  int num_time_;
  int bandwidth_;
  int block_size_;
  std::vector<Eigen::MatrixXd> blocks_;
};

/// Flatten control matrices (rows x d) to vectors with index row * d + r, and back.
Eigen::VectorXd flatten(const Eigen::MatrixXd& controls);
Eigen::MatrixXd unflatten(const Eigen::VectorXd& v, int dim);

/// Quadrature approximation of G_c(h, k).
double inner_product(const MetricParams& params, const SplineCurve& c, const SplineCurve& h, const SplineCurve& k,
                     const CurveStencil& stencil);
double inner_product(const MetricParams& params, const SplineCurve& c, const SplineCurve& h, const SplineCurve& k,
                     const QuadratureRule& rule);

/// Discrete path energy with the L2 / H1 / H2 split.
EnergyReport energy(const MetricParams& params, const SplinePath& path, const PathStencil& stencil);

/// dE / dc_{i,j}, shaped like the path controls. Rows of the first and last time
/// controls are included; boundary-value solvers freeze them.
Eigen::MatrixXd energy_gradient(const MetricParams& params, const SplinePath& path, const PathStencil& stencil,
                                EnergyReport* report = nullptr);

/// Assembled Hessian (plus gradient and energy on request).
PathHessian energy_hessian(const MetricParams& params, const SplinePath& path, const PathStencil& stencil,
                           Eigen::MatrixXd* gradient = nullptr, EnergyReport* report = nullptr);

/// Matrix-free Hessian-vector product d2E(h, .), h shaped like the controls.
Eigen::MatrixXd energy_hessian_apply(const MetricParams& params, const SplinePath& path, const PathStencil& stencil,
                                     const Eigen::MatrixXd& h);

/// Length int |c'| dtheta by the stencil's rule.
double curve_length(const SplineCurve& c, const CurveStencil& stencil);
double curve_length(const SplineCurve& c, const QuadratureRule& rule);

}  // namespace h2c
