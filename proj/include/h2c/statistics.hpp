#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "h2c/bvp.hpp"
#include "h2c/ivp.hpp"
#include "h2c/metric.hpp"

namespace h2c {

/// Uniform rescaling about the origin that brings the average length to 2 pi.
/// Returns the factor applied.
double normalize_lengths(std::vector<SplineCurve>& curves, const CurveStencil& stencil);
double average_length(const std::vector<SplineCurve>& curves, const CurveStencil& stencil);

/// Settings shared by the population computations.
struct PopulationOptions {
  Mode mode = Mode::unparametrized;
  Discretization disc;
  SolverOptions solver;
  int threads = 0;  // 0: hardware concurrency
};

/// Directions tangent to the orbit of c under the group factored out by `mode`, as
/// flattened control columns: c' X for X in the reparametrization spline space of
/// `disc`, and in shape mode also the two translations and the rotation generator.
Eigen::MatrixXd vertical_directions(const SplineCurve& c, Mode mode, const Discretization& disc);

/// G_c-orthogonal projection of v onto the complement of the vertical directions.
SplineCurve horizontal_part(const MetricParams& params, const SplineCurve& c, const SplineCurve& v, Mode mode,
                            const Discretization& disc);

/// F(c) = (1/n) sum_j dist(c, c_j)^2 and its Riemannian gradient -(2/n) sum_j Log_c c_j
/// (horizontal part in the quotient modes).
struct MeanObjective {
  double value = 0.0;
  SplineCurve gradient;
  double grad_norm = 0.0;  // in G_c
  std::vector<GeodesicResult> geodesics;
};

/// Evaluates F at c; `warm` (optional, one per curve) seeds the boundary-value solves.
/// Throws MeanIterationError naming the curve whose solve failed.
MeanObjective mean_objective(const MetricParams& params, const SplineCurve& c, const std::vector<SplineCurve>& curves,
                             const PopulationOptions& opts, const std::vector<GeodesicResult>* warm = nullptr,
                             bool with_gradient = true, int iteration = 0);

enum class MeanMethod { gradient_descent, conjugate_gradient };

struct MeanOptions {
  MeanMethod method = MeanMethod::gradient_descent;
  double grad_tol = 1e-3;  // on the G-norm of the gradient
  int max_iter = 100;
  double armijo = 1e-4;
  int max_halvings = 20;
  int cg_restart = 10;
};

struct MeanResult {
  SplineCurve mean;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;
  double grad_norm = 0.0;
  std::vector<double> history;  // F after each accepted step, starting at the initial guess
  std::vector<GeodesicResult> geodesics;  // from the mean to every curve
  std::string message;
};

/// Karcher mean by Riemannian gradient descent with Armijo step halving (or nonlinear
/// conjugate gradients with periodic restarts), starting from the first curve.
/// Steps are taken along the controls: c <- c - s grad.
MeanResult karcher_mean(const MetricParams& params, const std::vector<SplineCurve>& curves,
                        const PopulationOptions& opts = {}, const MeanOptions& mean_opts = {});

/// Log maps v_j = Log_mean c_j, their centered versions and the Gram matrix of
/// the centered tangents in G_mean.
struct TangentDataset {
  SplineCurve base;
  std::vector<SplineCurve> vectors;
  std::vector<SplineCurve> centered;
  Eigen::MatrixXd gram;
};

TangentDataset tangent_dataset(const MetricParams& params, const SplineCurve& mean, const std::vector<SplineCurve>& curves,
                               const PopulationOptions& opts = {}, const std::vector<GeodesicResult>* warm = nullptr);

/// Builds the dataset from given tangents at `base` (no solves).
TangentDataset tangents_at(const MetricParams& params, const SplineCurve& base, std::vector<SplineCurve> vectors,
                           int m_theta = 5);

struct PcaResult {
  Eigen::VectorXd eigenvalues;  // nonincreasing, variance per mode (Gram eigenvalues / n)
  std::vector<SplineCurve> modes;  // G-orthonormal tangents at the base
  Eigen::VectorXd explained;  // cumulative variance ratios of the returned modes
  int rank = 0;
  bool truncated = false;  // fewer modes than requested were available

  double sigma(int i) const { return std::sqrt(std::max(0.0, eigenvalues(i))); }
};

/// Principal components of a tangent dataset from the eigendecomposition of its Gram matrix.
/// k <= 0 asks for all modes of positive variance.
PcaResult pca(const TangentDataset& data, int k = 0);

/// Discrete geodesics from the mean along +-multiple * sigma_i * mode_i.
std::pair<DiscretePath, DiscretePath> mode_geodesics(const MetricParams& params, const SplineCurve& mean,
                                                     const PcaResult& result, int i, double multiple = 3.0,
                                                     int steps = 20);

struct DistanceMatrix {
  Eigen::MatrixXd distance;   // mirrored from the upper triangle
  Eigen::MatrixXd rho_h2;     // per-pair share of the second-order energy
  Eigen::MatrixXi failed;     // 1 where the solve threw or did not converge
  std::optional<Eigen::MatrixXd> backward;  // audit: distances of the reversed problems (lower triangle)
  double rho_mean = 0.0;
  double rho_std = 0.0;
  double max_asymmetry = 0.0;  // audit: max |d_ij - d_ji| / max(d_ij, d_ji)
  std::vector<std::string> messages;
};

/// All pairwise distances; with `audit` each pair is also solved in reverse.
DistanceMatrix distance_matrix(const MetricParams& params, const std::vector<SplineCurve>& curves,
                               const PopulationOptions& opts = {}, bool audit = false);

}  // namespace h2c
