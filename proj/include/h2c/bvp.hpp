#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "h2c/diffeo.hpp"
#include "h2c/metric.hpp"
#include "h2c/splines.hpp"

namespace h2c {

enum class Mode { parametrized, unparametrized, shape };

const char* to_string(Mode mode);
Mode mode_from_string(const std::string& name);

/// Discretization of a geodesic problem beyond the curve space of the endpoints.
struct Discretization {
  int num_time = 20;    // time controls N_t
  int time_degree = 3;  // n_t
  int time_quad = 5;    // Gauss points per time interval
  int space_quad = 5;   // Gauss points per curve interval
  int num_phi = 20;     // reparametrization controls N_phi
  int phi_degree = 3;   // n_phi

  void validate() const;
};

struct SolverOptions {
  double grad_tol = 1e-6;  // on the gradient infinity norm, relative to 1 + E
  int max_iter = 500;
  // Log-barrier weight of the reparametrization constraints, relative to the
  // initial energy.
  double barrier = 1e-6;
  // Number of shifts tried when initializing the reparametrization (0: 4 N_phi).
  int shift_grid = 0;
  // Called after every accepted step with (iteration, objective, gradient norm, damping).
  std::function<void(int, double, double, double)> monitor;
};

/// x -> R_angle (x + translation) in the plane.
struct RigidMotion {
  double angle = 0.0;
  Eigen::Vector2d translation = Eigen::Vector2d::Zero();

  Eigen::Matrix2d rotation() const;
  // Applied row-wise to a k x 2 matrix of points or controls.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& points) const;
};

struct GeodesicResult {
  Mode mode = Mode::parametrized;
  SplinePath path;
  std::optional<DiffeoSpline> diffeo;
  std::optional<RigidMotion> motion;
  EnergyReport energy;
  double distance = 0.0;
  int iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;
  std::vector<double> history;  // objective after each accepted step
  std::string message;
};

/// Geodesic between parametrized curves: interior controls minimize the energy,
/// the first and last control rows are c0 and c1. `init` replaces the linear path.
GeodesicResult solve_parametrized(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                                  const Discretization& disc = {}, const SolverOptions& opts = {},
                                  const GeodesicResult* init = nullptr);

/// Geodesic modulo reparametrization: the path ends at the re-fit of c1 o phi,
/// optimized jointly over the interior controls and phi.
GeodesicResult solve_unparametrized(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                                    const Discretization& disc = {}, const SolverOptions& opts = {},
                                    const GeodesicResult* init = nullptr);

/// Geodesic modulo reparametrization, rotation and translation (planar curves):
/// the path ends at R_beta(refit(c1 o phi) + a).
GeodesicResult solve_shape(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                           const Discretization& disc = {}, const SolverOptions& opts = {},
                           const GeodesicResult* init = nullptr);

GeodesicResult solve(Mode mode, const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                     const Discretization& disc = {}, const SolverOptions& opts = {},
                     const GeodesicResult* init = nullptr);

/// Initial velocity d/dt c(0, .) of a converged geodesic, in the curve space.
SplineCurve log_map(const GeodesicResult& result);

/// Initial velocity of any path.
SplineCurve initial_velocity(const SplinePath& path);

namespace detail {

/// Objective of a boundary-value problem in its optimization variables: the
/// flattened interior control rows y and the group parameters q = (u, alpha,
/// [beta, a]) with f = Z u for an orthonormal basis Z of zero-sum vectors.
struct ReducedObjective {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

ReducedObjective reduced_objective(Mode mode, const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                                   const Discretization& disc, const Eigen::VectorXd& y, const Eigen::VectorXd& q,
                                   double barrier_weight = 0.0);

// Start values the solver would use.
void start_values(Mode mode, const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                  const Discretization& disc, Eigen::VectorXd& y, Eigen::VectorXd& q);

}  // namespace detail

}  // namespace h2c
