#include "h2c/statistics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "h2c/diffeo.hpp"
#include "h2c/parallel.hpp"

namespace h2c {

namespace {

constexpr int kStencilPoints = 5;

void check_population(const std::vector<SplineCurve>& curves) {
  if (curves.empty()) throw InvalidParameterError("the population is empty");
  for (const auto& c : curves)
    if (!(c.space() == curves.front().space()) || c.dim() != curves.front().dim())
      throw ShapeError("population curves must share one curve space and dimension");
}

double g_inner(const MetricParams& params, const SplineCurve& base, const SplineCurve& h, const SplineCurve& k,
               const CurveStencil& st) {
  return inner_product(params, base, h, k, st);
}

// Metric matrix of G_c on flattened controls: Q(c, w) = w^T G w.
Eigen::MatrixXd metric_matrix(const MetricParams& params, const SplineCurve& c, const CurveStencil& st) {
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(c.space().num_ctrl(), c.dim());
  const Eigen::MatrixXd h = slice_form(params, st, c.controls(), zero, DerivativeLevel::hessian).hessian;
  const Eigen::Index n = zero.size();
  return 0.5 * h.bottomRightCorner(n, n);
}

}  // namespace

Eigen::MatrixXd vertical_directions(const SplineCurve& c, Mode mode, const Discretization& disc) {
  if (mode == Mode::parametrized) return Eigen::MatrixXd(c.controls().size(), 0);
  const SplineSpace1D& space = c.space();
  const SplineSpace1D phi_space = SplineSpace1D::periodic(disc.phi_degree, disc.num_phi);
  const std::vector<double> nodes = refit_nodes(space, kStencilPoints);
  const CurveFitter fitter(space, nodes);
  const Eigen::MatrixXd D = collocation_matrix(phi_space, nodes);
  const Eigen::MatrixXd cp = c.eval(nodes, 1);
  const int extra = mode == Mode::shape ? 3 : 0;
  Eigen::MatrixXd V(c.controls().size(), D.cols() + extra);
  for (Eigen::Index i = 0; i < D.cols(); ++i)
    V.col(i) = flatten(fitter.fit(cp.array().colwise() * D.col(i).array()).controls());
  if (mode == Mode::shape) {
    const Eigen::Index N = space.num_ctrl();
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(N, 2);
    e.col(0).setOnes();
    V.col(D.cols()) = flatten(e);
    e.col(0).setZero();
    e.col(1).setOnes();
    V.col(D.cols() + 1) = flatten(e);
    Eigen::MatrixXd rot(N, 2);
    rot.col(0) = -c.controls().col(1);
    rot.col(1) = c.controls().col(0);
    V.col(D.cols() + 2) = flatten(rot);
  }
  return V;
}

SplineCurve horizontal_part(const MetricParams& params, const SplineCurve& c, const SplineCurve& v, Mode mode,
                            const Discretization& disc) {
  if (mode == Mode::parametrized) return v;
  const CurveStencil st(c.space(), kStencilPoints);
  const Eigen::MatrixXd G = metric_matrix(params, c, st);
  const Eigen::MatrixXd V = vertical_directions(c, mode, disc);
  const Eigen::MatrixXd GV = G * V;
  // Pseudo-inverse of the (possibly near-singular) Gram matrix of the vertical directions.
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(V.transpose() * GV);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cut = 1e-12 * ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cut) inv(i) = 1.0 / ev(i);
  const Eigen::VectorXd x = flatten(v.controls());
  const Eigen::VectorXd coef = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose() * (GV.transpose() * x);
  return SplineCurve(c.space(), unflatten(x - V * coef, c.dim()));
}

double average_length(const std::vector<SplineCurve>& curves, const CurveStencil& stencil) {
  if (curves.empty()) throw InvalidParameterError("the population is empty");
  double sum = 0.0;
  for (const auto& c : curves) sum += curve_length(c, stencil);
  return sum / static_cast<double>(curves.size());
}

double normalize_lengths(std::vector<SplineCurve>& curves, const CurveStencil& stencil) {
  const double factor = two_pi / average_length(curves, stencil);
  for (auto& c : curves) c = SplineCurve(c.space(), factor * c.controls());
  return factor;
}

MeanObjective mean_objective(const MetricParams& params, const SplineCurve& c, const std::vector<SplineCurve>& curves,
                             const PopulationOptions& opts, const std::vector<GeodesicResult>* warm,
                             bool with_gradient, int iteration) {
  check_population(curves);
  const int n = static_cast<int>(curves.size());
  if (warm && static_cast<int>(warm->size()) != n) throw ShapeError("one warm start per curve is required");
  MeanObjective out;
  out.geodesics.resize(n);
  parallel_for(
      n,
      [&](int j) {
        try {
          const GeodesicResult* init = warm ? &(*warm)[j] : nullptr;
          out.geodesics[j] = solve(opts.mode, params, c, curves[j], opts.disc, opts.solver, init);
        } catch (const Error& e) {
          throw MeanIterationError("geodesic to curve " + std::to_string(j) + " failed: " + e.what(), j, iteration);
        }
        if (!out.geodesics[j].converged)
          throw MeanIterationError("geodesic to curve " + std::to_string(j) + " did not converge: " +
                                       out.geodesics[j].message,
                                   j, iteration);
      },
      opts.threads);
  for (const auto& g : out.geodesics) out.value += g.energy.total;
  out.value /= n;
  if (with_gradient) {
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(c.space().num_ctrl(), c.dim());
    for (const auto& g : out.geodesics) grad -= log_map(g).controls();
    // On the quotient the gradient is horizontal; vertical parts only move the
    // mean along its own orbit.
    out.gradient = horizontal_part(params, c, SplineCurve(c.space(), (2.0 / n) * grad), opts.mode, opts.disc);
    const CurveStencil st(c.space(), kStencilPoints);
    out.grad_norm = std::sqrt(std::max(0.0, g_inner(params, c, out.gradient, out.gradient, st)));
  }
  return out;
}

MeanResult karcher_mean(const MetricParams& params, const std::vector<SplineCurve>& curves,
                        const PopulationOptions& opts, const MeanOptions& mean_opts) {
  params.validate();
  check_population(curves);
  MeanResult res;
  SplineCurve c = curves.front();
  MeanObjective cur = mean_objective(params, c, curves, opts, nullptr, true, 0);
  res.history.push_back(cur.value);
  Eigen::MatrixXd dir, prev_grad;
  int since_restart = 0;
  int it = 0;
  for (; it < mean_opts.max_iter; ++it) {
    if (cur.grad_norm < mean_opts.grad_tol) {
      res.converged = true;
      break;
    }
    const CurveStencil st(c.space(), kStencilPoints);
    const Eigen::MatrixXd& g = cur.gradient.controls();
    bool use_cg = mean_opts.method == MeanMethod::conjugate_gradient && it > 0 && since_restart < mean_opts.cg_restart;
    if (use_cg) {
      // Polak-Ribiere+, with inner products at the current base and no transport.
      const SplineCurve old(c.space(), prev_grad), diff(c.space(), g - prev_grad);
      const double denom = g_inner(params, c, old, old, st);
      const double beta = denom > 0.0 ? std::max(0.0, g_inner(params, c, cur.gradient, diff, st) / denom) : 0.0;
      dir = -g + beta * dir;
      if (g_inner(params, c, cur.gradient, SplineCurve(c.space(), dir), st) >= 0.0) use_cg = false;
    }
    if (!use_cg) {
      dir = -g;
      since_restart = 0;
    }
    ++since_restart;
    const double slope = g_inner(params, c, cur.gradient, SplineCurve(c.space(), dir), st);

    // Step 1/2 along -grad is exact for a flat metric.
    double s = 0.5;
    bool accepted = false;
    for (int h = 0; h <= mean_opts.max_halvings; ++h, s *= 0.5) {
      const SplineCurve trial(c.space(), c.controls() + s * dir);
      MeanObjective next;
      try {
        if (trial.min_speed(20 * trial.space().num_ctrl()) <= immersion_eps) continue;
        next = mean_objective(params, trial, curves, opts, &cur.geodesics, true, it + 1);
      } catch (const MeanIterationError&) {
        if (h == mean_opts.max_halvings) throw;
        continue;
      }
      if (next.value <= cur.value + mean_opts.armijo * s * slope) {
        prev_grad = g;
        c = trial;
        cur = std::move(next);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.message = "line search failed";
      break;
    }
    res.history.push_back(cur.value);
  }
  if (!res.converged && cur.grad_norm < mean_opts.grad_tol) res.converged = true;
  if (!res.converged && res.message.empty()) res.message = "maximum number of iterations reached";
  res.mean = c;
  res.iterations = static_cast<int>(res.history.size()) - 1;
  res.objective = cur.value;
  res.grad_norm = cur.grad_norm;
  res.geodesics = std::move(cur.geodesics);
  return res;
}

TangentDataset tangents_at(const MetricParams& params, const SplineCurve& base, std::vector<SplineCurve> vectors,
                           int m_theta) {
  if (vectors.empty()) throw InvalidParameterError("the tangent dataset is empty");
  for (const auto& v : vectors)
    if (!(v.space() == base.space()) || v.dim() != base.dim())
      throw ShapeError("tangents must live in the base curve's space");
  const int n = static_cast<int>(vectors.size());
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(base.space().num_ctrl(), base.dim());
  for (const auto& v : vectors) mean += v.controls();
  mean /= n;
  TangentDataset data;
  data.base = base;
  data.vectors = std::move(vectors);
  for (const auto& v : data.vectors) data.centered.emplace_back(base.space(), v.controls() - mean);
  const CurveStencil st(base.space(), m_theta);
  data.gram.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) data.gram(j, k) = data.gram(k, j) = g_inner(params, base, data.centered[j], data.centered[k], st);
  return data;
}

TangentDataset tangent_dataset(const MetricParams& params, const SplineCurve& mean, const std::vector<SplineCurve>& curves,
                               const PopulationOptions& opts, const std::vector<GeodesicResult>* warm) {
  const MeanObjective obj = mean_objective(params, mean, curves, opts, warm, false);
  std::vector<SplineCurve> logs;
  for (const auto& g : obj.geodesics) logs.push_back(log_map(g));
  return tangents_at(params, mean, std::move(logs), kStencilPoints);
}

PcaResult pca(const TangentDataset& data, int k) {
  const int n = static_cast<int>(data.gram.rows());
  if (n == 0) throw InvalidParameterError("the tangent dataset is empty");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(data.gram);
  if (es.info() != Eigen::Success) throw NotConvergedError("Gram eigendecomposition failed");
  // Ascending order from Eigen; reverse it.
  const Eigen::VectorXd mu = es.eigenvalues().reverse();
  const Eigen::MatrixXd U = es.eigenvectors().rowwise().reverse();
  const double trace = data.gram.trace();
  PcaResult out;
  out.rank = 0;
  for (int i = 0; i < n; ++i)
    if (mu(i) > 1e-10 * trace && mu(i) > 0.0) ++out.rank;
  if (k <= 0) k = out.rank;
  if (k > out.rank) {
    out.truncated = true;
    k = out.rank;
  }
  out.eigenvalues = mu.head(k) / n;
  out.explained.resize(k);
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    acc += mu(i);
    out.explained(i) = acc / trace;
  }
  const auto& space = data.base.space();
  for (int i = 0; i < k; ++i) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(space.num_ctrl(), data.base.dim());
    for (int j = 0; j < n; ++j) m += U(j, i) * data.centered[j].controls();
    out.modes.emplace_back(space, m / std::sqrt(mu(i)));
  }
  return out;
}

std::pair<DiscretePath, DiscretePath> mode_geodesics(const MetricParams& params, const SplineCurve& mean,
                                                     const PcaResult& result, int i, double multiple, int steps) {
  if (i < 0 || i >= static_cast<int>(result.modes.size())) throw InvalidParameterError("mode index out of range");
  const Eigen::MatrixXd v = multiple * result.sigma(i) * result.modes[i].controls();
  return {shoot(params, mean, SplineCurve(mean.space(), v), steps),
          shoot(params, mean, SplineCurve(mean.space(), -v), steps)};
}

DistanceMatrix distance_matrix(const MetricParams& params, const std::vector<SplineCurve>& curves,
                               const PopulationOptions& opts, bool audit) {
  params.validate();
  check_population(curves);
  const int n = static_cast<int>(curves.size());
  if (n < 2) throw InvalidParameterError("a distance matrix needs at least two curves");
  std::vector<std::pair<int, int>> tasks;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      tasks.emplace_back(i, j);
      if (audit) tasks.emplace_back(j, i);
    }
  struct Outcome {
    double distance = std::numeric_limits<double>::quiet_NaN();
    double rho = std::numeric_limits<double>::quiet_NaN();
    bool failed = true;
    std::string message;
  };
  std::vector<Outcome> results(tasks.size());
  parallel_for(
      static_cast<int>(tasks.size()),
      [&](int t) {
        const auto [i, j] = tasks[t];
        Outcome& o = results[t];
        try {
          const GeodesicResult r = solve(opts.mode, params, curves[i], curves[j], opts.disc, opts.solver);
          o.distance = r.distance;
          o.rho = r.energy.rho_h2();
          o.failed = !r.converged;
          if (o.failed) o.message = "pair (" + std::to_string(i) + ", " + std::to_string(j) + "): " + r.message;
        } catch (const Error& e) {
          o.message = "pair (" + std::to_string(i) + ", " + std::to_string(j) + "): " + e.what();
        }
      },
      opts.threads);

  DistanceMatrix out;
  out.distance = Eigen::MatrixXd::Zero(n, n);
  out.rho_h2 = Eigen::MatrixXd::Zero(n, n);
  out.failed = Eigen::MatrixXi::Zero(n, n);
  if (audit) out.backward = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto [i, j] = tasks[t];
    const Outcome& o = results[t];
    if (!o.message.empty()) out.messages.push_back(o.message);
    if (i < j) {
      out.distance(i, j) = out.distance(j, i) = o.distance;
      out.rho_h2(i, j) = out.rho_h2(j, i) = o.rho;
      out.failed(i, j) = out.failed(j, i) = std::max(out.failed(i, j), static_cast<int>(o.failed));
    } else {
      (*out.backward)(i, j) = o.distance;
      out.failed(i, j) = out.failed(j, i) = std::max(out.failed(i, j), static_cast<int>(o.failed));
    }
  }
  std::vector<double> rhos;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (std::isfinite(out.rho_h2(i, j))) rhos.push_back(out.rho_h2(i, j));
      if (audit) {
        const double f = out.distance(i, j), b = (*out.backward)(j, i);
        const double top = std::max(f, b);
        if (std::isfinite(f) && std::isfinite(b) && top > 0.0)
          out.max_asymmetry = std::max(out.max_asymmetry, std::abs(f - b) / top);
      }
    }
  if (!rhos.empty()) {
    double s = 0.0, s2 = 0.0;
    for (double r : rhos) s += r;
    out.rho_mean = s / rhos.size();
    for (double r : rhos) s2 += (r - out.rho_mean) * (r - out.rho_mean);
    out.rho_std = std::sqrt(s2 / rhos.size());
  }
  return out;
}

}  // namespace h2c
