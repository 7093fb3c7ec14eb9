#include "h2c/bvp.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>

#include "h2c/quadrature.hpp"

namespace h2c {

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::parametrized: return "parametrized";
    case Mode::unparametrized: return "unparametrized";
    case Mode::shape: return "shape";
  }
  return "?";
}

Mode mode_from_string(const std::string& name) {
  if (name == "parametrized") return Mode::parametrized;
  if (name == "unparametrized") return Mode::unparametrized;
  if (name == "shape") return Mode::shape;
  throw InvalidParameterError("unknown mode '" + name + "' (parametrized, unparametrized, shape)");
}

void Discretization::validate() const {
  if (time_degree < 1) throw InvalidParameterError("time degree must be at least 1");
  if (num_time < time_degree + 2) throw InvalidParameterError("need at least time_degree + 2 time controls");
  if (time_quad < 1 || space_quad < 1) throw InvalidParameterError("quadrature orders must be positive");
  if (phi_degree < 1 || num_phi < phi_degree + 1)
    throw InvalidParameterError("reparametrization space needs degree >= 1 and more controls than its degree");
}

Eigen::Matrix2d RigidMotion::rotation() const {
  Eigen::Matrix2d R;
  const double c = std::cos(angle), s = std::sin(angle);
  R << c, -s, s, c;
  return R;
}

Eigen::MatrixXd RigidMotion::apply(const Eigen::MatrixXd& points) const {
  if (points.cols() != 2) throw ShapeError("rigid motions act on planar points");
  return (points.rowwise() + translation.transpose()) * rotation().transpose();
}

SplineCurve initial_velocity(const SplinePath& path) {
  const BasisRow b = eval_basis(path.time_space(), 0.0, 1);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(path.num_space(), path.dim());
  const auto ref = path.ctrl_row(b.index(0));
  for (int l = 1; l < static_cast<int>(b.values.size()); ++l) v += b.values(l) * (path.ctrl_row(b.index(l)) - ref);
  return SplineCurve(path.curve_space(), std::move(v));
}

SplineCurve log_map(const GeodesicResult& result) {
  if (!result.converged) throw NotConvergedError("log map of a non-converged geodesic: " + result.message);
  return initial_velocity(result.path);
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;

// Endpoint of the path as a function of the group parameters
// q = (u, alpha, [beta, a]) with f = Z u.
struct EndState {
  DiffeoSpline phi;
  RigidMotion motion;
  Eigen::MatrixXd refit;  // Y, the re-fit of c1 o phi
  Eigen::MatrixXd end;    // the last control row
};

class Problem {
 public:
  Problem(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1, const Discretization& disc,
          const SolverOptions& opts, Mode mode)
      : params_(params), c0_(c0), c1_(c1), disc_(disc), opts_(opts), mode_(mode) {
    params.validate();
    disc.validate();
    if (!(c0.space() == c1.space()) || c0.dim() != c1.dim())
      throw ShapeError("geodesic endpoints must share a curve space and dimension");
    if (mode == Mode::shape && c0.dim() != 2) throw InvalidParameterError("shape mode needs planar curves");
    ts_ = SplineSpace1D::clamped(disc.time_degree, disc.num_time);
    stencil_ = PathStencil(ts_, c0.space(), disc.time_quad, disc.space_quad);
    Nt_ = disc.num_time;
    Ns_ = c0.space().num_ctrl();
    d_ = c0.dim();
    bs_ = Ns_ * d_;
    ny_ = (Nt_ - 2) * bs_;
    if (mode != Mode::parametrized) {
      ps_ = SplineSpace1D::periodic(disc.phi_degree, disc.num_phi);
      nodes_ = stencil_.curve().rule().nodes();
      fitter_.emplace(c0.space(), nodes_);
      const int Np = disc.num_phi;
      const Eigen::MatrixXd D = collocation_matrix(ps_, nodes_);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Ones(Np, 1));
      Z_ = Eigen::MatrixXd(qr.householderQ()).rightCols(Np - 1);
      DZ1_.resize(D.rows(), Np);
      DZ1_.leftCols(Np - 1) = D * Z_;
      DZ1_.col(Np - 1).setOnes();
      nq_ = Np + (mode == Mode::shape ? 3 : 0);
    }
  }

  int ny() const { return ny_; }
  int nq() const { return nq_; }
  const PathStencil& stencil() const { return stencil_; }
  const SplineSpace1D& time_space() const { return ts_; }

  EndState endpoint(const Eigen::VectorXd& q) const {
    EndState s;
    if (mode_ == Mode::parametrized) {
      s.refit = s.end = c1_.controls();
      return s;
    }
    const int Np = disc_.num_phi;
    s.phi = DiffeoSpline(ps_, Z_ * q.head(Np - 1), q(Np - 1));
    s.refit = refit_composed(c1_, s.phi, *fitter_).controls();
    if (mode_ == Mode::shape) {
      s.motion.angle = q(Np);
      s.motion.translation = q.segment(Np + 1, 2);
      s.end = s.motion.apply(s.refit);
    } else {
      s.end = s.refit;
    }
    return s;
  }

  SplinePath make_path(const Eigen::VectorXd& y, const EndState& e) const {
    Eigen::MatrixXd ctrl(static_cast<Eigen::Index>(Nt_) * Ns_, d_);
    ctrl.topRows(Ns_) = c0_.controls();
    if (ny_ > 0) ctrl.middleRows(Ns_, (Nt_ - 2) * Ns_) = unflatten(y, d_);
    ctrl.bottomRows(Ns_) = e.end;
    return SplinePath(ts_, c0_.space(), std::move(ctrl));
  }

  // Barrier on the reparametrization slacks: value, gradient and Hessian in u.
  // Returns +inf when a slack is not positive.
  double barrier(const EndState& e, double mu, Eigen::VectorXd* grad, Eigen::MatrixXd* hess) const {
    if (mode_ == Mode::parametrized) return 0.0;
    const int Np = disc_.num_phi;
    const Eigen::VectorXd s = e.phi.slack().array() - e.phi.margin();
    if ((s.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
    if (mu == 0.0) {
      if (grad) grad->setZero(Np - 1);
      if (hess) hess->setZero(Np - 1, Np - 1);
      return 0.0;
    }
    double v = 0.0;
    Eigen::VectorXd gf = Eigen::VectorXd::Zero(Np);
    Eigen::MatrixXd hf = Eigen::MatrixXd::Zero(Np, Np);
    for (int i = 0; i < Np; ++i) {
      const int prev = (i + Np - 1) % Np;
      v -= mu * std::log(s(i));
      // ds_i/df = e_i - e_prev
      gf(prev) += mu / s(i);
      gf(i) -= mu / s(i);
      const double c = mu / (s(i) * s(i));
      hf(i, i) += c;
      hf(prev, prev) += c;
      hf(i, prev) -= c;
      hf(prev, i) -= c;
    }
    if (grad) *grad = Z_.transpose() * gf;
    if (hess) *hess = Z_.transpose() * hf * Z_;
    return v;
  }

  // Jacobian of the flattened endpoint (bs x nq) and the contraction
  // sum_e G_e d2e/dq2 for the endpoint gradient G (Ns x d).
  void endpoint_derivatives(const EndState& e, const Eigen::MatrixXd& G, Eigen::MatrixXd& J,
                            Eigen::MatrixXd& second) const {
    const int Np = disc_.num_phi, M = static_cast<int>(nodes_.size());
    const Eigen::MatrixXd& P = fitter_->projector();
    Eigen::MatrixXd C1p(M, d_), C1pp(M, d_);
    for (int k = 0; k < M; ++k) {
      const double t = e.phi.eval(nodes_[k]);
      C1p.row(k) = c1_.eval(t, 1);
      C1pp.row(k) = c1_.eval(t, 2);
    }
    const bool shape = mode_ == Mode::shape;
    const Eigen::Matrix2d R = shape ? e.motion.rotation() : Eigen::Matrix2d::Identity();
    Eigen::Matrix2d Rp;
    Rp << -R(1, 0), -R(0, 0), R(0, 0), -R(1, 0);  // dR/dbeta
    J.setZero(bs_, nq_);
    second.setZero(nq_, nq_);
    std::vector<Eigen::MatrixXd> dY(Np);
    for (int j = 0; j < Np; ++j) {
      dY[j] = P * (DZ1_.col(j).asDiagonal() * C1p);
      J.col(j) = flatten(shape ? Eigen::MatrixXd(dY[j] * R.transpose()) : dY[j]);
    }
    // Gradient with respect to Y + a.
    const Eigen::MatrixXd Gy = shape ? Eigen::MatrixXd(G * R) : G;
    const Eigen::MatrixXd T = P.transpose() * Gy;
    const Eigen::VectorXd w = (T.array() * C1pp.array()).rowwise().sum();
    second.topLeftCorner(Np, Np) = DZ1_.transpose() * w.asDiagonal() * DZ1_;
    if (!shape) return;
    const Eigen::MatrixXd Ya = e.refit.rowwise() + e.motion.translation.transpose();
    J.col(Np) = flatten(Ya * Rp.transpose());
    for (int r = 0; r < 2; ++r) {
      Eigen::MatrixXd col(Ns_, 2);
      col.rowwise() = R.col(r).transpose();
      J.col(Np + 1 + r) = flatten(col);
    }
    const Eigen::MatrixXd GRp = G * Rp;
    for (int j = 0; j < Np; ++j) second(Np, j) = second(j, Np) = (GRp.array() * dY[j].array()).sum();
    second(Np, Np) = -(G.array() * e.end.array()).sum();
    const Eigen::RowVector2d gsum = G.colwise().sum();
    for (int r = 0; r < 2; ++r) second(Np, Np + 1 + r) = second(Np + 1 + r, Np) = gsum.dot(Rp.col(r));
  }

  // Value only; +inf for points outside the domain (non-immersed or infeasible).
  double merit(const Eigen::VectorXd& y, const Eigen::VectorXd& q, double mu, EnergyReport* rep = nullptr) const {
    try {
      const EndState e = endpoint(q);
      const double b = barrier(e, mu, nullptr, nullptr);
      if (!std::isfinite(b)) return b;
      const EnergyReport r = energy(params_, make_path(y, e), stencil_);
      if (rep) *rep = r;
      return r.total + b;
    } catch (const NotImmersedError&) {
      return std::numeric_limits<double>::infinity();
    }
  }

  struct Model {
    double value = 0.0;
    EnergyReport report;
    Eigen::VectorXd grad;
    SpMat hess;
  };

  Model model(const Eigen::VectorXd& y, const Eigen::VectorXd& q, double mu) const {
    Model m;
    const EndState e = endpoint(q);
    const SplinePath path = make_path(y, e);
    Eigen::MatrixXd G;
    const PathHessian H = energy_hessian(params_, path, stencil_, &G, &m.report);
    const int n = ny_ + nq_, L = Nt_ - 1;
    m.grad.resize(n);
    if (ny_ > 0) m.grad.head(ny_) = flatten(G.middleRows(Ns_, (Nt_ - 2) * Ns_));
    std::vector<Eigen::Triplet<double>> trip;
    H.append_triplets(1, Nt_ - 1, trip, 0);
    for (int k = 0; k < n; ++k) trip.emplace_back(k, k, 0.0);
    m.value = m.report.total;
    if (nq_ > 0) {
      const Eigen::MatrixXd GL = G.bottomRows(Ns_);
      Eigen::MatrixXd J, second;
      endpoint_derivatives(e, GL, J, second);
      Eigen::VectorXd bg;
      Eigen::MatrixXd bh;
      m.value += barrier(e, mu, &bg, &bh);
      Eigen::VectorXd gq = J.transpose() * flatten(GL);
      gq.head(disc_.num_phi - 1) += bg;
      m.grad.tail(nq_) = gq;
      Eigen::MatrixXd Hqq = J.transpose() * H.block(L, L) * J + second;
      Hqq.topLeftCorner(disc_.num_phi - 1, disc_.num_phi - 1) += bh;
      for (int i = std::max(1, L - H.bandwidth()); i < L; ++i) {
        const Eigen::MatrixXd C = H.block(i, L) * J;
        const Eigen::Index r0 = static_cast<Eigen::Index>(i - 1) * bs_;
        for (int c = 0; c < nq_; ++c)
          for (int r = 0; r < bs_; ++r)
            if (C(r, c) != 0.0) {
              trip.emplace_back(r0 + r, ny_ + c, C(r, c));
              trip.emplace_back(ny_ + c, r0 + r, C(r, c));
            }
      }
      for (int c = 0; c < nq_; ++c)
        for (int r = 0; r < nq_; ++r) trip.emplace_back(ny_ + r, ny_ + c, 0.5 * (Hqq(r, c) + Hqq(c, r)));
    }
    m.hess.resize(n, n);
    m.hess.setFromTriplets(trip.begin(), trip.end());
    return m;
  }

  // Start values: the interior of the linear path to the best endpoint over a grid
  // of shifts (with Procrustes alignment in shape mode).
  void default_start(Eigen::VectorXd& y, Eigen::VectorXd& q) const {
    q = Eigen::VectorXd::Zero(nq_);
    if (mode_ != Mode::parametrized) {
      const int Np = disc_.num_phi;
      const int K = opts_.shift_grid > 0 ? opts_.shift_grid : 4 * Np;
      double best = std::numeric_limits<double>::infinity();
      Eigen::VectorXd cand = Eigen::VectorXd::Zero(nq_);
      auto consider = [&](const DiffeoSpline& phi) {
        cand.setZero();
        cand.head(Np - 1) = Z_.transpose() * phi.f();
        cand(Np - 1) = phi.shift();
        if (mode_ == Mode::shape) align(endpoint(cand).refit, cand);
        const double v = linear_energy(cand);
        if (v < best) {
          best = v;
          q = cand;
        }
      };
      // Rigid shifts, then maps matching relative arc length with shifted origin.
      for (int k = 0; k < K; ++k) consider(DiffeoSpline(ps_, Eigen::VectorXd::Zero(Np), two_pi * k / K));
      for (int k = 0; k < K; ++k) consider(arclength_matching(c0_, c1_, static_cast<double>(k) / K, ps_));
    }
    y = linear_interior(endpoint(q).end);
  }

  Eigen::VectorXd linear_interior(const Eigen::MatrixXd& end) const {
    const SplinePath lin = SplinePath::linear(ts_, c0_, SplineCurve(c0_.space(), end));
    if (ny_ == 0) return Eigen::VectorXd(0);
    return flatten(lin.controls().middleRows(Ns_, (Nt_ - 2) * Ns_));
  }

  // Warm start from an earlier result whose first curve may differ from c0.
  bool warm_start(const GeodesicResult& init, Eigen::VectorXd& y, Eigen::VectorXd& q) const {
    const SplinePath& p = init.path;
    if (!(p.time_space() == ts_) || !(p.curve_space() == c0_.space()) || p.dim() != d_) return false;
    q = Eigen::VectorXd::Zero(nq_);
    if (mode_ != Mode::parametrized) {
      const int Np = disc_.num_phi;
      if (init.diffeo && init.diffeo->space() == ps_ && init.diffeo->is_admissible()) {
        q.head(Np - 1) = Z_.transpose() * init.diffeo->f();
        q(Np - 1) = init.diffeo->shift();
      }
      if (mode_ == Mode::shape && init.motion) {
        q(Np) = init.motion->angle;
        q.segment(Np + 1, 2) = init.motion->translation;
      }
    }
    if (ny_ == 0) {
      y.resize(0);
      return true;
    }
    const Eigen::VectorXd tau = greville_abscissas(ts_);
    const Eigen::MatrixXd dc0 = c0_.controls() - p.ctrl_row(0);
    const Eigen::MatrixXd dc1 = endpoint(q).end - p.ctrl_row(Nt_ - 1);
    Eigen::MatrixXd inner = p.controls().middleRows(Ns_, (Nt_ - 2) * Ns_);
    for (int i = 1; i < Nt_ - 1; ++i) inner.middleRows((i - 1) * Ns_, Ns_) += (1 - tau(i)) * dc0 + tau(i) * dc1;
    y = flatten(inner);
    return true;
  }

  GeodesicResult result(const Eigen::VectorXd& y, const Eigen::VectorXd& q) const {
    GeodesicResult r;
    r.mode = mode_;
    const EndState e = endpoint(q);
    r.path = make_path(y, e);
    if (mode_ != Mode::parametrized) r.diffeo = e.phi;
    if (mode_ == Mode::shape) r.motion = e.motion;
    r.energy = energy(params_, r.path, stencil_);
    r.distance = std::sqrt(std::max(0.0, r.energy.total));
    return r;
  }

 private:
  // Energy of the linear path to the endpoint at q (used only for start values).
  double linear_energy(const Eigen::VectorXd& q) const {
    try {
      const EndState e = endpoint(q);
      return energy(params_, SplinePath::linear(ts_, c0_, SplineCurve(c0_.space(), e.end)), stencil_).total;
    } catch (const NotImmersedError&) {
      return std::numeric_limits<double>::infinity();
    }
  }

  // Weighted Procrustes fit of R(Y + a) to c0 at the quadrature nodes; writes beta, a into q.
  void align(const Eigen::MatrixXd& Y, Eigen::VectorXd& q) const {
    const int Np = disc_.num_phi;
    const Eigen::MatrixXd T = stencil_.curve().table().dense(0);
    const auto& wv = stencil_.curve().rule().weights();
    const Eigen::Map<const Eigen::VectorXd> w(wv.data(), static_cast<Eigen::Index>(wv.size()));
    const Eigen::MatrixXd X0 = T * c0_.controls(), X1 = T * Y;
    const double wsum = w.sum();
    const Eigen::RowVector2d m0 = (w.transpose() * X0) / wsum, m1 = (w.transpose() * X1) / wsum;
    double sdot = 0.0, scross = 0.0;
    for (Eigen::Index k = 0; k < X0.rows(); ++k) {
      const Eigen::RowVector2d a = X1.row(k) - m1, b = X0.row(k) - m0;
      sdot += w(k) * (a(0) * b(0) + a(1) * b(1));
      scross += w(k) * (a(0) * b(1) - a(1) * b(0));
    }
    RigidMotion mo;
    mo.angle = std::atan2(scross, sdot);
    mo.translation = mo.rotation().transpose() * m0.transpose() - m1.transpose();
    q(Np) = mo.angle;
    q.segment(Np + 1, 2) = mo.translation;
  }

  MetricParams params_;
  SplineCurve c0_, c1_;
  Discretization disc_;
  SolverOptions opts_;
  Mode mode_;
  SplineSpace1D ts_, ps_;
  PathStencil stencil_;
  int Nt_ = 0, Ns_ = 0, d_ = 0, bs_ = 0, ny_ = 0, nq_ = 0;
  std::vector<double> nodes_;
  std::optional<CurveFitter> fitter_;
  Eigen::MatrixXd Z_, DZ1_;
};

GeodesicResult run(Mode mode, const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                   const Discretization& disc, const SolverOptions& opts, const GeodesicResult* init) {
  const Problem pb(params, c0, c1, disc, opts, mode);
  Eigen::VectorXd y, q;
  bool started = false;
  if (init && pb.warm_start(*init, y, q) && std::isfinite(pb.merit(y, q, 0.0))) started = true;
  if (!started) {
    pb.default_start(y, q);
    if (!std::isfinite(pb.merit(y, q, 0.0)))
      throw InitDegenerateError(
          "the linear initial path leaves the space of immersions; supply an initial path through waypoints");
  }
  EnergyReport rep;
  const double e_start = pb.merit(y, q, 0.0, &rep);
  const double mu = opts.barrier * e_start / std::max(1, disc.num_phi);

  const int n = pb.ny() + pb.nq();
  GeodesicResult out;
  auto m = pb.model(y, q, mu);
  double lambda = 0.0, nu = 2.0;
  int it = 0;
  bool converged = false;
  std::string message;
  Eigen::SimplicialLLT<SpMat> llt;
  // Marquardt scaling: damping proportional to the Hessian diagonal.
  SpMat D(n, n);
  auto update_scaling = [&] {
    double top = 0.0;
    for (int k = 0; k < n; ++k) top = std::max(top, std::abs(m.hess.coeff(k, k)));
    std::vector<Eigen::Triplet<double>> dt;
    for (int k = 0; k < n; ++k) dt.emplace_back(k, k, std::max(std::abs(m.hess.coeff(k, k)), 1e-10 * top + 1e-300));
    D.setFromTriplets(dt.begin(), dt.end());
  };
  update_scaling();
  std::vector<double> history{m.value};
  for (; it < opts.max_iter; ++it) {
    const double gnorm = n > 0 ? m.grad.lpNorm<Eigen::Infinity>() : 0.0;
    if (gnorm < opts.grad_tol * (1.0 + std::abs(m.report.total))) {
      converged = true;
      break;
    }
    // Damped Newton step; increase the damping until the step is accepted.
    bool accepted = false;
    while (!accepted) {
      if (lambda > 1e12) break;
      llt.compute(lambda > 0.0 ? SpMat(m.hess + lambda * D) : m.hess);
      if (llt.info() != Eigen::Success) {
        lambda = std::max(10.0 * lambda, 1e-8);
        continue;
      }
      const Eigen::VectorXd p = llt.solve(-m.grad);
      const double pred = -(m.grad.dot(p) + 0.5 * p.dot(m.hess * p));
      if (!(pred > 0.0)) {
        lambda = std::max(10.0 * lambda, 1e-8);
        continue;
      }
      const Eigen::VectorXd ny = y + p.head(pb.ny()), nq = q + p.tail(pb.nq());
      const double trial = pb.merit(ny, nq, mu);
      const double rho = std::isfinite(trial) ? (m.value - trial) / pred : -1.0;
      if (rho > 1e-4) {
        y = ny;
        q = nq;
        m = pb.model(y, q, mu);
        update_scaling();
        history.push_back(m.value);
        if (opts.monitor) opts.monitor(it + 1, m.value, m.grad.lpNorm<Eigen::Infinity>(), lambda);
        const double f = 1.0 - std::pow(2.0 * rho - 1.0, 3);
        lambda *= std::max(1.0 / 3.0, f);
        if (lambda < 1e-12) lambda = 0.0;
        nu = 2.0;
        accepted = true;
      } else if (pred <= 1e-15 * (1.0 + std::abs(m.value)) && std::isfinite(trial)) {
        // The model predicts no decrease beyond rounding: we are at the minimum.
        break;
      } else {
        lambda = std::max(lambda * nu, 1e-8);
        nu *= 2.0;
      }
    }
    if (!accepted) {
      const double gtol = opts.grad_tol * (1.0 + std::abs(m.report.total));
      converged = gnorm < 1e3 * gtol;
      message = converged ? "stopped at rounding level" : "trust region collapsed before reaching the gradient tolerance";
      break;
    }
  }
  if (!converged && message.empty()) message = "iteration limit reached";
  out = pb.result(y, q);
  out.iterations = it;
  out.converged = converged;
  out.grad_norm = n > 0 ? m.grad.lpNorm<Eigen::Infinity>() : 0.0;
  out.history = std::move(history);
  out.message = converged ? (message.empty() ? "converged" : message) : message;
  return out;
}

}  // namespace

namespace detail {

ReducedObjective reduced_objective(Mode mode, const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                                   const Discretization& disc, const Eigen::VectorXd& y, const Eigen::VectorXd& q,
                                   double barrier_weight) {
  const Problem pb(params, c0, c1, disc, {}, mode);
  const auto m = pb.model(y, q, barrier_weight);
  return {m.value, m.grad, Eigen::MatrixXd(m.hess)};
}

void start_values(Mode mode, const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                  const Discretization& disc, Eigen::VectorXd& y, Eigen::VectorXd& q) {
  const Problem pb(params, c0, c1, disc, {}, mode);
  pb.default_start(y, q);
}

}  // namespace detail

GeodesicResult solve_parametrized(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                                  const Discretization& disc, const SolverOptions& opts, const GeodesicResult* init) {
  return run(Mode::parametrized, params, c0, c1, disc, opts, init);
}

GeodesicResult solve_unparametrized(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                                    const Discretization& disc, const SolverOptions& opts,
                                    const GeodesicResult* init) {
  return run(Mode::unparametrized, params, c0, c1, disc, opts, init);
}

GeodesicResult solve_shape(const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                           const Discretization& disc, const SolverOptions& opts, const GeodesicResult* init) {
  return run(Mode::shape, params, c0, c1, disc, opts, init);
}

GeodesicResult solve(Mode mode, const MetricParams& params, const SplineCurve& c0, const SplineCurve& c1,
                     const Discretization& disc, const SolverOptions& opts, const GeodesicResult* init) {
  return run(mode, params, c0, c1, disc, opts, init);
}

}  // namespace h2c
