#include "h2c/metric.hpp"

#include <string>

namespace h2c {

void MetricParams::validate() const {
  if (!(a0 > 0.0)) throw InvalidParameterError("metric coefficient a0 must be positive");
  if (!(a1 >= 0.0)) throw InvalidParameterError("metric coefficient a1 must be nonnegative");
  if (!(a2 > 0.0)) throw InvalidParameterError("metric coefficient a2 must be positive");
}

// ---------------------------------------------------------------------------

BasisTable::BasisTable(const SplineSpace1D& space, const QuadratureRule& rule, int max_order)
    : width_(space.degree() + 1), num_ctrl_(space.num_ctrl()) {
  if (max_order > space.degree())
    throw InvalidOrderError("basis table needs derivatives of order " + std::to_string(max_order) +
                            " but the degree is " + std::to_string(space.degree()));
  const int M = rule.size();
  first_.resize(M);
  values_.assign(max_order + 1, Eigen::MatrixXd(M, width_));
  for (int k = 0; k < M; ++k) {
    const auto rows = eval_basis_all(space, rule.nodes()[k], max_order);
    first_[k] = rows[0].first;
    for (int o = 0; o <= max_order; ++o) values_[o].row(k) = rows[o].values.transpose();
  }
}

Eigen::MatrixXd BasisTable::dense(int order) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(num_nodes(), num_ctrl_);
  for (int k = 0; k < num_nodes(); ++k)
    for (int l = 0; l < width_; ++l) out(k, index(k, l)) += values_[order](k, l);
  return out;
}

CurveStencil::CurveStencil(const SplineSpace1D& space, int m_theta)
    : CurveStencil(space, build_rule(space, m_theta)) {}

CurveStencil::CurveStencil(const SplineSpace1D& space, QuadratureRule rule)
    : space_(space), rule_(std::move(rule)), table_(space_, rule_, 2) {
  if (!space.is_periodic()) throw InvalidParameterError("curve stencil needs a periodic space");
}

PathStencil::PathStencil(const SplineSpace1D& time_space, const SplineSpace1D& curve_space, int m_t, int m_theta)
    : time_space_(time_space),
      time_rule_(build_rule(time_space, m_t)),
      time_table_(time_space_, time_rule_, 1),
      curve_(curve_space, m_theta) {
  if (time_space.is_periodic()) throw InvalidParameterError("path time space must be clamped");
}

// ---------------------------------------------------------------------------

Eigen::VectorXd flatten(const Eigen::MatrixXd& controls) {
  Eigen::VectorXd v(controls.size());
  const Eigen::Index d = controls.cols();
  for (Eigen::Index i = 0; i < controls.rows(); ++i)
    for (Eigen::Index r = 0; r < d; ++r) v(i * d + r) = controls(i, r);
  return v;
}

Eigen::MatrixXd unflatten(const Eigen::VectorXd& v, int dim) {
  Eigen::MatrixXd m(v.size() / dim, dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (int r = 0; r < dim; ++r) m(i, r) = v(i * dim + r);
  return m;
}

namespace {

using Jetd = Jet<double>;

struct SliceCoefficients {
  DensityCoefficients<double> c;
  std::array<double, 3> dc{0, 0, 0};   // d coefficient / d length
  std::array<double, 3> ddc{0, 0, 0};  // second derivatives
};

SliceCoefficients coefficients_for(const MetricParams& params, double length) {
  SliceCoefficients s;
  if (!params.scale_invariant) {
    s.c = {params.a0, params.a1, params.a2, 0.0};
    return s;
  }
  const double l = length;
  s.c = {params.a0 / (l * l * l), params.a1 / l, params.a2 * l, 0.0};
  s.dc = {-3.0 * params.a0 / (l * l * l * l), -params.a1 / (l * l), params.a2};
  s.ddc = {12.0 * params.a0 / (l * l * l * l * l), 2.0 * params.a1 / (l * l * l), 0.0};
  return s;
}

// Jet of the footpoint x and tangent w at one spatial node.
Jetd node_jet(const BasisTable& tab, int node, const Eigen::MatrixXd& x, const Eigen::MatrixXd& w) {
  const int d = static_cast<int>(x.cols());
  Jetd z = Jetd::Zero(d, 5);
  for (int l = 0; l < tab.width(); ++l) {
    const int j = tab.index(node, l);
    const double b0 = tab.value(0, node, l), b1 = tab.value(1, node, l), b2 = tab.value(2, node, l);
    z.col(0) += b1 * x.row(j).transpose();
    z.col(1) += b2 * x.row(j).transpose();
    z.col(2) += b0 * w.row(j).transpose();
    z.col(3) += b1 * w.row(j).transpose();
    z.col(4) += b2 * w.row(j).transpose();
  }
  return z;
}

void check_immersed(double speed, int time_node, int node) {
  if (!(speed >= immersion_eps))
    throw NotImmersedError("curve not immersed at quadrature node (t=" + std::to_string(time_node) +
                               ", theta=" + std::to_string(node) + "), |c'| = " + std::to_string(speed),
                           time_node, node);
}

double slice_length(const CurveStencil& st, const Eigen::MatrixXd& x, int time_node) {
  const BasisTable& tab = st.table();
  const auto& wts = st.rule().weights();
  double l = 0.0;
  for (int k = 0; k < tab.num_nodes(); ++k) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(x.cols());
    for (int l2 = 0; l2 < tab.width(); ++l2) u += tab.value(1, k, l2) * x.row(tab.index(k, l2)).transpose();
    const double r = u.norm();
    check_immersed(r, time_node, k);
    l += wts[k] * r;
  }
  return l;
}

// Scatter a jet gradient into control-shaped gradients.
void scatter_gradient(const BasisTable& tab, int node, double weight, const Jetd& g, Eigen::MatrixXd& gx,
                      Eigen::MatrixXd& gw) {
  for (int l = 0; l < tab.width(); ++l) {
    const int j = tab.index(node, l);
    const double b0 = tab.value(0, node, l), b1 = tab.value(1, node, l), b2 = tab.value(2, node, l);
    gx.row(j) += weight * (b1 * g.col(0) + b2 * g.col(1)).transpose();
    gw.row(j) += weight * (b0 * g.col(2) + b1 * g.col(3) + b2 * g.col(4)).transpose();
  }
}

// Jacobian from the local controls (x then w, l-major) to the jet (slot-major).
Eigen::MatrixXd jet_jacobian(const BasisTable& tab, int node, int d) {
  const int W = tab.width();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(5 * d, 2 * W * d);
  for (int l = 0; l < W; ++l) {
    const double b0 = tab.value(0, node, l), b1 = tab.value(1, node, l), b2 = tab.value(2, node, l);
    for (int r = 0; r < d; ++r) {
      J(0 * d + r, l * d + r) = b1;
      J(1 * d + r, l * d + r) = b2;
      J(2 * d + r, (W + l) * d + r) = b0;
      J(3 * d + r, (W + l) * d + r) = b1;
      J(4 * d + r, (W + l) * d + r) = b2;
    }
  }
  return J;
}

}  // namespace

SliceDerivatives slice_form(const MetricParams& params, const CurveStencil& stencil, const Eigen::MatrixXd& x,
                            const Eigen::MatrixXd& w, DerivativeLevel level, int time_node) {
  const BasisTable& tab = stencil.table();
  const auto& wts = stencil.rule().weights();
  const int N = stencil.space().num_ctrl();
  const int d = static_cast<int>(x.cols());
  if (x.rows() != N || w.rows() != N || w.cols() != d) throw ShapeError("slice_form: control shape mismatch");
  const int M = tab.num_nodes();
  const int W = tab.width();

  // Unit-weight integrals of the three density parts, needed for the value in any
  // case and for the length chain rule of the scale-invariant metric.
  std::vector<Jetd> jets(M);
  std::array<double, 3> X{0, 0, 0};
  double length = 0.0;
  for (int k = 0; k < M; ++k) {
    jets[k] = node_jet(tab, k, x, w);
    const auto inv = jet_invariants<double>(jets[k]);
    check_immersed(inv.r, time_node, k);
    const auto f = local_density<double>(inv, {1.0, 1.0, 1.0, 0.0}, false);
    X[0] += wts[k] * f.f0;
    X[1] += wts[k] * f.f1;
    X[2] += wts[k] * f.f2;
    length += wts[k] * inv.r;
  }
  SliceCoefficients sc = coefficients_for(params, length);
  SliceDerivatives out;
  out.value.e_l2 = sc.c.c0 * X[0];
  out.value.e_h1 = sc.c.c1 * X[1];
  out.value.e_h2 = sc.c.c2 * X[2];
  out.value.total = out.value.e_l2 + out.value.e_h1 + out.value.e_h2;
  if (level == DerivativeLevel::value) return out;

  const bool scaled = params.scale_invariant;
  const double kappa = sc.dc[0] * X[0] + sc.dc[1] * X[1] + sc.dc[2] * X[2];
  DensityCoefficients<double> coef = sc.c;
  coef.length = kappa;

  out.grad_x = Eigen::MatrixXd::Zero(N, d);
  out.grad_w = Eigen::MatrixXd::Zero(N, d);
  // Unit-part gradients and the length gradient, for the rank terms.
  std::array<Eigen::MatrixXd, 3> part_x, part_w;
  Eigen::MatrixXd len_x;
  if (scaled) {
    for (int p = 0; p < 3; ++p) {
      part_x[p] = Eigen::MatrixXd::Zero(N, d);
      part_w[p] = Eigen::MatrixXd::Zero(N, d);
    }
    len_x = Eigen::MatrixXd::Zero(N, d);
  }
  const bool want_hessian = level == DerivativeLevel::hessian;
  if (want_hessian) out.hessian = Eigen::MatrixXd::Zero(2 * N * d, 2 * N * d);
  std::vector<int> map(2 * W * d);

  for (int k = 0; k < M; ++k) {
    const Jetd& z = jets[k];
    const auto inv = jet_invariants<double>(z);
    const auto f = local_density<double>(inv, coef, want_hessian);
    scatter_gradient(tab, k, wts[k], jet_gradient<double>(z, f), out.grad_x, out.grad_w);
    if (scaled) {
      Eigen::MatrixXd dummy = Eigen::MatrixXd::Zero(N, d);
      for (int p = 0; p < 3; ++p) {
        DensityCoefficients<double> unit{p == 0 ? 1.0 : 0.0, p == 1 ? 1.0 : 0.0, p == 2 ? 1.0 : 0.0, 0.0};
        const auto fp = local_density<double>(inv, unit, false);
        scatter_gradient(tab, k, wts[k], jet_gradient<double>(z, fp), part_x[p], part_w[p]);
      }
      Jetd gl = Jetd::Zero(d, 5);
      gl.col(0) = z.col(0) / inv.r;
      scatter_gradient(tab, k, wts[k], gl, len_x, dummy);
    }
    if (want_hessian) {
      const Eigen::MatrixXd J = jet_jacobian(tab, k, d);
      const Eigen::MatrixXd Hl = wts[k] * (J.transpose() * jet_hessian<double>(z, f) * J);
      for (int l = 0; l < W; ++l) {
        const int j = tab.index(k, l);
        for (int r = 0; r < d; ++r) {
          map[l * d + r] = j * d + r;
          map[(W + l) * d + r] = N * d + j * d + r;
        }
      }
      for (int a = 0; a < 2 * W * d; ++a)
        for (int b = 0; b < 2 * W * d; ++b) out.hessian(map[a], map[b]) += Hl(a, b);
    }
  }

  if (scaled) {
    if (want_hessian) {
      Eigen::VectorXd gl(2 * N * d);
      gl << flatten(len_x), Eigen::VectorXd::Zero(N * d);
      double curvature = 0.0;
      for (int p = 0; p < 3; ++p) {
        Eigen::VectorXd gp(2 * N * d);
        gp << flatten(part_x[p]), flatten(part_w[p]);
        out.hessian += sc.dc[p] * (gp * gl.transpose() + gl * gp.transpose());
        curvature += sc.ddc[p] * X[p];
      }
      out.hessian += curvature * gl * gl.transpose();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

PathHessian::PathHessian(int num_time, int bandwidth, int block_size)
    : num_time_(num_time), bandwidth_(bandwidth), block_size_(block_size) {
  blocks_.resize(static_cast<std::size_t>(num_time) * (2 * bandwidth + 1));
  for (int i = 0; i < num_time; ++i)
    for (int k = std::max(0, i - bandwidth); k <= std::min(num_time - 1, i + bandwidth); ++k)
      blocks_[slot(i, k)] = Eigen::MatrixXd::Zero(block_size, block_size);
}

Eigen::VectorXd PathHessian::apply(const Eigen::VectorXd& h) const {
  if (h.size() != size()) throw ShapeError("PathHessian::apply: size mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size());
  for (int i = 0; i < num_time_; ++i)
    for (int k = std::max(0, i - bandwidth_); k <= std::min(num_time_ - 1, i + bandwidth_); ++k)
      out.segment(i * block_size_, block_size_) += block(i, k) * h.segment(k * block_size_, block_size_);
  return out;
}

Eigen::MatrixXd PathHessian::dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size(), size());
  for (int i = 0; i < num_time_; ++i)
    for (int k = std::max(0, i - bandwidth_); k <= std::min(num_time_ - 1, i + bandwidth_); ++k)
      out.block(i * block_size_, k * block_size_, block_size_, block_size_) = block(i, k);
  return out;
}

void PathHessian::append_triplets(int row_begin, int row_end, std::vector<Eigen::Triplet<double>>& out,
                                  Eigen::Index offset) const {
  for (int i = row_begin; i < row_end; ++i)
    for (int k = std::max(row_begin, i - bandwidth_); k <= std::min(row_end - 1, i + bandwidth_); ++k) {
      const Eigen::MatrixXd& B = block(i, k);
      const Eigen::Index r0 = offset + static_cast<Eigen::Index>(i - row_begin) * block_size_;
      const Eigen::Index c0 = offset + static_cast<Eigen::Index>(k - row_begin) * block_size_;
      for (int c = 0; c < block_size_; ++c)
        for (int r = 0; r < block_size_; ++r)
          if (B(r, c) != 0.0) out.emplace_back(r0 + r, c0 + c, B(r, c));
    }
}

Eigen::SparseMatrix<double> PathHessian::sparse(int row_begin, int row_end) const {
  std::vector<Eigen::Triplet<double>> trip;
  append_triplets(row_begin, row_end, trip);
  const Eigen::Index n = static_cast<Eigen::Index>(row_end - row_begin) * block_size_;
  Eigen::SparseMatrix<double> S(n, n);
  S.setFromTriplets(trip.begin(), trip.end());
  return S;
}

// ---------------------------------------------------------------------------

namespace {

void check_path(const SplinePath& path, const PathStencil& stencil) {
  if (!(path.time_space() == stencil.time_space()) || !(path.curve_space() == stencil.curve_space()))
    throw ShapeError("path spaces differ from stencil spaces");
}

// Footpoint and velocity controls of the curve at time node a. The velocity is
// formed from differences to the first touched row (the derivative weights sum
// to zero), so a constant path has exactly zero velocity.
void time_slice(const SplinePath& path, const BasisTable& tt, int a, Eigen::MatrixXd& x, Eigen::MatrixXd& w) {
  x.setZero(path.num_space(), path.dim());
  w.setZero(path.num_space(), path.dim());
  const auto ref = path.ctrl_row(tt.index(a, 0));
  for (int l = 0; l < tt.width(); ++l) {
    const int i = tt.index(a, l);
    x += tt.value(0, a, l) * path.ctrl_row(i);
    if (l > 0) w += tt.value(1, a, l) * (path.ctrl_row(i) - ref);
  }
}

void accumulate(const MetricParams& params, const SplinePath& path, const PathStencil& stencil,
                DerivativeLevel level, EnergyReport* report, Eigen::MatrixXd* grad, PathHessian* hess) {
  params.validate();
  check_path(path, stencil);
  const BasisTable& tt = stencil.time_table();
  const auto& wt = stencil.time_rule().weights();
  const int d = path.dim(), Ns = path.num_space();
  const int bs = Ns * d;
  EnergyReport rep;
  if (grad) grad->setZero(path.controls().rows(), d);
  Eigen::MatrixXd x, w;
  for (int a = 0; a < tt.num_nodes(); ++a) {
    time_slice(path, tt, a, x, w);
    const SliceDerivatives s = slice_form(params, stencil.curve(), x, w, level, a);
    rep.e_l2 += wt[a] * s.value.e_l2;
    rep.e_h1 += wt[a] * s.value.e_h1;
    rep.e_h2 += wt[a] * s.value.e_h2;
    if (level == DerivativeLevel::value) continue;
    for (int l = 0; l < tt.width(); ++l) {
      const int i = tt.index(a, l);
      grad->middleRows(i * Ns, Ns) += wt[a] * (tt.value(0, a, l) * s.grad_x + tt.value(1, a, l) * s.grad_w);
    }
    if (!hess) continue;
    const auto Hxx = s.hessian.topLeftCorner(bs, bs);
    const auto Hxw = s.hessian.topRightCorner(bs, bs);
    const auto Hwx = s.hessian.bottomLeftCorner(bs, bs);
    const auto Hww = s.hessian.bottomRightCorner(bs, bs);
    for (int l = 0; l < tt.width(); ++l) {
      const int i = tt.index(a, l);
      const double bi = tt.value(0, a, l), di = tt.value(1, a, l);
      for (int m = 0; m < tt.width(); ++m) {
        const int k = tt.index(a, m);
        const double bk = tt.value(0, a, m), dk = tt.value(1, a, m);
        hess->block(i, k) += wt[a] * (bi * bk * Hxx + bi * dk * Hxw + di * bk * Hwx + di * dk * Hww);
      }
    }
  }
  rep.total = rep.e_l2 + rep.e_h1 + rep.e_h2;
  if (report) *report = rep;
}

}  // namespace

EnergyReport energy(const MetricParams& params, const SplinePath& path, const PathStencil& stencil) {
  EnergyReport rep;
  accumulate(params, path, stencil, DerivativeLevel::value, &rep, nullptr, nullptr);
  return rep;
}

Eigen::MatrixXd energy_gradient(const MetricParams& params, const SplinePath& path, const PathStencil& stencil,
                                EnergyReport* report) {
  Eigen::MatrixXd g;
  accumulate(params, path, stencil, DerivativeLevel::gradient, report, &g, nullptr);
  return g;
}

PathHessian energy_hessian(const MetricParams& params, const SplinePath& path, const PathStencil& stencil,
                           Eigen::MatrixXd* gradient, EnergyReport* report) {
  PathHessian H(path.num_time(), path.time_space().degree(), path.num_space() * path.dim());
  Eigen::MatrixXd g;
  accumulate(params, path, stencil, DerivativeLevel::hessian, report, &g, &H);
  if (gradient) *gradient = std::move(g);
  return H;
}

namespace {

// Matrix-free second variation of Q(x, w) in direction (hx, hw).
void slice_apply(const MetricParams& params, const CurveStencil& st, const Eigen::MatrixXd& x,
                 const Eigen::MatrixXd& w, const Eigen::MatrixXd& hx, const Eigen::MatrixXd& hw, int time_node,
                 Eigen::MatrixXd& ox, Eigen::MatrixXd& ow) {
  const BasisTable& tab = st.table();
  const auto& wts = st.rule().weights();
  const int N = static_cast<int>(x.rows()), d = static_cast<int>(x.cols()), M = tab.num_nodes();
  ox.setZero(N, d);
  ow.setZero(N, d);
  std::array<double, 3> X{0, 0, 0};
  double length = 0.0;
  for (int k = 0; k < M; ++k) {
    const auto inv = jet_invariants<double>(node_jet(tab, k, x, w));
    check_immersed(inv.r, time_node, k);
    const auto f = local_density<double>(inv, {1.0, 1.0, 1.0, 0.0}, false);
    X[0] += wts[k] * f.f0;
    X[1] += wts[k] * f.f1;
    X[2] += wts[k] * f.f2;
    length += wts[k] * inv.r;
  }
  const SliceCoefficients sc = coefficients_for(params, length);
  DensityCoefficients<double> coef = sc.c;
  coef.length = sc.dc[0] * X[0] + sc.dc[1] * X[1] + sc.dc[2] * X[2];
  const bool scaled = params.scale_invariant;
  // Directional derivatives of the unit parts and of the length, and their gradients.
  std::array<double, 3> dX{0, 0, 0};
  double dl = 0.0;
  std::array<Eigen::MatrixXd, 3> px, pw;
  Eigen::MatrixXd lx, dummy;
  if (scaled) {
    for (int p = 0; p < 3; ++p) {
      px[p] = Eigen::MatrixXd::Zero(N, d);
      pw[p] = Eigen::MatrixXd::Zero(N, d);
    }
    lx = Eigen::MatrixXd::Zero(N, d);
    dummy = Eigen::MatrixXd::Zero(N, d);
  }
  for (int k = 0; k < M; ++k) {
    const Jetd z = node_jet(tab, k, x, w);
    const Jetd zh = node_jet(tab, k, hx, hw);
    const auto inv = jet_invariants<double>(z);
    const auto f = local_density<double>(inv, coef, true);
    const Eigen::MatrixXd H = jet_hessian<double>(z, f);
    Eigen::VectorXd zv(5 * d);
    for (int s = 0; s < 5; ++s) zv.segment(s * d, d) = zh.col(s);
    const Eigen::VectorXd hz = H * zv;
    Jetd g(d, 5);
    for (int s = 0; s < 5; ++s) g.col(s) = hz.segment(s * d, d);
    scatter_gradient(tab, k, wts[k], g, ox, ow);
    if (scaled) {
      for (int p = 0; p < 3; ++p) {
        DensityCoefficients<double> unit{p == 0 ? 1.0 : 0.0, p == 1 ? 1.0 : 0.0, p == 2 ? 1.0 : 0.0, 0.0};
        const Jetd gp = jet_gradient<double>(z, local_density<double>(inv, unit, false));
        dX[p] += wts[k] * (gp.array() * zh.array()).sum();
        scatter_gradient(tab, k, wts[k], gp, px[p], pw[p]);
      }
      dl += wts[k] * z.col(0).dot(zh.col(0)) / inv.r;
      Jetd gl = Jetd::Zero(d, 5);
      gl.col(0) = z.col(0) / inv.r;
      scatter_gradient(tab, k, wts[k], gl, lx, dummy);
    }
  }
  if (scaled) {
    double curvature = 0.0;
    for (int p = 0; p < 3; ++p) {
      ox += sc.dc[p] * (px[p] * dl + lx * dX[p]);
      ow += sc.dc[p] * pw[p] * dl;
      curvature += sc.ddc[p] * X[p];
    }
    ox += curvature * dl * lx;
  }
}

}  // namespace

Eigen::MatrixXd energy_hessian_apply(const MetricParams& params, const SplinePath& path, const PathStencil& stencil,
                                     const Eigen::MatrixXd& h) {
  params.validate();
  check_path(path, stencil);
  if (h.rows() != path.controls().rows() || h.cols() != path.dim())
    throw ShapeError("energy_hessian_apply: direction shape mismatch");
  const SplinePath hp(path.time_space(), path.curve_space(), h);
  const BasisTable& tt = stencil.time_table();
  const auto& wt = stencil.time_rule().weights();
  const int Ns = path.num_space();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(h.rows(), h.cols());
  Eigen::MatrixXd x, w, hx, hw, ox, ow;
  for (int a = 0; a < tt.num_nodes(); ++a) {
    time_slice(path, tt, a, x, w);
    time_slice(hp, tt, a, hx, hw);
    slice_apply(params, stencil.curve(), x, w, hx, hw, a, ox, ow);
    for (int l = 0; l < tt.width(); ++l) {
      const int i = tt.index(a, l);
      out.middleRows(i * Ns, Ns) += wt[a] * (tt.value(0, a, l) * ox + tt.value(1, a, l) * ow);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

double inner_product(const MetricParams& params, const SplineCurve& c, const SplineCurve& h, const SplineCurve& k,
                     const CurveStencil& stencil) {
  params.validate();
  if (!(c.space() == stencil.space()) || !(h.space() == c.space()) || !(k.space() == c.space()))
    throw ShapeError("inner_product: curve and tangents must share the stencil space");
  const BasisTable& tab = stencil.table();
  const auto& wts = stencil.rule().weights();
  const int d = c.dim();
  std::array<double, 3> parts{0, 0, 0};
  double length = 0.0;
  for (int n = 0; n < tab.num_nodes(); ++n) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(d), v = u, h0 = u, h1 = u, h2 = u, k0 = u, k1 = u, k2 = u;
    for (int l = 0; l < tab.width(); ++l) {
      const int j = tab.index(n, l);
      const double b0 = tab.value(0, n, l), b1 = tab.value(1, n, l), b2 = tab.value(2, n, l);
      u += b1 * c.controls().row(j).transpose();
      v += b2 * c.controls().row(j).transpose();
      h0 += b0 * h.controls().row(j).transpose();
      h1 += b1 * h.controls().row(j).transpose();
      h2 += b2 * h.controls().row(j).transpose();
      k0 += b0 * k.controls().row(j).transpose();
      k1 += b1 * k.controls().row(j).transpose();
      k2 += b2 * k.controls().row(j).transpose();
    }
    check_immersed(u.norm(), -1, n);
    const auto dens = inner_density<double>(u, v, h0, h1, h2, k0, k1, k2);
    for (int p = 0; p < 3; ++p) parts[p] += wts[n] * dens[p];
    length += wts[n] * u.norm();
  }
  const SliceCoefficients sc = coefficients_for(params, length);
  return sc.c.c0 * parts[0] + sc.c.c1 * parts[1] + sc.c.c2 * parts[2];
}

double inner_product(const MetricParams& params, const SplineCurve& c, const SplineCurve& h, const SplineCurve& k,
                     const QuadratureRule& rule) {
  return inner_product(params, c, h, k, CurveStencil(c.space(), rule));
}

double curve_length(const SplineCurve& c, const CurveStencil& stencil) {
  if (!(c.space() == stencil.space())) throw ShapeError("curve_length: space mismatch");
  return slice_length(stencil, c.controls(), -1);
}

double curve_length(const SplineCurve& c, const QuadratureRule& rule) {
  return curve_length(c, CurveStencil(c.space(), rule));
}

}  // namespace h2c
