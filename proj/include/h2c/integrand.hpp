#pragma once

#include <Eigen/Dense>

#include <array>

namespace h2c {

/// Pointwise energy density of the second-order Sobolev metric and its exact
/// first and second derivatives.
///
/// At a quadrature node the density depends on the local jet
///   u = c', v = c'', a = w, b = w', e = w''
/// (w the tangent or path velocity) only through the six invariants
///   rho1 = |u|^2/2, rho2 = <u,v>, rho3 = |a|^2/2, rho4 = |b|^2/2,
///   rho5 = <b,e>, rho6 = |e|^2/2,
/// whose jet gradients are the vectors g1 = (u,0,0,0,0), g2 = (v,u,0,0,0),
/// g3 = (0,0,a,0,0), g4 = (0,0,0,b,0), g5 = (0,0,0,e,b), g6 = (0,0,0,0,e).
/// Hence grad F = sum_k t_k g_k and Hess F = sum_k t_k D_k + sum_kl M_kl g_k g_l^T
/// with D_k the constant Jacobians of g_k. The t_k are the classical first
/// variation coefficients; the off-zero entries of M are the second variation ones.
template <typename Scalar>
struct JetInvariants {
  Scalar r, p, A, B, q, Ee;  // |u|, <u,v>, |a|^2, |b|^2, <b,e>, |e|^2
};

template <typename Scalar>
struct DensityCoefficients {
  Scalar c0, c1, c2;   // weights of the L2, H1 and H2 parts
  Scalar length{0};    // weight of an extra |u| term, used by the scale-invariant chain rule
};

template <typename Scalar>
struct LocalDensity {
  Scalar f0, f1, f2;                    // unweighted L2, H1, H2 densities
  std::array<Scalar, 6> t;              // dF/drho_k
  Eigen::Matrix<Scalar, 6, 6> M;        // d2F/drho_k drho_l
};

template <typename Scalar>
LocalDensity<Scalar> local_density(const JetInvariants<Scalar>& z, const DensityCoefficients<Scalar>& c,
                                   bool with_second = true) {
  const Scalar r = z.r, p = z.p, A = z.A, B = z.B, q = z.q, Ee = z.Ee;
  const Scalar s = Scalar(1) / r;
  const Scalar s2 = s * s, s3 = s2 * s, s5 = s3 * s2, s7 = s5 * s2, s9 = s7 * s2;
  LocalDensity<Scalar> out;
  out.f0 = r * A;
  out.f1 = B * s;
  out.f2 = p * p * B * s7 - Scalar(2) * p * q * s5 + Ee * s3;

  out.t[0] = c.c0 * A * s - c.c1 * B * s3 +
             c.c2 * (Scalar(-7) * p * p * B * s9 + Scalar(10) * p * q * s7 - Scalar(3) * Ee * s5) + c.length * s;
  out.t[1] = c.c2 * (Scalar(2) * p * B * s7 - Scalar(2) * q * s5);
  out.t[2] = Scalar(2) * c.c0 * r;
  out.t[3] = Scalar(2) * c.c1 * s + Scalar(2) * c.c2 * p * p * s7;
  out.t[4] = Scalar(-2) * c.c2 * p * s5;
  out.t[5] = Scalar(2) * c.c2 * s3;

  out.M.setZero();
  if (with_second) {
    const Scalar s11 = s9 * s2;
    out.M(0, 0) = -c.c0 * A * s3 + Scalar(3) * c.c1 * B * s5 +
                  c.c2 * (Scalar(63) * p * p * B * s11 - Scalar(70) * p * q * s9 + Scalar(15) * Ee * s7) -
                  c.length * s3;
    out.M(0, 1) = c.c2 * (Scalar(-14) * p * B * s9 + Scalar(10) * q * s7);
    out.M(0, 2) = Scalar(2) * c.c0 * s;
    out.M(0, 3) = Scalar(-2) * c.c1 * s3 - Scalar(14) * c.c2 * p * p * s9;
    out.M(0, 4) = Scalar(10) * c.c2 * p * s7;
    out.M(0, 5) = Scalar(-6) * c.c2 * s5;
    out.M(1, 1) = Scalar(2) * c.c2 * B * s7;
    out.M(1, 3) = Scalar(4) * c.c2 * p * s7;
    out.M(1, 4) = Scalar(-2) * c.c2 * s5;
    for (int k = 0; k < 6; ++k)
      for (int l = 0; l < k; ++l) out.M(k, l) = out.M(l, k);
  }
  return out;
}

/// Jet of a point: rows u, v, a, b, e as columns of a d x 5 matrix.
template <typename Scalar>
using Jet = Eigen::Matrix<Scalar, Eigen::Dynamic, 5>;

template <typename Scalar>
JetInvariants<Scalar> jet_invariants(const Jet<Scalar>& z) {
  using std::sqrt;
  return {sqrt(z.col(0).squaredNorm()), z.col(0).dot(z.col(1)), z.col(2).squaredNorm(),
          z.col(3).squaredNorm(),       z.col(3).dot(z.col(4)), z.col(4).squaredNorm()};
}

/// Jet gradient sum_k t_k g_k, laid out like the jet (d x 5).
template <typename Scalar>
Jet<Scalar> jet_gradient(const Jet<Scalar>& z, const LocalDensity<Scalar>& f) {
  Jet<Scalar> g(z.rows(), 5);
  const auto& t = f.t;
  g.col(0) = t[0] * z.col(0) + t[1] * z.col(1);
  g.col(1) = t[1] * z.col(0);
  g.col(2) = t[2] * z.col(2);
  g.col(3) = t[3] * z.col(3) + t[4] * z.col(4);
  g.col(4) = t[4] * z.col(3) + t[5] * z.col(4);
  return g;
}

/// Jet Hessian (5d x 5d, slot-major: index slot * d + coordinate).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> jet_hessian(const Jet<Scalar>& z, const LocalDensity<Scalar>& f) {
  const int d = static_cast<int>(z.rows());
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix G = Matrix::Zero(5 * d, 6);
  G.block(0, 0, d, 1) = z.col(0);
  G.block(0, 1, d, 1) = z.col(1);
  G.block(d, 1, d, 1) = z.col(0);
  G.block(2 * d, 2, d, 1) = z.col(2);
  G.block(3 * d, 3, d, 1) = z.col(3);
  G.block(3 * d, 4, d, 1) = z.col(4);
  G.block(4 * d, 4, d, 1) = z.col(3);
  G.block(4 * d, 5, d, 1) = z.col(4);
  Matrix H = G * f.M * G.transpose();
  const auto& t = f.t;
  for (int r = 0; r < d; ++r) {
    H(r, r) += t[0];
    H(r, d + r) += t[1];
    H(d + r, r) += t[1];
    H(2 * d + r, 2 * d + r) += t[2];
    H(3 * d + r, 3 * d + r) += t[3];
    H(3 * d + r, 4 * d + r) += t[4];
    H(4 * d + r, 3 * d + r) += t[4];
    H(4 * d + r, 4 * d + r) += t[5];
  }
  return H;
}

/// Value of the metric density for G_c(h,k) at one node, written directly in
/// parameter derivatives; u, v are c', c'' and h1, h2, k1, k2 the first and second
/// derivatives of the two tangents, h0, k0 their values.
template <typename Scalar, typename Vec>
std::array<Scalar, 3> inner_density(const Vec& u, const Vec& v, const Vec& h0, const Vec& h1, const Vec& h2,
                                    const Vec& k0, const Vec& k1, const Vec& k2) {
  using std::sqrt;
  const Scalar r = sqrt(u.squaredNorm());
  const Scalar p = u.dot(v);
  const Scalar s = Scalar(1) / r;
  const Scalar s3 = s * s * s, s5 = s3 * s * s, s7 = s5 * s * s;
  return {r * h0.dot(k0), s * h1.dot(k1),
          s7 * p * p * h1.dot(k1) - s5 * p * (h1.dot(k2) + h2.dot(k1)) + s3 * h2.dot(k2)};
}

}  // namespace h2c
