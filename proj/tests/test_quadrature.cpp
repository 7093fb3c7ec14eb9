#include <doctest.h>

#include <cmath>
#include <random>

#include "h2c/quadrature.hpp"

using namespace h2c;

namespace {

// Composite midpoint-refined Simpson reference with many points.
double reference_integral(const std::function<double(double)>& f, double a, double b, int n = 1000000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("gauss-legendre exactness and weights") {
  const auto s1 = SplineSpace1D::clamped(1, 2);  // a single interval on [0,1]
  const QuadratureRule r = build_rule(s1, 2);
  std::vector<double> f;
  for (double t : r.nodes()) f.push_back(t * t * t);
  CHECK(integrate(r, f) == doctest::Approx(0.25).epsilon(1e-15));
  for (int N : {4, 10, 40})
    for (int m : {1, 2, 5, 9}) {
      const QuadratureRule p = build_rule(SplineSpace1D::periodic(3, N), m);
      CHECK(p.size() == m * N);
      double sum = 0.0;
      for (double w : p.weights()) sum += w;
      CHECK(std::abs(sum - two_pi) < 1e-12);
      for (std::size_t k = 1; k < p.nodes().size(); ++k) CHECK(p.nodes()[k] > p.nodes()[k - 1]);
    }
  const QuadratureRule c = build_rule(SplineSpace1D::clamped(3, 8), 4);
  CHECK(c.size() == 4 * 5);
}

TEST_CASE("piecewise polynomial exactness up to degree 2m-1") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int m = 1; m <= 8; ++m) {
    const auto space = SplineSpace1D::clamped(2, 6);
    const QuadratureRule r = build_rule(space, m);
    const auto br = space.breakpoints();
    for (int trial = 0; trial < 5; ++trial) {
      // Independent random polynomial of degree 2m-1 on each interval.
      std::vector<std::vector<double>> coef(br.size() - 1, std::vector<double>(2 * m));
      double exact = 0.0;
      for (std::size_t i = 0; i + 1 < br.size(); ++i)
        for (int k = 0; k < 2 * m; ++k) {
          coef[i][k] = u(rng);
          exact += coef[i][k] * (std::pow(br[i + 1], k + 1) - std::pow(br[i], k + 1)) / (k + 1);
        }
      std::vector<double> vals;
      for (int q = 0; q < r.size(); ++q) {
        const double t = r.nodes()[q];
        const int interval = q / m;
        double v = 0.0;
        for (int k = 0; k < 2 * m; ++k) v += coef[interval][k] * std::pow(t, k);
        vals.push_back(v);
      }
      CHECK(std::abs(integrate(r, vals) - exact) < 1e-13);
    }
  }
}

TEST_CASE("smooth periodic integrands") {
  const auto f = [](double t) { return std::exp(std::sin(t)); };
  const double ref = reference_integral(f, 0.0, two_pi);
  const QuadratureRule r = build_rule(SplineSpace1D::periodic(3, 20), 3);
  std::vector<double> v;
  for (double t : r.nodes()) v.push_back(f(t));
  CHECK(std::abs(integrate(r, v) - ref) / ref < 1e-10);

  const QuadratureRule r4 = build_rule(SplineSpace1D::periodic(3, 10), 4);
  std::vector<double> s2;
  for (double t : r4.nodes()) s2.push_back(std::sin(t) * std::sin(t));
  CHECK(std::abs(integrate(r4, s2) - std::numbers::pi) < 1e-10);

  // Midpoint rule (m = 1) on a non-polynomial integrand: second-order convergence.
  const double eref = std::exp(1.0) - 1.0;
  double prev = 1e300;
  for (int intervals : {2, 4, 8, 16, 32}) {
    const QuadratureRule q = build_rule(SplineSpace1D::clamped(1, intervals + 1), 1);
    std::vector<double> vals;
    for (double t : q.nodes()) vals.push_back(std::exp(t));
    const double err = std::abs(integrate(q, vals) - eref);
    CHECK(err < 0.3 * prev);
    prev = err;
  }
}

TEST_CASE("integrate edge cases") {
  const QuadratureRule r = build_rule(SplineSpace1D::clamped(2, 5), 3);
  CHECK(integrate(r, std::vector<double>(r.size(), 0.0)) == 0.0);
  CHECK(integrate(r, std::vector<double>(r.size(), 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(integrate(r, std::vector<double>(r.size() + 1, 1.0)), ShapeError);
}
