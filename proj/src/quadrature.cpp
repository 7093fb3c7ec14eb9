#include "h2c/quadrature.hpp"

#include <string>

namespace h2c {

QuadratureRule::QuadratureRule(std::span<const double> breakpoints, int m) : m_(m) {
  if (m < 1) throw InvalidParameterError("quadrature needs at least one point per interval");
  if (breakpoints.size() < 2) throw InvalidParameterError("quadrature needs at least one interval");
  const auto [x, w] = gauss_legendre<double>(m);
  begin_ = breakpoints.front();
  end_ = breakpoints.back();
  nodes_.reserve((breakpoints.size() - 1) * m);
  weights_.reserve(nodes_.capacity());
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const double a = breakpoints[k], b = breakpoints[k + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int q = 0; q < m; ++q) {
      nodes_.push_back(mid + half * x[q]);
      weights_.push_back(half * w[q]);
    }
  }
}

QuadratureRule build_rule(const SplineSpace1D& space, int m) {
  const auto br = space.breakpoints();
  return QuadratureRule(br, m);
}

double integrate(const QuadratureRule& rule, std::span<const double> values) {
  if (values.size() != rule.nodes().size())
    throw ShapeError("integrate: " + std::to_string(values.size()) + " values for " +
                     std::to_string(rule.nodes().size()) + " nodes");
  double s = 0.0;
  const auto& w = rule.weights();
  for (std::size_t k = 0; k < values.size(); ++k) s += w[k] * values[k];
  return s;
}

}  // namespace h2c
