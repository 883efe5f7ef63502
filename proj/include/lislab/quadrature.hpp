#pragma once

#include <vector>

namespace lislab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

// n-point Gauss-Legendre rule mapped to [a, b]; nodes ascending.
QuadratureRule gauss_legendre(int n, double a, double b);

// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
double integrate_gl(F&& f, double a, double b, int n) {
  const QuadratureRule q = gauss_legendre(n, a, b);
  double s = 0;
  for (int i = 0; i < q.size(); ++i) s += q.weights[i] * f(q.nodes[i]);
  return s;
}

// Composite Gauss-Legendre: [a, b] split into `panels` equal pieces.
template <class F>
double integrate_composite(F&& f, double a, double b, int panels, int n) {
  const QuadratureRule q = gauss_legendre(n, -1.0, 1.0);
  const double h = (b - a) / panels;
  double s = 0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (int i = 0; i < q.size(); ++i) s += q.weights[i] * f(c + 0.5 * h * q.nodes[i]);
  }
  return 0.5 * h * s;
}

}  // namespace lislab
