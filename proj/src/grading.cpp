#include "ncres/grading.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ncres/quadrature.hpp"

namespace ncres {

namespace {

double ipow(double x, long n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

} // namespace

Grading::Grading(std::vector<int> w) : weights(std::move(w)) {
  if (weights.empty()) throw std::invalid_argument("grading: empty weight list");
  for (int wi : weights)
    if (wi < 1) throw std::invalid_argument("grading: weights must be >= 1");
}

int Grading::homogeneous_dim() const {
  int s = 0;
  for (int wi : weights) s += wi;
  return s;
}

int Grading::lcm_exponent() const {
  int l = 1;
  for (int wi : weights) l = std::lcm(l, wi);
  return l;
}

bool Grading::is_trivial() const {
  for (int wi : weights)
    if (wi != 1) return false;
  return true;
}

Grading Grading::trivial(int d) {
  if (d < 1) throw std::invalid_argument("grading: dimension must be >= 1");
  return Grading(std::vector<int>(d, 1));
}

Grading Grading::heisenberg(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("heisenberg: n, m must be >= 0");
  std::vector<int> w(1 + 2 * n + m, 1);
  w[0] = 2;
  return Grading(std::move(w));
}

bool operator==(const Grading& a, const Grading& b) { return a.weights == b.weights; }

Vec dilate(const Grading& g, double s, const Vec& xi) {
  if (!(s > 0.0)) throw std::invalid_argument("dilate: scale must be positive");
  if (xi.size() != g.dim()) throw std::invalid_argument("dilate: dimension mismatch");
  Vec out(xi.size());
  for (int i = 0; i < xi.size(); ++i) out[i] = ipow(s, g.weights[i]) * xi[i];
  return out;
}

double QuasiNorm::operator()(const Vec& xi) const {
  if (xi.size() != grading.dim())
    throw std::invalid_argument("quasi_norm: dimension mismatch");
  const long N = grading.lcm_exponent();
  double s = 0.0;
  for (int i = 0; i < xi.size(); ++i)
    s += ipow(xi[i] * xi[i], N / grading.weights[i]);
  return std::pow(s, 1.0 / (2.0 * N));
}

Vec QuasiNorm::gradient(const Vec& xi) const {
  if (xi.size() != grading.dim())
    throw std::invalid_argument("quasi_norm gradient: dimension mismatch");
  const long N = grading.lcm_exponent();
  double s = 0.0;
  for (int i = 0; i < xi.size(); ++i)
    s += ipow(xi[i] * xi[i], N / grading.weights[i]);
  if (s == 0.0) throw std::invalid_argument("quasi_norm gradient: xi = 0");
  const double outer = std::pow(s, 1.0 / (2.0 * N) - 1.0) / N;
  Vec grad(xi.size());
  for (int i = 0; i < xi.size(); ++i) {
    const long p = N / grading.weights[i];
    grad[i] = outer * p * xi[i] * ipow(xi[i] * xi[i], p - 1);
  }
  return grad;
}

double surface_area(int d) {
  if (d < 1) throw std::invalid_argument("surface_area: d must be >= 1");
  return 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
}

SphereRule sphere_quadrature(int d, int accuracy_degree) {
  if (d < 1) throw std::invalid_argument("sphere_quadrature: d must be >= 1");
  if (d > 16) throw std::invalid_argument("sphere_quadrature: d too large");
  if (accuracy_degree < 0 || accuracy_degree > 500)
    throw std::invalid_argument("sphere_quadrature: unreasonable accuracy degree");

  SphereRule rule;
  rule.dim = d;
  rule.degree = accuracy_degree;

  if (d == 1) {
    rule.nodes = Mat(2, 1);
    rule.nodes << 1.0, -1.0;
    rule.weights = Vec::Constant(2, 1.0);
    return rule;
  }
  if (d == 2) {
    const int n = std::max(4, 2 * ((accuracy_degree + 2) / 2 + 1));
    rule.nodes = Mat(n, 2);
    rule.weights = Vec::Constant(n, 2.0 * pi / n);
    for (int k = 0; k < n; ++k) {
      const double a = 2.0 * pi * k / n;
      rule.nodes(k, 0) = std::cos(a);
      rule.nodes(k, 1) = std::sin(a);
    }
    return rule;
  }

  const int npol = std::max(2, (accuracy_degree + 2) / 2 + 1);
  const GaussRule polar = gauss_jacobi_sym(npol, 0.5 * (d - 3));
  const SphereRule sub = sphere_quadrature(d - 1, accuracy_degree);

  rule.nodes = Mat(npol * sub.size(), d);
  rule.weights = Vec(npol * sub.size());
  int row = 0;
  for (int i = 0; i < npol; ++i) {
    const double t = polar.nodes[i];
    const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int j = 0; j < sub.size(); ++j, ++row) {
      rule.nodes(row, 0) = t;
      for (int c = 0; c < d - 1; ++c) rule.nodes(row, c + 1) = r * sub.nodes(j, c);
      rule.weights[row] = polar.weights[i] * sub.weights[j];
    }
  }
  return rule;
}

} // namespace ncres
