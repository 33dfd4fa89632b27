#pragma once

#include <vector>

#include "ncres/types.hpp"

namespace ncres {

// Weights of the graded coordinates. Induces the dilations
// delta_s(xi)_i = s^{w_i} xi_i, the quasi-norm and the homogeneous
// dimension d_H = sum w_i.
struct Grading {
  std::vector<int> weights;

  Grading() = default;
  explicit Grading(std::vector<int> w);

  int dim() const { return static_cast<int>(weights.size()); }
  int homogeneous_dim() const;
  int lcm_exponent() const; // N = lcm of the weights
  bool is_trivial() const;  // all weights 1

  // All weights 1, d_H = d.
  static Grading trivial(int d);
  // H_n x R^m in coordinates (xi_0 | xi_1..xi_2n | xi_2n+1..xi_2n+m):
  // one weight-2 coordinate first, then d = 2n+m weight-1 coordinates,
  // ambient dimension d+1, d_H = d+2.
  static Grading heisenberg(int n, int m);
};

bool operator==(const Grading& a, const Grading& b);

Vec dilate(const Grading& g, double s, const Vec& xi);

// |xi| = (sum_i |xi_i|^{2N/w_i})^{1/(2N)}; the exponents 2N/w_i are even
// integers, so the inside is polynomial and the norm is smooth away from 0.
// Homogeneous of degree 1 under the dilations; Euclidean for the trivial
// grading.
struct QuasiNorm {
  Grading grading;

  QuasiNorm() = default;
  explicit QuasiNorm(Grading g) : grading(std::move(g)) {}

  double operator()(const Vec& xi) const;
  Vec gradient(const Vec& xi) const; // analytic, xi != 0
};

// Surface area of the unit (d-1)-sphere, 2 pi^{d/2} / Gamma(d/2).
// d = 1 gives 2 (two points, counting measure).
double surface_area(int d);

// Quadrature rule on the Euclidean unit sphere S^{d-1}.
struct SphereRule {
  int dim = 0;
  int degree = 0;     // exact for spherical polynomials up to this degree
  Mat nodes;          // one unit vector per row
  Vec weights;        // sum = surface_area(dim)

  int size() const { return static_cast<int>(weights.size()); }

  template <class F>
  auto integrate(F&& f) const {
    decltype(f(Vec{})) acc{};
    for (int i = 0; i < size(); ++i)
      acc += weights[i] * f(Vec(nodes.row(i)));
    return acc;
  }
};

// d=1: the two-point rule; d=2: equispaced trapezoid on the circle;
// d>=3: product of a Gauss rule in the polar cosine (Gauss-Jacobi with the
// (1-t^2)^{(d-3)/2} weight) and a recursive rule on the equatorial sphere.
SphereRule sphere_quadrature(int d, int accuracy_degree);

} // namespace ncres
