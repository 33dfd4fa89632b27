#pragma once

#include <functional>
#include <vector>

#include "ncres/grading.hpp"
#include "ncres/symbols.hpp"

namespace ncres {

// Smooth compactly supported probe; support measured in the quasi-norm of
// `grading` (Euclidean when trivial).
struct TestFunction {
  Grading grading;
  std::function<double(const Vec&)> eval;
  double value_at_zero = 0.0;
  double support_radius = 0.0;
  std::vector<double> radial_breakpoints; // interior smoothness landmarks

  double operator()(const Vec& v) const { return eval(v); }
};

// phi = exp(-Q/(1-Q)) with Q = (|v|/radius)^{2N}: polynomial inside the
// exponential, hence C-infinity everywhere, identically 0 for |v| >= radius.
TestFunction default_bump(const Grading& g, double radius = 1.0);

// Canonically regularized extension of a homogeneous function u of degree
// m <= -d_H (critical m = -d_H: subtract phi(0) inside the unit quasi-ball;
// m > -d_H: absolutely convergent integral).
struct ExtendedHomogeneousDistribution {
  Grading grading;
  double degree = 0.0;
  std::function<cplx(const Vec&)> profile; // evaluable away from 0

  bool critical() const;
};

struct PairOptions {
  int sphere_degree = 30;
  int gauss_order = 16;
};

// <u, phi> = int_{|v|<=1} u (phi - phi(0)) + int_{|v|>1} u phi  (critical case)
// computed in graded polar coordinates; plain integral when degree > -d_H.
cplx pair(const ExtendedHomogeneousDistribution& u, const TestFunction& phi,
          const PairOptions& opt = {});

// <beta_s^* u, phi> - s^{-d_H} <u, phi>  with  <beta_s^* u, phi> :=
// s^{-d_H} <u, phi o delta_{1/s}>. Equals
// s^{-d_H} log(s) cocycle_constant(u) phi(0) for the canonical extension.
cplx dilation_cocycle(const ExtendedHomogeneousDistribution& u, double s,
                      const TestFunction& phi, const PairOptions& opt = {});

// Plain Euclidean unit-sphere integral of the profile.
cplx c0(const ExtendedHomogeneousDistribution& u, const SphereRule& rule);

// Weight-flux integral int_{S^{d-1}} u(w) <W w, w> dsigma(w), W = diag(weights):
// by the coarea formula this is the angular integral of u against the graded
// sphere measure, and it is the constant produced by the dilation cocycle of
// the canonical extension. Coincides with c0 for trivial gradings.
cplx cocycle_constant(const ExtendedHomogeneousDistribution& u, const SphereRule& rule);

// -(2 pi)^d / (omega_d |xi|^d), xi != 0.
double ft_log(int d, const Vec& xi);

// FT(f0 restricted-to-degree-0) = b delta_0 + W_Omega with mean-zero Omega.
struct AngularDecomposition {
  cplx b{0.0, 0.0};
  std::function<cplx(const Vec&)> omega; // evaluable on the unit sphere
  SphereRule rule;                       // where omega was sampled
  std::vector<cplx> omega_nodes;
  cplx omega_mean_integral{0.0, 0.0};
  double max_abs_omega = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

struct GrafakosOptions {
  std::vector<double> omega_radii{1.0, 2.0, 4.0}; // |xi| probes for Omega
  std::vector<double> bump_radii{1.0, 0.5, 0.25}; // shrinking delta probes
  std::vector<double> t_sequence{96.0, 192.0, 384.0};
  std::vector<double> bump_t_sequence{12.0, 24.0, 48.0, 96.0};
  int sphere_degree = 24;
  FourierOptions fourier{};
};

AngularDecomposition grafakos_decompose(const HomogeneousTerm& f0, const Vec& x,
                                        const GrafakosOptions& opt = {});

} // namespace ncres
