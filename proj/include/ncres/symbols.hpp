#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ncres/extrapolation.hpp"
#include "ncres/grading.hpp"

namespace ncres {

using SymbolFn = std::function<cplx(const Vec& x, const Vec& xi)>;

// h(x, xi) with h(x, delta_s xi) = s^m h(x, xi); evaluable away from xi = 0.
struct HomogeneousTerm {
  Grading grading;
  double degree = 0.0;
  SymbolFn h;

  cplx operator()(const Vec& x, const Vec& xi) const { return h(x, xi); }
};

// f(x, xi) + log(|xi|) p(x, xi) with f homogeneous of degree m and p a
// graded-homogeneous polynomial of degree m (p only for integer m >= 0).
struct PseudoHomogeneousTerm {
  Grading grading;
  double degree = 0.0;
  SymbolFn f;        // may be null (zero)
  SymbolFn log_coeff; // p; null when absent

  bool has_log() const { return static_cast<bool>(log_coeff); }
  cplx value(const Vec& x, const Vec& xi) const;
};

// Finite polyhomogeneous expansion a ~ sum_j a_{m-j}; slot j holds the
// degree-(m-j) term (zero slots allowed, h == null).
struct PolySymbol {
  Grading grading;
  double order = 0.0;
  std::vector<HomogeneousTerm> terms;

  const HomogeneousTerm* term_of_degree(double deg, double tol = 1e-9) const;
};

// Finite kernel-side expansion; leading degree kappa = -order - d_H.
struct KernelExpansion {
  Grading grading;
  double leading_degree = 0.0;
  std::vector<PseudoHomogeneousTerm> terms;

  const PseudoHomogeneousTerm* term_of_degree(double deg, double tol = 1e-9) const;
};

// Smooth radial cutoff in the quasi-norm: 1 for |z| <= r0, 0 for |z| >= r1,
// exp(-1/t)-profile transition.
struct CutoffFunction {
  QuasiNorm norm;
  double r0 = 0.5;
  double r1 = 1.0;

  CutoffFunction() = default;
  CutoffFunction(Grading g, double inner, double outer);

  double profile(double r) const; // as a function of the quasi-norm radius
  double operator()(const Vec& z) const { return profile(norm(z)); }
};

double cutoff_eval(const CutoffFunction& chi, const Vec& z);

// Evaluable remainder with declared rapid decay: |value(xi)| (1+|xi|)^k
// bounded for k up to decay_order.
struct SchwartzRemainder {
  Grading grading;
  int decay_order = 0;
  SymbolFn value;
};

struct DecayCheck {
  bool ok = false;
  double max_bound = 0.0; // max over samples of |value| (1+|xi|)^k
};

DecayCheck schwartz_decay_check(const SchwartzRemainder& rem, const Vec& x,
                                double bound, int samples = 64,
                                std::uint64_t seed = 1);

struct HomogeneityCheck {
  bool ok = false;
  double max_deviation = 0.0;
  Vec worst_xi;
  double worst_s = 1.0;
};

// Samples |h(x, delta_s xi) - s^m h(x, xi)| relative to |s^m h(x, xi)|
// (absolute where the reference nearly vanishes).
HomogeneityCheck check_homogeneity(const HomogeneousTerm& term, const Vec& x,
                                   int sample_count, double tol,
                                   std::uint64_t seed = 1);

// First J slots of the binomial expansion of (1 + |xi|^2)^{m/2} in decreasing
// homogeneity; slot j has degree m - j, odd slots are zero terms.
PolySymbol bessel_potential_expansion(int m, int d, int J);

struct FourierOptions {
  int azimuthal_points = 32; // d = 3 non-oscillatory angle
  int max_modes = 24;        // Fourier / Legendre expansion order
  int gauss_order = 12;
  double panel_fraction = 8.0; // radial panels per oscillation wavelength
  int geometric_levels = 12;   // radial refinement toward 0 (40 when d = 1)
};

// One extrapolated Fourier-limit value.
struct SymbolValue {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = false;
  std::vector<cplx> t_values; // raw truncation values along t_sequence
};

std::vector<double> default_t_sequence();

// Symbol value a(x, xi) = lim_{t} int k(x,z) psi(z/t) e^{-i xi . z} dz for a
// kernel term of the critical expansion; trivial gradings only. The limit is
// extrapolated over t_sequence (units of psi's outer radius).
SymbolValue kernel_term_to_symbol_term(const PseudoHomogeneousTerm& k_term,
                                       const Vec& x, const CutoffFunction& psi,
                                       const std::vector<double>& t_sequence,
                                       const Vec& xi,
                                       const FourierOptions& opt = {});

// The same limit integrated over the Euclidean unit sphere in xi:
// int_{S^{d-1}} a(x, theta) dsigma(theta) = lim_t int k(x,z) psi(z/t) B_d(|z|) dz
// with B_d the spherical phase average. This is the quantity the sphere
// residue formulas need, and it is far better conditioned than assembling it
// from pointwise values.
SymbolValue sphere_averaged_symbol(const PseudoHomogeneousTerm& k_term, const Vec& x,
                                   const CutoffFunction& psi,
                                   const std::vector<double>& t_sequence,
                                   const SphereRule& rule,
                                   const FourierOptions& opt = {});

} // namespace ncres
