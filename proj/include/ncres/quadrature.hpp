#pragma once

#include <functional>
#include <vector>

#include "ncres/types.hpp"

namespace ncres {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  Vec nodes;
  Vec weights;
};

GaussRule gauss_legendre(int n);

// Gauss rule for the weight (1-t^2)^alpha on [-1, 1] (Jacobi, symmetric case),
// computed by Golub-Welsch. alpha > -1.
GaussRule gauss_jacobi_sym(int n, double alpha);

// 1-D composite rule: nodes/weights covering [a, b].
struct PanelRule {
  std::vector<double> x;
  std::vector<double> w;

  size_t size() const { return x.size(); }

  template <class F>
  auto integrate(F&& f) const {
    decltype(f(0.0)) acc{};
    for (size_t i = 0; i < x.size(); ++i) acc += w[i] * f(x[i]);
    return acc;
  }
};

// Gauss-Legendre panels on consecutive segments [edges[i], edges[i+1]].
PanelRule paneled_rule(const std::vector<double>& edges, int gauss_order);

// Panel edges for [a, b] whose panel width tracks the oscillation wavelength
// 2*pi/osc_freq (panel_fraction panels per wavelength), with a geometric
// cascade a * 2^{-k} down to a * 2^{-levels} at the left end when a > 0 is
// replaced by 0 (integrable endpoint singularities).
std::vector<double> radial_edges(double b, double osc_freq, double panel_fraction,
                                 int geometric_levels);

// Panel edges for [a, b] aligned to the interior breakpoints (clamped to the
// interval), each panel refined geometrically toward both of its ends; used
// where integrands are smooth but have flat C-infinity transition points.
std::vector<double> edge_aligned_edges(double a, double b,
                                       const std::vector<double>& breakpoints);

} // namespace ncres
