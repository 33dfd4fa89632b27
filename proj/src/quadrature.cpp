#include "ncres/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncres {

GaussRule gauss_jacobi_sym(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("gauss rule: n must be >= 1");
  if (alpha <= -1.0) throw std::invalid_argument("gauss rule: alpha must be > -1");

  // Golub-Welsch on the symmetric Jacobi recurrence.
  Mat J = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double num = k * (k + 2.0 * alpha);
    const double den = (2.0 * k + 2.0 * alpha + 1.0) * (2.0 * k + 2.0 * alpha - 1.0);
    const double b = std::sqrt(num / den);
    J(k - 1, k) = b;
    J(k, k - 1) = b;
  }
  const double mu0 =
      std::exp(0.5 * std::log(pi) + std::lgamma(alpha + 1.0) - std::lgamma(alpha + 1.5));

  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  GaussRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = Vec(n);
  for (int i = 0; i < n; ++i) {
    const double v = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

GaussRule gauss_legendre(int n) { return gauss_jacobi_sym(n, 0.0); }

PanelRule paneled_rule(const std::vector<double>& edges, int gauss_order) {
  if (edges.size() < 2) throw std::invalid_argument("paneled_rule: need >= 2 edges");
  const GaussRule g = gauss_legendre(gauss_order);
  PanelRule out;
  out.x.reserve((edges.size() - 1) * gauss_order);
  out.w.reserve((edges.size() - 1) * gauss_order);
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p], b = edges[p + 1];
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < gauss_order; ++i) {
      out.x.push_back(mid + half * g.nodes[i]);
      out.w.push_back(half * g.weights[i]);
    }
  }
  return out;
}

std::vector<double> radial_edges(double b, double osc_freq, double panel_fraction,
                                 int geometric_levels) {
  if (!(b > 0.0)) throw std::invalid_argument("radial_edges: empty interval");
  std::vector<double> edges;
  edges.push_back(0.0);
  const double u = std::min(1.0, b);
  for (int k = geometric_levels; k >= 0; --k) edges.push_back(u * std::ldexp(1.0, -k));
  if (b > u) {
    const double w =
        std::min(1.0, 2.0 * pi / (panel_fraction * std::max(osc_freq, 0.5)));
    const int np = static_cast<int>(std::ceil((b - u) / w));
    for (int i = 1; i <= np; ++i) edges.push_back(u + (b - u) * i / np);
  }
  return edges;
}

std::vector<double> edge_aligned_edges(double a, double b,
                                       const std::vector<double>& breakpoints) {
  if (!(b > a)) throw std::invalid_argument("edge_aligned_edges: empty interval");
  std::vector<double> cuts{a, b};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  static const double frac[] = {0.0,        1.0 / 64, 1.0 / 16, 1.0 / 4, 1.0 / 2,
                                3.0 / 4,    15.0 / 16, 63.0 / 64, 1.0};
  std::vector<double> edges;
  for (size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double lo = cuts[p], hi = cuts[p + 1];
    for (double f : frac) {
      const double e = lo + (hi - lo) * f;
      if (edges.empty() || e > edges.back()) edges.push_back(e);
    }
  }
  return edges;
}

} // namespace ncres
