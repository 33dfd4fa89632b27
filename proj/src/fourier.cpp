#include <cmath>
#include <stdexcept>
#include <vector>

#include "ncres/bessel.hpp"
#include "ncres/quadrature.hpp"
#include "ncres/symbols.hpp"

namespace ncres {

namespace {

const cplx I{0.0, 1.0};

cplx ipow_minus_i(int n) {
  switch (n & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

struct Frame {
  Vec e1, e2, e3;
};

Frame orthonormal_frame(const Vec& xi) {
  Frame fr;
  fr.e1 = xi / xi.norm();
  const int d = static_cast<int>(xi.size());
  if (d == 2) {
    fr.e2 = Vec(2);
    fr.e2 << -fr.e1[1], fr.e1[0];
  } else if (d == 3) {
    int axis = 0;
    for (int c = 1; c < 3; ++c)
      if (std::abs(fr.e1[c]) < std::abs(fr.e1[axis])) axis = c;
    Vec a = Vec::Zero(3);
    a[axis] = 1.0;
    fr.e2 = a - a.dot(fr.e1) * fr.e1;
    fr.e2 /= fr.e2.norm();
    fr.e3 = Vec(3);
    fr.e3 << fr.e1[1] * fr.e2[2] - fr.e1[2] * fr.e2[1],
        fr.e1[2] * fr.e2[0] - fr.e1[0] * fr.e2[2],
        fr.e1[0] * fr.e2[1] - fr.e1[1] * fr.e2[0];
  }
  return fr;
}

// Legendre values P_0..P_kmax at u.
void legendre_column(int kmax, double u, double* out) {
  out[0] = 1.0;
  if (kmax >= 1) out[1] = u;
  for (int k = 1; k < kmax; ++k)
    out[k + 1] = ((2.0 * k + 1.0) * u * out[k] - k * out[k - 1]) / (k + 1.0);
}

SymbolValue weighted_t_limit(const std::vector<double>& t_sequence,
                             const CutoffFunction& psi, const PanelRule& rr,
                             const std::vector<cplx>& F) {
  SymbolValue out;
  for (double t : t_sequence) {
    cplx acc{0.0, 0.0};
    for (size_t i = 0; i < rr.size(); ++i)
      acc += rr.w[i] * psi.profile(rr.x[i] / t) * F[i];
    out.t_values.push_back(acc);
  }
  const LimitFit fit = aitken_limit(out.t_values);
  out.value = fit.value;
  out.error_estimate = fit.error_estimate;
  out.converged = fit.converged;
  return out;
}

void require_trivial(const Grading& g, const char* op) {
  if (!g.is_trivial())
    throw std::invalid_argument(std::string(op) +
                                ": only defined for trivial gradings");
}

} // namespace

SymbolValue kernel_term_to_symbol_term(const PseudoHomogeneousTerm& k_term,
                                       const Vec& x, const CutoffFunction& psi,
                                       const std::vector<double>& t_sequence,
                                       const Vec& xi, const FourierOptions& opt) {
  require_trivial(k_term.grading, "kernel_term_to_symbol_term");
  const int d = k_term.grading.dim();
  if (d < 1 || d > 3)
    throw std::invalid_argument("kernel_term_to_symbol_term: d must be 1, 2 or 3");
  if (xi.size() != d) throw std::invalid_argument("kernel_term_to_symbol_term: bad xi");
  const double q = xi.norm();
  if (!(q > 0.0)) throw std::invalid_argument("kernel_term_to_symbol_term: xi = 0");
  if (t_sequence.empty())
    throw std::invalid_argument("kernel_term_to_symbol_term: empty t_sequence");

  const double rmax = t_sequence.back() * psi.r1;
  const int levels = d == 1 ? 40 : opt.geometric_levels;
  const PanelRule rr =
      paneled_rule(radial_edges(rmax, q, opt.panel_fraction, levels), opt.gauss_order);
  const long nr = static_cast<long>(rr.size());
  std::vector<cplx> F(nr);

  if (d == 1) {
    const double e = xi[0] > 0 ? 1.0 : -1.0;
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < nr; ++i) {
      const double r = rr.x[i];
      Vec zp(1), zm(1);
      zp << e * r;
      zm << -e * r;
      const double phase = q * r;
      F[i] = k_term.value(x, zp) * std::exp(-I * phase) +
             k_term.value(x, zm) * std::exp(I * phase);
    }
  } else if (d == 2) {
    const Frame fr = orthonormal_frame(xi);
    const int M = opt.max_modes;
    const int na = std::max(64, 4 * M);
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < nr; ++i) {
      const double r = rr.x[i];
      const std::vector<double> jm = bessel_j_array(M, q * r);
      cplx acc{0.0, 0.0};
      for (int j = 0; j < na; ++j) {
        const double a = 2.0 * pi * j / na;
        const Vec z = r * (std::cos(a) * fr.e1 + std::sin(a) * fr.e2);
        // circle moments: int e^{i m a} e^{-i lam cos a} da = 2 pi (-i)^{|m|} J_{|m|}
        cplx wgt{jm[0], 0.0};
        for (int m = 1; m <= M; ++m)
          wgt += 2.0 * ipow_minus_i(m) * jm[m] * std::cos(m * a);
        acc += k_term.value(x, z) * wgt;
      }
      F[i] = r * (2.0 * pi / na) * acc;
    }
  } else {
    const Frame fr = orthonormal_frame(xi);
    const int K = opt.max_modes;
    const int npol = std::max(8, K);
    const int naz = opt.azimuthal_points;
    const GaussRule gl = gauss_legendre(npol);
    Mat P(K + 1, npol);
    for (int i = 0; i < npol; ++i) legendre_column(K, gl.nodes[i], P.col(i).data());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < nr; ++i) {
      const double r = rr.x[i];
      const std::vector<double> jk = sph_bessel_array(K, q * r);
      std::vector<cplx> h(npol); // azimuthal integral at each polar node
      for (int p = 0; p < npol; ++p) {
        const double u = gl.nodes[p];
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        cplx az{0.0, 0.0};
        for (int j = 0; j < naz; ++j) {
          const double a = 2.0 * pi * j / naz;
          const Vec z =
              r * (u * fr.e1 + s * (std::cos(a) * fr.e2 + std::sin(a) * fr.e3));
          az += k_term.value(x, z);
        }
        h[p] = (2.0 * pi / naz) * az;
      }
      cplx acc{0.0, 0.0};
      for (int k = 0; k <= K; ++k) {
        cplx ck{0.0, 0.0};
        for (int p = 0; p < npol; ++p) ck += gl.weights[p] * P(k, p) * h[p];
        ck *= 0.5 * (2.0 * k + 1.0);
        // polar moments: int_{-1}^{1} P_k(u) e^{-i lam u} du = 2 (-i)^k j_k(lam)
        acc += ck * 2.0 * ipow_minus_i(k) * jk[k];
      }
      F[i] = r * r * acc;
    }
  }

  return weighted_t_limit(t_sequence, psi, rr, F);
}

SymbolValue sphere_averaged_symbol(const PseudoHomogeneousTerm& k_term, const Vec& x,
                                   const CutoffFunction& psi,
                                   const std::vector<double>& t_sequence,
                                   const SphereRule& rule, const FourierOptions& opt) {
  require_trivial(k_term.grading, "sphere_averaged_symbol");
  const int d = k_term.grading.dim();
  if (d != rule.dim)
    throw std::invalid_argument("sphere_averaged_symbol: rule dimension mismatch");
  if (d < 1 || d > 3)
    throw std::invalid_argument("sphere_averaged_symbol: d must be 1, 2 or 3");
  if (t_sequence.empty())
    throw std::invalid_argument("sphere_averaged_symbol: empty t_sequence");

  const double rmax = t_sequence.back() * psi.r1;
  const int levels = d == 1 ? 40 : opt.geometric_levels;
  const PanelRule rr =
      paneled_rule(radial_edges(rmax, 1.0, opt.panel_fraction, levels), opt.gauss_order);
  const long nr = static_cast<long>(rr.size());
  std::vector<cplx> F(nr);

#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < nr; ++i) {
    const double r = rr.x[i];
    cplx ring{0.0, 0.0};
    for (int j = 0; j < rule.size(); ++j)
      ring += rule.weights[j] * k_term.value(x, Vec(r * rule.nodes.row(j).transpose()));
    F[i] = std::pow(r, d - 1) * sphere_phase_average(d, r) * ring;
  }

  return weighted_t_limit(t_sequence, psi, rr, F);
}

} // namespace ncres
