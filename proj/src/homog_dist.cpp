#include "ncres/homog_dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ncres/bessel.hpp"
#include "ncres/extrapolation.hpp"
#include "ncres/quadrature.hpp"

namespace ncres {

namespace {

constexpr double kCriticalTol = 1e-9;

// Smallest lambda > 0 with q(lambda * omega) = 1; q is strictly increasing
// along Euclidean rays, so safeguarded Newton from 1/q(omega) converges.
double ray_cross(const QuasiNorm& q, const Vec& omega) {
  double lam = 1.0 / q(omega);
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 80; ++it) {
    Vec p = lam * omega;
    double val = q(p) - 1.0;
    if (std::abs(val) < 1e-14) return lam;
    if (val > 0.0)
      hi = std::min(hi, lam);
    else
      lo = std::max(lo, lam);
    double slope = omega.dot(q.gradient(p));
    double next = lam - val / slope;
    if (!(next > lo) || !(next < hi))
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * lam;
    lam = next;
  }
  if (std::abs(q(lam * omega) - 1.0) > 1e-10)
    throw std::runtime_error("ray_cross: Newton iteration failed to converge");
  return lam;
}

// Jacobian of graded polar coordinates v = delta_rho(theta(omega)) against
// rho^{d_H - 1} d rho d sigma(omega): lambda^{d-1} / <omega, grad q(theta)>.
double angular_density(const QuasiNorm& q, const Vec& omega, double lambda) {
  const int d = static_cast<int>(omega.size());
  Vec theta = lambda * omega;
  double slope = omega.dot(q.gradient(theta));
  return std::pow(lambda, d - 1) / slope;
}

std::vector<double> scaled_breakpoints(const TestFunction& phi, double scale) {
  std::vector<double> b;
  b.reserve(phi.radial_breakpoints.size());
  for (double r : phi.radial_breakpoints) b.push_back(scale * r);
  return b;
}

} // namespace

TestFunction default_bump(const Grading& g, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("default_bump: radius must be positive");
  QuasiNorm q{g};
  const double expo = 2.0 * static_cast<double>(g.lcm_exponent());
  TestFunction phi;
  phi.grading = g;
  phi.value_at_zero = 1.0;
  phi.support_radius = radius;
  phi.radial_breakpoints = {0.5 * radius, radius};
  phi.eval = [q, radius, expo](const Vec& v) -> double {
    double Q = std::pow(q(v) / radius, expo);
    if (Q >= 1.0) return 0.0;
    return std::exp(-Q / (1.0 - Q));
  };
  return phi;
}

bool ExtendedHomogeneousDistribution::critical() const {
  return std::abs(degree + static_cast<double>(grading.homogeneous_dim())) < kCriticalTol;
}

cplx pair(const ExtendedHomogeneousDistribution& u, const TestFunction& phi,
          const PairOptions& opt) {
  const Grading& g = u.grading;
  if (!(phi.grading == g))
    throw std::invalid_argument("pair: test function and distribution use different gradings");
  const int d = g.dim();
  const double dH = static_cast<double>(g.homogeneous_dim());
  const bool critical = u.critical();
  if (!critical && u.degree < -dH + kCriticalTol)
    throw std::invalid_argument("pair: degree below critical is not locally integrable");

  const QuasiNorm q{g};
  const SphereRule rule = sphere_quadrature(d, opt.sphere_degree);
  const double Rq = phi.support_radius;
  const std::vector<double> breaks = phi.radial_breakpoints;
  const double phi0 = phi.value_at_zero;

  // Radial rules shared across sphere nodes (integrand depends on the node
  // only through the smooth factor phi(delta_rho theta)).
  std::vector<double> edges1 = edge_aligned_edges(0.0, std::min(1.0, Rq), breaks);
  if (!critical) {
    // rho^{degree + d_H - 1} is singular-integrable at 0: geometric refinement.
    double head = edges1[1];
    std::vector<double> geo;
    for (int k = 36; k >= 1; --k) geo.push_back(head * std::pow(2.0, -k));
    edges1.insert(edges1.begin() + 1, geo.begin(), geo.end());
  }
  const PanelRule inner = paneled_rule(edges1, opt.gauss_order);
  PanelRule outer;
  if (Rq > 1.0) outer = paneled_rule(edge_aligned_edges(1.0, Rq, breaks), opt.gauss_order);

  cplx acc{0.0, 0.0};
  for (int j = 0; j < rule.size(); ++j) {
    const Vec omega = rule.nodes.row(j).transpose();
    const double lam = ray_cross(q, omega);
    const Vec theta = lam * omega;
    const double K = angular_density(q, omega, lam);
    const cplx uval = u.profile(theta);
    if (uval == cplx{0.0, 0.0}) continue;

    auto phi_at = [&](double rho) { return phi.eval(dilate(g, rho, theta)); };
    cplx radial{0.0, 0.0};
    if (critical) {
      radial += inner.integrate([&](double rho) -> cplx {
        return (phi_at(rho) - phi0) / rho;
      });
      if (Rq > 1.0)
        radial += outer.integrate([&](double rho) -> cplx { return phi_at(rho) / rho; });
    } else {
      const double pw = u.degree + dH - 1.0;
      radial += inner.integrate(
          [&](double rho) -> cplx { return phi_at(rho) * std::pow(rho, pw); });
      if (Rq > 1.0)
        radial += outer.integrate(
            [&](double rho) -> cplx { return phi_at(rho) * std::pow(rho, pw); });
    }
    acc += rule.weights[j] * K * uval * radial;
  }
  if (critical && Rq < 1.0) {
    // The subtraction extends over the whole unit quasi-ball even past the
    // support of phi: add -phi(0) * |graded measure| * int_Rq^1 drho/rho.
    cplx angular{0.0, 0.0};
    for (int j = 0; j < rule.size(); ++j) {
      const Vec omega = rule.nodes.row(j).transpose();
      const double lam = ray_cross(q, omega);
      angular += rule.weights[j] * angular_density(q, omega, lam) * u.profile(lam * omega);
    }
    acc += angular * (-phi0) * std::log(1.0 / Rq);
  }
  return acc;
}

cplx dilation_cocycle(const ExtendedHomogeneousDistribution& u, double s,
                      const TestFunction& phi, const PairOptions& opt) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::invalid_argument("dilation_cocycle: scale must be positive and finite");
  const double dH = static_cast<double>(u.grading.homogeneous_dim());
  TestFunction scaled = phi;
  scaled.support_radius = s * phi.support_radius;
  scaled.radial_breakpoints = scaled_breakpoints(phi, s);
  scaled.eval = [base = phi.eval, g = u.grading, s](const Vec& v) -> double {
    return base(dilate(g, 1.0 / s, v));
  };
  const double fac = std::pow(s, -dH);
  return fac * (pair(u, scaled, opt) - pair(u, phi, opt));
}

cplx c0(const ExtendedHomogeneousDistribution& u, const SphereRule& rule) {
  if (rule.dim != u.grading.dim())
    throw std::invalid_argument("c0: sphere rule dimension mismatch");
  cplx acc{0.0, 0.0};
  for (int j = 0; j < rule.size(); ++j)
    acc += rule.weights[j] * u.profile(rule.nodes.row(j).transpose());
  return acc;
}

cplx cocycle_constant(const ExtendedHomogeneousDistribution& u, const SphereRule& rule) {
  if (rule.dim != u.grading.dim())
    throw std::invalid_argument("cocycle_constant: sphere rule dimension mismatch");
  const auto& w = u.grading.weights;
  cplx acc{0.0, 0.0};
  for (int j = 0; j < rule.size(); ++j) {
    const Vec omega = rule.nodes.row(j).transpose();
    double flux = 0.0;
    for (int i = 0; i < omega.size(); ++i)
      flux += static_cast<double>(w[i]) * omega[i] * omega[i];
    acc += rule.weights[j] * flux * u.profile(omega);
  }
  return acc;
}

double ft_log(int d, const Vec& xi) {
  if (d < 1) throw std::invalid_argument("ft_log: dimension must be >= 1");
  if (xi.size() != d) throw std::invalid_argument("ft_log: argument dimension mismatch");
  const double r = xi.norm();
  if (!(r > 0.0)) throw std::invalid_argument("ft_log: xi must be nonzero");
  return -std::pow(2.0 * pi, d) / (surface_area(d) * std::pow(r, d));
}

namespace {

// FT of the radial bump of the given support radius, evaluated at |z| = r:
// int_0^radius rho^{d-1} phi(rho) B_d(r rho) d rho with B_d the phase average
// over the Euclidean sphere.
double radial_bump_ft(int d, double radius, double r) {
  const int panels = std::max(2, static_cast<int>(std::ceil(radius * r / 6.0)));
  std::vector<double> edges(panels + 1);
  for (int i = 0; i <= panels; ++i) edges[i] = radius * i / panels;
  const PanelRule rule = paneled_rule(edges, 12);
  double acc = 0.0;
  for (size_t i = 0; i < rule.size(); ++i) {
    const double rho = rule.x[i];
    const double u = rho / radius;
    const double Q = u * u;
    const double phi = Q >= 1.0 ? 0.0 : std::exp(-Q / (1.0 - Q));
    acc += rule.w[i] * std::pow(rho, d - 1) * phi * sphere_phase_average(d, r * rho);
  }
  return acc;
}

} // namespace

AngularDecomposition grafakos_decompose(const HomogeneousTerm& f0, const Vec& x,
                                        const GrafakosOptions& opt) {
  const Grading& g = f0.grading;
  if (!g.is_trivial())
    throw std::invalid_argument("grafakos_decompose: requires a trivial grading");
  if (std::abs(f0.degree) > 1e-12)
    throw std::invalid_argument("grafakos_decompose: the symbol term must have degree 0");
  const int d = g.dim();
  if (d > 3) throw std::invalid_argument("grafakos_decompose: dimension must be <= 3");

  const CutoffFunction psi(g, 0.5, 1.0);
  AngularDecomposition out;
  out.rule = sphere_quadrature(d, opt.sphere_degree);
  out.converged = true;

  PseudoHomogeneousTerm term;
  term.grading = g;
  term.degree = 0.0;
  term.f = f0.h;

  // Omega(theta): limit of r^d FT(f0 psi_t)(r theta) over the probe radii,
  // each with the t-sequence rescaled so the resolved phase range matches.
  struct OmegaEval {
    PseudoHomogeneousTerm term;
    Vec x;
    CutoffFunction psi;
    GrafakosOptions opt;
    int d;

    cplx operator()(const Vec& theta, double* err, bool* conv) const {
      cplx acc{0.0, 0.0};
      cplx first{0.0, 0.0};
      double spread = 0.0, ft_err = 0.0;
      bool ok = true;
      for (size_t i = 0; i < opt.omega_radii.size(); ++i) {
        const double r = opt.omega_radii[i];
        std::vector<double> ts = opt.t_sequence;
        for (double& t : ts) t /= r;
        SymbolValue v = kernel_term_to_symbol_term(term, x, psi, ts, r * theta, opt.fourier);
        const cplx val = std::pow(r, d) * v.value;
        ft_err = std::max(ft_err, std::pow(r, d) * v.error_estimate);
        ok = ok && v.converged;
        if (i == 0)
          first = val;
        else
          spread = std::max(spread, std::abs(val - first));
        acc += val;
      }
      if (err) *err = ft_err + spread;
      if (conv) *conv = ok;
      return acc / static_cast<double>(opt.omega_radii.size());
    }
  };
  OmegaEval ev{term, x, psi, opt, d};
  out.omega = [ev](const Vec& theta) { return ev(theta, nullptr, nullptr); };

  out.omega_nodes.resize(out.rule.size());
  double omega_err = 0.0;
  for (int j = 0; j < out.rule.size(); ++j) {
    double e = 0.0;
    bool ok = true;
    const Vec theta = out.rule.nodes.row(j).transpose();
    out.omega_nodes[j] = ev(theta, &e, &ok);
    out.converged = out.converged && ok;
    omega_err = std::max(omega_err, e);
    out.omega_mean_integral += out.rule.weights[j] * out.omega_nodes[j];
    out.max_abs_omega = std::max(out.max_abs_omega, std::abs(out.omega_nodes[j]));
  }

  // b: pairing of the numerical FT with shrinking radial bumps. By Fubini the
  // pairing equals int f0(z) psi(|z|/t) FT(bump)(z) dz; FT(bump) is radial, so
  // the angular factor reduces to the sphere integral of f0.
  cplx sphere_f0{0.0, 0.0};
  for (int j = 0; j < out.rule.size(); ++j)
    sphere_f0 += out.rule.weights[j] * f0(x, out.rule.nodes.row(j).transpose());

  const double r1 = psi.r1;
  std::vector<double> bvals;
  double b_err = 0.0;
  for (double eps : opt.bump_radii) {
    std::vector<cplx> per_t;
    for (double t : opt.bump_t_sequence) {
      const PanelRule rad = paneled_rule(radial_edges(t * r1, 1.0, 6.0, 6), 12);
      double acc = 0.0;
      for (size_t i = 0; i < rad.size(); ++i) {
        const double r = rad.x[i];
        acc += rad.w[i] * std::pow(r, d - 1) * psi.profile(r / t) * radial_bump_ft(d, eps, r);
      }
      per_t.push_back(acc * sphere_f0);
    }
    LimitFit fit = aitken_limit(per_t);
    bvals.push_back(fit.value.real());
    b_err = std::max(b_err, fit.error_estimate);
    out.converged = out.converged && fit.converged;
  }
  std::vector<cplx> bc(bvals.begin(), bvals.end());
  LimitFit bfit = neville_limit(opt.bump_radii, bc);
  out.b = bfit.value;
  out.error_estimate = std::max(omega_err, std::max(b_err, bfit.error_estimate));
  return out;
}

} // namespace ncres
