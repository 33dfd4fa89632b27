#include "ncres/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ncres/homog_dist.hpp"
#include "ncres/osculating.hpp"
#include "ncres/quadrature.hpp"

namespace ncres {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult check(const std::string& name, double measured, double tol,
                  const VerifyOptions& opt, const std::string& detail = {}) {
  CheckResult c;
  c.name = name;
  c.measured = measured;
  c.tolerance = std::max(tol, opt.tol_floor);
  c.pass = measured <= c.tolerance;
  c.detail = detail;
  return c;
}

Vec diag_direction(int d) {
  Vec e = Vec::Ones(d);
  return e / e.norm();
}

Vec random_point(std::mt19937_64& rng, int d, double box) {
  std::uniform_real_distribution<double> U(-box, box);
  Vec x(d);
  for (int i = 0; i < d; ++i) x[i] = U(rng);
  return x;
}

// --- ft: Fourier limits of critical kernel terms ---------------------------

void suite_ft(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  const std::vector<double> ts{64.0, 128.0, 256.0, 512.0};
  for (int d : {1, 2, 3}) {
    const Grading g = Grading::trivial(d);
    const CutoffFunction psi(g, 0.5, 1.0);
    PseudoHomogeneousTerm log_term;
    log_term.grading = g;
    log_term.degree = 0.0;
    log_term.log_coeff = [](const Vec&, const Vec&) -> cplx { return 1.0; };

    const Vec x0 = Vec::Zero(d);
    const Vec dir = diag_direction(d);
    double worst = 0.0;
    for (double r : {1.0, 2.0, 4.0}) {
      const Vec xi = r * dir;
      const SymbolValue sv = kernel_term_to_symbol_term(log_term, x0, psi, ts, xi);
      const double target = ft_log(d, xi);
      worst = std::max(worst, std::abs(sv.value - target) / std::abs(target));
    }
    out.push_back(check("ft_log_closed_form_d" + std::to_string(d), worst, 1e-3, opt,
                        "max relative error over |xi| in {1,2,4}"));
  }

  // mean-zero angular part of the degree-0 catalog profiles; the profiles are
  // low-degree spherical polynomials, so a light angular rule is exact and the
  // Fourier accuracy only has to resolve the 1e-3 scale
  GrafakosOptions gopt;
  gopt.omega_radii = {1.0, 2.0};
  gopt.t_sequence = {64.0, 128.0, 256.0};
  gopt.sphere_degree = 10;
  struct Probe {
    const char* profile;
    int d;
  };
  for (const Probe& pr : {Probe{"axis", 2}, Probe{"cos2", 2}, Probe{"pair", 3}}) {
    const OperatorModel P =
        make_model("homog0", {{"dim", std::to_string(pr.d)}, {"profile", pr.profile}});
    const PseudoHomogeneousTerm* k0 = P.kernel.term_of_degree(0.0);
    HomogeneousTerm f0;
    f0.grading = P.grading;
    f0.degree = 0.0;
    f0.h = k0->f;
    const AngularDecomposition dec = grafakos_decompose(f0, Vec::Zero(pr.d), gopt);
    const double scale = std::max(dec.max_abs_omega, 1e-12);
    out.push_back(check(std::string("grafakos_mean_zero_") + pr.profile + "_d" +
                            std::to_string(pr.d),
                        std::abs(dec.omega_mean_integral) / scale, 1e-3, opt,
                        "|int Omega| / max|Omega|, b = " + fmt(dec.b.real())));
  }

  // fitted delta coefficient on the radial profile: FT(1) has no angular
  // part, b = (2 pi)^d * (angular mean 1)
  {
    const OperatorModel P = make_model("homog0", {{"dim", "2"}, {"profile", "one"}});
    HomogeneousTerm f0;
    f0.grading = P.grading;
    f0.degree = 0.0;
    f0.h = P.kernel.term_of_degree(0.0)->f;
    const AngularDecomposition dec = grafakos_decompose(f0, Vec::Zero(2), gopt);
    const double target = std::pow(2.0 * pi, 2);
    out.push_back(check("grafakos_b_radial_d2",
                        std::abs(dec.b - target) / target, 5e-3, opt,
                        "b = " + fmt(dec.b.real()) + " vs (2 pi)^2"));
  }
}

// --- cocycle: log-homomorphism, invariance, s-independence ------------------

void suite_cocycle(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  const OperatorModel P = make_model("log_kernel", {{"dim", "2"}});
  const Vec x0 = Vec::Zero(2);
  ResidueOptions ropt;
  ropt.seed = static_cast<unsigned>(opt.seed);

  const CocycleSample F2 = cocycle_sample(P, x0, 2.0, ropt);
  const CocycleSample F4 = cocycle_sample(P, x0, 4.0, ropt);
  out.push_back(check("cocycle_log_linearity",
                      std::abs(F4.F_at_zero - 2.0 * F2.F_at_zero) /
                          (1.0 + std::abs(F2.F_at_zero)),
                      1e-8, opt, "F_4(0) vs 2 F_2(0)"));

  out.push_back(check("cocycle_identity_scale",
                      cocycle_homomorphism_check(P, x0, 2.0, 0.5, ropt) /
                          (1.0 + std::abs(F2.F_at_zero)),
                      1e-8, opt, "F_1(0) = 0 at s t = 1"));

  {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> L(std::log(0.25), std::log(4.0));
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double s = std::exp(L(rng));
      const double t = std::exp(L(rng));
      const double delta = cocycle_homomorphism_check(P, x0, s, t, ropt);
      const double scale = 1.0 + std::abs(cocycle_sample(P, x0, s, ropt).F_at_zero);
      worst = std::max(worst, delta / scale);
    }
    out.push_back(check("cocycle_homomorphism_random20", worst, 1e-8, opt,
                        "s, t log-uniform in [1/4, 4]"));
  }

  {
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_real_distribution<double> C(-0.3, 0.3), W(0.4, 0.8), A(0.5, 2.0);
    std::bernoulli_distribution sign;
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const Vec c = random_point(rng, 2, 0.3);
      const double w = W(rng);
      const double a = (sign(rng) ? 1.0 : -1.0) * A(rng);
      auto pert = [c, w, a](const Vec& z) -> cplx {
        return a * std::exp(-(z - c).squaredNorm() / (w * w));
      };
      worst = std::max(worst, representative_invariance_check(P, x0, pert, ropt));
    }
    out.push_back(check("representative_invariance", worst, 1e-6, opt,
                        "5 Gaussian kernel perturbations"));
  }

  {
    const std::pair<const char*, std::map<std::string, std::string>> cases[] = {
        {"log_kernel", {{"dim", "2"}, {"p0", "1.5"}}},
        {"norm_power", {{"dim", "2"}, {"m", "-2"}}},
    };
    for (const auto& [name, params] : cases) {
      const GroupoidalResult r = groupoidal_residue_at(make_model(name, params), x0, ropt);
      out.push_back(check(std::string("s_independence_") + name,
                          r.spread / (1.0 + std::abs(r.value)), 1e-6, opt,
                          "spread over s in {1/3, 1/2, 2, 3}"));
    }
  }

  // dilation cocycle of the canonical extension against its angular constant
  {
    ExtendedHomogeneousDistribution U;
    U.grading = Grading::trivial(2);
    U.degree = -2.0;
    U.profile = [](const Vec& xi) -> cplx { return 1.0 / xi.squaredNorm(); };
    const TestFunction phi = default_bump(U.grading);
    const SphereRule rule = sphere_quadrature(2, 40);
    const cplx k = c0(U, rule);
    double worst = 0.0;
    for (double s : {0.5, 2.0, 3.0}) {
      const cplx target = std::pow(s, -2.0) * std::log(s) * k * phi.value_at_zero;
      worst = std::max(worst, std::abs(dilation_cocycle(U, s, phi) - target));
    }
    out.push_back(check("dilation_cocycle_trivial", worst / (1.0 + std::abs(k)),
                        1e-4, opt, "|xi|^{-2}, sphere constant " + fmt(k.real())));
  }
  {
    const OperatorModel M = make_model("graded_norm_power", {{"n", "1"}, {"m", "-4"}});
    const HomogeneousTerm& a = M.symbol.terms[0];
    ExtendedHomogeneousDistribution U;
    U.grading = M.grading;
    U.degree = -4.0;
    const Vec xg = Vec::Zero(3);
    U.profile = [&a, xg](const Vec& xi) { return a.h(xg, xi); };
    const TestFunction phi = default_bump(U.grading);
    const SphereRule rule = sphere_quadrature(3, 40);
    const cplx kc = cocycle_constant(U, rule);
    const cplx ks = c0(U, rule);
    double worst = 0.0;
    for (double s : {0.5, 2.0, 3.0}) {
      const cplx target = std::pow(s, -4.0) * std::log(s) * kc * phi.value_at_zero;
      worst = std::max(worst, std::abs(dilation_cocycle(U, s, phi) - target));
    }
    out.push_back(check("dilation_cocycle_graded", worst / (1.0 + std::abs(kc)), 1e-4,
                        opt,
                        "cocycle constant " + fmt(kc.real()) + ", sphere constant " +
                            fmt(ks.real())));
  }
}

// --- conv: group structure and the fiberwise convolution engine -------------

void suite_conv(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  {
    double worst = 0.0;
    for (int d = 1; d <= 10; ++d) {
      const double target = 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
      worst = std::max(worst, std::abs(surface_area(d) - target));
    }
    out.push_back(check("surface_area_closed_form", worst, 1e-12, opt, "d <= 10"));
  }

  struct Case {
    const char* label;
    OsculatingGroup G;
  };
  const Case cases[] = {
      {"abelian3", OsculatingGroup::abelian(3)},
      {"heisenberg1", OsculatingGroup::heisenberg(1, 0)},
      {"heisenberg2x1", OsculatingGroup::heisenberg(2, 1)},
  };
  for (const Case& c : cases) {
    std::mt19937_64 rng(opt.seed + 2);
    std::uniform_real_distribution<double> S(0.25, 4.0);
    const int dim = c.G.dim();
    const QuasiNorm q(c.G.grading);
    double law = 0.0, norm_h = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Vec a = random_point(rng, dim, 2.0);
      const Vec b = random_point(rng, dim, 2.0);
      const Vec cc = random_point(rng, dim, 2.0);
      const double s = S(rng);
      law = std::max(law, (group_law(c.G, group_law(c.G, a, b), cc) -
                           group_law(c.G, a, group_law(c.G, b, cc)))
                              .cwiseAbs()
                              .maxCoeff());
      law = std::max(law,
                     group_law(c.G, a, group_inverse(c.G, a)).cwiseAbs().maxCoeff());
      law = std::max(law, (group_law(c.G, a, group_identity(c.G)) - a)
                              .cwiseAbs()
                              .maxCoeff());
      law = std::max(law, (group_dilate(c.G, s, group_law(c.G, a, b)) -
                           group_law(c.G, group_dilate(c.G, s, a),
                                     group_dilate(c.G, s, b)))
                              .cwiseAbs()
                              .maxCoeff());
      norm_h = std::max(norm_h,
                        std::abs(q(dilate(c.G.grading, s, a)) - s * q(a)));
    }
    out.push_back(check(std::string("group_structure_") + c.label, law, 1e-12, opt,
                        "associativity, inverse, identity, dilation morphism"));
    out.push_back(check(std::string("quasinorm_homogeneity_") + c.label, norm_h,
                        1e-12, opt, "1000 samples"));
  }

  // convolution against the closed-form Gaussian convolution (abelian)
  {
    const OsculatingGroup G = OsculatingGroup::abelian(2);
    const double a = 0.2, b = 0.25;
    auto ga = [a](const Vec& z) -> cplx { return std::exp(-z.squaredNorm() / (a * a)); };
    auto gb = [b](const Vec& z) -> cplx { return std::exp(-z.squaredNorm() / (b * b)); };
    const GridFunction f = sample_grid(2, 1.0, 64, ga);
    const GridFunction g = sample_grid(2, 1.0, 64, gb);
    const double s2 = a * a + b * b;
    auto closed_form = [&](const Vec& xq) {
      return pi * a * a * b * b / s2 * std::exp(-xq.squaredNorm() / s2);
    };
    Vec on_grid(2), off_grid(2);
    on_grid << 0.125, -0.0625; // multiples of h = 1/32: no interpolation error
    off_grid << 0.1, -0.05;
    out.push_back(check(
        "convolution_gaussian_on_grid",
        std::abs(convolve_at(G, f, g, on_grid).real() - closed_form(on_grid)) /
            closed_form(on_grid),
        1e-6, opt, "abelian(2), 64^2 grid, grid-aligned point"));
    out.push_back(check(
        "convolution_gaussian_interpolated",
        std::abs(convolve_at(G, f, g, off_grid).real() - closed_form(off_grid)) /
            closed_form(off_grid),
        1e-2, opt, "abelian(2), 64^2 grid, multilinear O(h^2) point"));
  }

  const OsculatingGroup H = OsculatingGroup::heisenberg(1, 0);
  auto bump3 = [](const Vec& c, double w) {
    return [c, w](const Vec& z) -> cplx {
      return std::exp(-(z - c).squaredNorm() / (w * w));
    };
  };
  auto abs_grid = [](GridFunction f) {
    for (auto& v : f.values) v = std::abs(v);
    return f;
  };
  std::mt19937_64 rng(opt.seed + 3);
  std::uniform_real_distribution<double> C(-0.1, 0.1), W(0.12, 0.18);

  auto commutator_err = [&](int npts, const Vec& c1, const Vec& c2, double w1,
                            double w2) {
    const GridFunction f = sample_grid(3, 1.0, npts, bump3(c1, w1));
    const GridFunction g = sample_grid(3, 1.0, npts, bump3(c2, w2));
    const double scale =
        std::abs(convolve_at(H, abs_grid(f), abs_grid(g), group_identity(H)));
    return std::abs(commutator_at_identity(H, f, g)) / scale;
  };
  auto trace_err = [&](int npts, const Vec c[4], const double w[4]) {
    GridFunction q[4] = {sample_grid(3, 1.0, npts, bump3(c[0], w[0])),
                         sample_grid(3, 1.0, npts, bump3(c[1], w[1])),
                         sample_grid(3, 1.0, npts, bump3(c[2], w[2])),
                         sample_grid(3, 1.0, npts, bump3(c[3], w[3]))};
    const double scale = std::abs(
        convolve_at(H, abs_grid(q[0]), abs_grid(q[3]), group_identity(H)));
    return std::abs(trace_engine(H, q[0], q[1], q[2], q[3])) / scale;
  };

  {
    Vec c1(3), c2(3);
    for (int i = 0; i < 3; ++i) {
      c1[i] = C(rng);
      c2[i] = C(rng);
    }
    const double w1 = W(rng), w2 = W(rng);
    const double e64 = commutator_err(64, c1, c2, w1, w2);
    const double e32 = commutator_err(32, c1, c2, w1, w2);
    out.push_back(check("commutator_at_identity_h1", e64, 1e-6, opt,
                        "Gaussian bumps, 64^3 grid"));
    out.push_back(check("commutator_refinement", e64, std::max(2.0 * e32, 1e-12),
                        opt, "64^3 vs 32^3: " + fmt(e64) + " vs " + fmt(e32)));
  }

  {
    double worst64 = 0.0, worst32 = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      Vec c[4];
      double w[4];
      for (int j = 0; j < 4; ++j) {
        c[j] = Vec(3);
        for (int i = 0; i < 3; ++i) c[j][i] = C(rng);
        w[j] = W(rng);
      }
      worst64 = std::max(worst64, trace_err(64, c, w));
      worst32 = std::max(worst32, trace_err(32, c, w));
    }
    out.push_back(
        check("trace_engine_h1", worst64, 1e-6, opt, "3 Gaussian quadruples, 64^3"));
    out.push_back(check("trace_engine_refinement", worst64,
                        std::max(2.0 * worst32, 1e-12), opt,
                        "64^3 vs 32^3: " + fmt(worst64) + " vs " + fmt(worst32)));
  }
}

// --- equivalence: the two classical/groupoidal equality theorems ------------

void suite_equivalence(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  ResidueOptions ropt;
  ropt.seed = static_cast<unsigned>(opt.seed);
  std::mt19937_64 rng(opt.seed + 4);

  const std::map<int, std::vector<std::string>> homog_profiles = {
      {1, {"one", "axis", "mix"}},
      {2, {"cos2", "axis", "mix"}},
      {3, {"pair", "axis", "mix"}},
  };

  for (int d : {1, 2, 3}) {
    const SphereRule rule = sphere_quadrature(d, ropt.sphere_degree);
    std::vector<Vec> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(random_point(rng, d, 0.4));

    std::vector<std::pair<std::string, OperatorModel>> models;
    models.emplace_back("log_kernel",
                        make_model("log_kernel", {{"dim", std::to_string(d)},
                                                  {"xprofile", "bump"},
                                                  {"p0", "1.3"},
                                                  {"radius", "0.8"}}));
    for (const std::string& prof : homog_profiles.at(d))
      models.emplace_back("homog0_" + prof,
                          make_model("homog0", {{"dim", std::to_string(d)},
                                                {"profile", prof}}));
    models.emplace_back("bessel_potential",
                        make_model("bessel_potential", {{"dim", std::to_string(d)},
                                                        {"m", std::to_string(-d)}}));
    models.emplace_back("norm_power_smooth",
                        make_model("norm_power", {{"dim", std::to_string(d)},
                                                  {"m", std::to_string(-d - 1)}}));

    for (const auto& [label, M] : models) {
      double agree = 0.0, flat = 0.0;
      for (const Vec& x : pts) {
        const cplx w = wodzicki_residue_at(M, x, rule, ropt);
        const GroupoidalResult g = groupoidal_residue_at(M, x, ropt);
        agree = std::max(agree,
                         std::abs(w - g.value) / (1.0 + std::abs(g.value)));
        if (label.rfind("homog0", 0) == 0) flat = std::max(flat, std::abs(w));
      }
      out.push_back(check("equiv_trivial_" + label + "_d" + std::to_string(d), agree,
                          1e-3, opt, "max over 5 base points"));
      if (label.rfind("homog0", 0) == 0)
        out.push_back(check("vanishing_residue_" + label + "_d" + std::to_string(d),
                            flat, 1e-6, opt, "degree-0 kernels have residue 0"));
    }

    // the log kernel's residue is exactly minus its coefficient
    {
      const OperatorModel M = make_model(
          "log_kernel", {{"dim", std::to_string(d)}, {"p0", "1.3"}});
      double worst = 0.0;
      for (const Vec& x : pts) {
        const cplx w = wodzicki_residue_at(M, x, rule, ropt);
        worst = std::max(worst, std::abs(w - cplx(-1.3, 0.0)));
      }
      out.push_back(check("log_kernel_exact_d" + std::to_string(d), worst, 1e-6,
                          opt, "residue = -p0"));
    }
  }

  // graded: symbol-side groupoidal route against the graded sphere integral
  for (const char* variant : {"plain", "odd", "mixed"}) {
    const OperatorModel M = make_model(
        "graded_norm_power", {{"n", "1"}, {"m", "-4"}, {"variant", variant}});
    const EquivReport rep = ponge_groupoidal_equiv(M, Vec::Zero(3), ropt);
    out.push_back(check(std::string("equiv_graded_") + variant, rep.agreement_error,
                        1e-3, opt,
                        "ponge " + fmt(rep.ponge.real()) + ", groupoidal " +
                            fmt(rep.groupoidal.real())));
  }
  {
    const OperatorModel M =
        make_model("graded_norm_power", {{"n", "1"}, {"mab", "1"}, {"m", "-5"}});
    const EquivReport rep = ponge_groupoidal_equiv(M, Vec::Zero(4), ropt);
    out.push_back(check("equiv_graded_h1xR", rep.agreement_error, 1e-3, opt,
                        "ponge " + fmt(rep.ponge.real())));
  }

  // axially symmetric graded norm power reduces to a 1-D polar integral
  {
    const OperatorModel M = make_model("graded_norm_power", {{"n", "1"}, {"m", "-4"}});
    const cplx ponge =
        ponge_residue_at(M, Vec::Zero(3), sphere_quadrature(3, ropt.sphere_degree));
    const GaussRule gr = gauss_legendre(64);
    double polar = 0.0;
    for (int i = 0; i < gr.nodes.size(); ++i) {
      const double t = gr.nodes[i];
      const double rho2 = 1.0 - t * t;
      polar += gr.weights[i] / (t * t + rho2 * rho2);
    }
    const double oracle = std::pow(2.0 * pi, -3) * 2.0 * pi * polar;
    out.push_back(check("ponge_polar_oracle",
                        std::abs(ponge - oracle) / std::abs(oracle), 1e-6, opt,
                        "1-D polar reduction " + fmt(oracle)));
  }
}

} // namespace

std::vector<std::string> verify_suite_names() {
  return {"ft", "cocycle", "conv", "equivalence", "all"};
}

std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  if (suite == "ft") {
    suite_ft(out, opt);
  } else if (suite == "cocycle") {
    suite_cocycle(out, opt);
  } else if (suite == "conv") {
    suite_conv(out, opt);
  } else if (suite == "equivalence") {
    suite_equivalence(out, opt);
  } else if (suite == "all") {
    suite_ft(out, opt);
    suite_cocycle(out, opt);
    suite_conv(out, opt);
    suite_equivalence(out, opt);
  } else {
    throw std::invalid_argument("run_verify_suite: unknown suite '" + suite +
                                "' (expected ft, cocycle, conv, equivalence, all)");
  }
  return out;
}

} // namespace ncres
