#include "ncres/residue.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ncres/extrapolation.hpp"

namespace ncres {

namespace {

constexpr double kDegTol = 1e-9;
constexpr double kAgreeTol = 1e-3; // relative, equivalence checks
constexpr double kCertTol = 1e-4;  // mixed, dilation-cocycle identity

double param_double(const std::map<std::string, std::string>& p, const std::string& key,
                    double dflt) {
  auto it = p.find(key);
  if (it == p.end()) return dflt;
  try {
    size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("make_model: bad numeric value for '" + key + "': '" +
                                it->second + "'");
  }
}

int param_int(const std::map<std::string, std::string>& p, const std::string& key, int dflt) {
  double v = param_double(p, key, static_cast<double>(dflt));
  int i = static_cast<int>(std::lround(v));
  if (std::abs(v - i) > 1e-12)
    throw std::invalid_argument("make_model: parameter '" + key + "' must be an integer");
  return i;
}

std::string param_str(const std::map<std::string, std::string>& p, const std::string& key,
                      const std::string& dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

Vec param_vec(const std::map<std::string, std::string>& p, const std::string& key, int dim,
              const Vec& dflt) {
  auto it = p.find(key);
  if (it == p.end()) return dflt;
  std::vector<double> vals;
  std::stringstream ss(it->second);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      vals.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("make_model: bad vector component in '" + key + "': '" +
                                  tok + "'");
    }
  }
  if (static_cast<int>(vals.size()) != dim)
    throw std::invalid_argument("make_model: parameter '" + key + "' needs " +
                                std::to_string(dim) + " components");
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = vals[i];
  return v;
}

// Degree-0 angular profiles on the Euclidean sphere, extended homogeneously.
SymbolFn angular_profile(const std::string& profile, int d) {
  if (profile == "one") return [](const Vec&, const Vec&) -> cplx { return 1.0; };
  if (profile == "axis")
    return [](const Vec&, const Vec& z) -> cplx { return z[0] / z.norm(); };
  if (profile == "cos2") {
    if (d < 2) throw std::invalid_argument("make_model: profile 'cos2' needs dim >= 2");
    return [](const Vec&, const Vec& z) -> cplx {
      return (z[0] * z[0] - z[1] * z[1]) / z.squaredNorm();
    };
  }
  if (profile == "pair") {
    if (d < 2) throw std::invalid_argument("make_model: profile 'pair' needs dim >= 2");
    return [](const Vec&, const Vec& z) -> cplx { return z[0] * z[1] / z.squaredNorm(); };
  }
  if (profile == "mix") {
    if (d == 1)
      return [](const Vec&, const Vec& z) -> cplx { return 1.0 + 0.5 * (z[0] > 0 ? 1.0 : -1.0); };
    return [](const Vec&, const Vec& z) -> cplx {
      const double r = z.norm();
      return 1.0 + 0.5 * z[0] / r + 0.25 * (z[0] * z[0] - z[1] * z[1]) / (r * r);
    };
  }
  throw std::invalid_argument("make_model: unknown angular profile '" + profile + "'");
}

// Smooth compactly supported spatial factor.
std::function<double(const Vec&)> spatial_profile(const std::map<std::string, std::string>& p,
                                                  int d) {
  const std::string kind = param_str(p, "xprofile", "const");
  const double p0 = param_double(p, "p0", 1.0);
  if (kind == "const") return [p0](const Vec&) { return p0; };
  if (kind == "bump" || kind == "bump2") {
    const Vec c1 = param_vec(p, "center", d, Vec::Zero(d));
    const double R = param_double(p, "radius", 0.5);
    if (!(R > 0)) throw std::invalid_argument("make_model: radius must be positive");
    auto bump = [R](const Vec& x, const Vec& c) -> double {
      const double Q = (x - c).squaredNorm() / (R * R);
      return Q >= 1.0 ? 0.0 : std::exp(-Q / (1.0 - Q));
    };
    if (kind == "bump") return [p0, c1, bump](const Vec& x) { return p0 * bump(x, c1); };
    const Vec c2 = param_vec(p, "center2", d, Vec::Zero(d));
    return [p0, c1, c2, bump](const Vec& x) { return p0 * (bump(x, c1) + bump(x, c2)); };
  }
  throw std::invalid_argument("make_model: unknown xprofile '" + kind + "'");
}

double axial_graded_norm(const Vec& xi) {
  double rp = 0.0;
  for (int i = 1; i < xi.size(); ++i) rp += xi[i] * xi[i];
  return std::pow(xi[0] * xi[0] + rp * rp, 0.25);
}

SymbolFn graded_power_profile(const std::string& variant, double m) {
  if (variant == "plain")
    return [m](const Vec&, const Vec& xi) -> cplx { return std::pow(axial_graded_norm(xi), m); };
  if (variant == "odd")
    return [m](const Vec&, const Vec& xi) -> cplx {
      return xi[1] * std::pow(axial_graded_norm(xi), m - 1.0);
    };
  if (variant == "mixed")
    return [m](const Vec&, const Vec& xi) -> cplx {
      const double q = axial_graded_norm(xi);
      return std::pow(q, m) + xi[1] * std::pow(q, m - 1.0);
    };
  throw std::invalid_argument("make_model: unknown variant '" + variant + "'");
}

int trivial_dim(const std::map<std::string, std::string>& p) {
  const int d = param_int(p, "dim", 2);
  if (d < 1 || d > 3)
    throw std::invalid_argument("make_model: dim must be 1, 2, or 3");
  return d;
}

} // namespace

bool OperatorModel::has_symbol() const { return !symbol.terms.empty(); }
bool OperatorModel::has_kernel() const { return !kernel.terms.empty(); }
bool OperatorModel::critical() const {
  return std::abs(order + grading.homogeneous_dim()) < kDegTol;
}

std::vector<std::string> catalog_names() {
  return {"log_kernel", "homog0",           "norm_power",
          "graded_norm_power", "bessel_potential", "gaussian"};
}

OperatorModel make_model(const std::string& name,
                         const std::map<std::string, std::string>& params) {
  OperatorModel P;
  P.name = name;

  if (name == "log_kernel") {
    const int d = trivial_dim(params);
    P.grading = Grading::trivial(d);
    P.order = -d;
    auto xf = spatial_profile(params, d);
    SymbolFn logc = [xf](const Vec& x, const Vec&) -> cplx { return xf(x); };
    PseudoHomogeneousTerm k0;
    k0.grading = P.grading;
    k0.degree = 0.0;
    k0.log_coeff = logc;
    P.kernel = KernelExpansion{P.grading, 0.0, {k0}};
    const double cd = -std::pow(2.0 * pi, d) / surface_area(d);
    HomogeneousTerm a;
    a.grading = P.grading;
    a.degree = -d;
    a.h = [xf, cd, d](const Vec& x, const Vec& xi) -> cplx {
      return xf(x) * cd * std::pow(xi.norm(), -d);
    };
    P.symbol = PolySymbol{P.grading, static_cast<double>(-d), {a}};
  } else if (name == "homog0") {
    const int d = trivial_dim(params);
    P.grading = Grading::trivial(d);
    P.order = -d;
    SymbolFn f0 = angular_profile(param_str(params, "profile", "axis"), d);
    const double scale = param_double(params, "p0", 1.0);
    PseudoHomogeneousTerm k0;
    k0.grading = P.grading;
    k0.degree = 0.0;
    k0.f = [f0, scale](const Vec& x, const Vec& z) -> cplx { return scale * f0(x, z); };
    P.kernel = KernelExpansion{P.grading, 0.0, {k0}};
  } else if (name == "norm_power") {
    const int d = trivial_dim(params);
    P.grading = Grading::trivial(d);
    const double m = param_double(params, "m", -d);
    if (m > -d + kDegTol)
      throw std::invalid_argument("make_model: norm_power order must be <= -dim");
    P.order = m;
    HomogeneousTerm a;
    a.grading = P.grading;
    a.degree = m;
    a.h = [m](const Vec&, const Vec& xi) -> cplx { return std::pow(xi.norm(), m); };
    P.symbol = PolySymbol{P.grading, m, {a}};
    if (std::abs(m + d) < kDegTol) {
      PseudoHomogeneousTerm k0;
      k0.grading = P.grading;
      k0.degree = 0.0;
      const double c = -surface_area(d) / std::pow(2.0 * pi, d);
      k0.log_coeff = [c](const Vec&, const Vec&) -> cplx { return c; };
      P.kernel = KernelExpansion{P.grading, 0.0, {k0}};
    } else if (std::abs(m + d + 1) < kDegTol) {
      // |xi|^{-d-1} = FT(|z| / c_d) with c_d = -2^d pi^{(d-1)/2} Gamma((d+1)/2)
      const double cd =
          -std::pow(2.0, d) * std::pow(pi, 0.5 * (d - 1)) * std::tgamma(0.5 * (d + 1));
      PseudoHomogeneousTerm k1;
      k1.grading = P.grading;
      k1.degree = 1.0;
      k1.f = [cd](const Vec&, const Vec& z) -> cplx { return z.norm() / cd; };
      P.kernel = KernelExpansion{P.grading, 1.0, {k1}};
    }
  } else if (name == "graded_norm_power") {
    const int n = param_int(params, "n", 1);
    const int mab = param_int(params, "mab", 0);
    P.grading = Grading::heisenberg(n, mab);
    const double dH = P.grading.homogeneous_dim();
    const double m = param_double(params, "m", -dH);
    if (m > -dH + kDegTol)
      throw std::invalid_argument("make_model: graded_norm_power order must be <= -d_H");
    P.order = m;
    HomogeneousTerm a;
    a.grading = P.grading;
    a.degree = m;
    a.h = graded_power_profile(param_str(params, "variant", "plain"), m);
    P.symbol = PolySymbol{P.grading, m, {a}};
  } else if (name == "bessel_potential") {
    const int d = trivial_dim(params);
    P.grading = Grading::trivial(d);
    const int m = param_int(params, "m", -d);
    const int J = param_int(params, "J", 3);
    if (m > -d)
      throw std::invalid_argument("make_model: bessel_potential order must be <= -dim");
    P.order = m;
    P.symbol = bessel_potential_expansion(m, d, J);
    if (m == -d) {
      PseudoHomogeneousTerm k0;
      k0.grading = P.grading;
      k0.degree = 0.0;
      const double c = -surface_area(d) / std::pow(2.0 * pi, d);
      k0.log_coeff = [c](const Vec&, const Vec&) -> cplx { return c; };
      P.kernel = KernelExpansion{P.grading, 0.0, {k0}};
    }
  } else if (name == "gaussian") {
    const int d = trivial_dim(params);
    P.grading = Grading::trivial(d);
    P.order = -d - 1; // continuous kernel, below the critical order
    PseudoHomogeneousTerm k;
    k.grading = P.grading;
    k.degree = 0.0; // 0 modulo Schwartz: the homogeneous part vanishes
    k.f = [](const Vec&, const Vec& z) -> cplx { return std::exp(-z.squaredNorm()); };
    P.kernel = KernelExpansion{P.grading, 0.0, {k}};
  } else {
    throw std::invalid_argument("make_model: unknown catalog name '" + name + "'");
  }

  P.chi = CutoffFunction(P.grading, 0.5, 1.0);
  return P;
}

cplx wodzicki_residue_at(const OperatorModel& P, const Vec& x, const SphereRule& rule,
                         const ResidueOptions& opt) {
  if (!P.grading.is_trivial())
    throw std::invalid_argument("wodzicki_residue_at: trivial gradings only");
  const int d = P.dim();
  if (rule.dim != d) throw std::invalid_argument("wodzicki_residue_at: rule dimension mismatch");
  if (P.order < -d - kDegTol) return {0.0, 0.0};

  const double norm = std::pow(2.0 * pi, -d);
  if (const HomogeneousTerm* a = P.symbol.term_of_degree(-d)) {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < rule.size(); ++j)
      acc += rule.weights[j] * a->h(x, rule.nodes.row(j).transpose());
    return norm * acc;
  }
  if (const PseudoHomogeneousTerm* k0 = P.kernel.term_of_degree(0.0)) {
    SymbolValue sv =
        sphere_averaged_symbol(*k0, x, P.chi, opt.t_sequence, rule, opt.fourier);
    return norm * sv.value;
  }
  throw std::runtime_error(
      "wodzicki_residue_at: no degree-(-d) symbol term or degree-0 kernel term");
}

namespace {

std::function<cplx(const Vec&)> kernel_closure(const OperatorModel& P, const Vec& x,
                                               bool critical_term_only) {
  if (critical_term_only) {
    const PseudoHomogeneousTerm* k0 = P.kernel.term_of_degree(0.0);
    if (!k0)
      throw std::runtime_error("groupoidal_residue_at: degree-0 kernel term missing");
    return [k0 = *k0, x](const Vec& v) { return k0.value(x, v); };
  }
  return [terms = P.kernel.terms, x](const Vec& v) {
    cplx acc{0.0, 0.0};
    for (const auto& t : terms) acc += t.value(x, v);
    return acc;
  };
}

CocycleSample run_cocycle(const OperatorModel& P, double s,
                          const std::function<cplx(const Vec&)>& k,
                          const ResidueOptions& opt) {
  if (!(s > 0.0) || std::abs(std::log(s)) < 1e-12)
    throw std::invalid_argument("cocycle: scale must be positive and distinct from 1");
  const Grading& g = P.grading;
  QuasiNorm q{g};

  Vec e = opt.v_direction.size() == g.dim() ? opt.v_direction : Vec::Ones(g.dim());
  e = dilate(g, 1.0 / q(e), e); // quasi-norm normalized ray

  std::vector<double> radii = opt.v_radii;
  if (radii.empty()) {
    const int kmin = std::max(
        3, static_cast<int>(std::ceil(std::log2(2.0 * std::max(s, 1.0 / s)))));
    for (int kk = kmin; kk < kmin + 8; ++kk) radii.push_back(std::pow(2.0, -kk));
  }

  CocycleSample out;
  out.s = s;
  out.v_radii = radii;
  out.F_values.reserve(radii.size());
  for (double r : radii) {
    const Vec v = dilate(g, r, e);
    const Vec w = dilate(g, 1.0 / s, v);
    out.F_values.push_back(P.chi(w) * k(w) - P.chi(v) * k(v));
  }
  LimitFit fit = neville_limit(radii, out.F_values);
  out.F_at_zero = fit.value;
  out.extrapolation_error = fit.error_estimate;
  out.converged = fit.converged;
  return out;
}

} // namespace

CocycleSample cocycle_sample(const OperatorModel& P, const Vec& x, double s,
                             const ResidueOptions& opt) {
  if (!P.has_kernel()) throw std::runtime_error("cocycle_sample: kernel data missing");
  const bool crit = P.critical() && P.kernel.term_of_degree(0.0) != nullptr;
  return run_cocycle(P, s, kernel_closure(P, x, crit), opt);
}

GroupoidalResult groupoidal_residue_at(const OperatorModel& P, const Vec& x,
                                       const ResidueOptions& opt) {
  GroupoidalResult R;
  const double dH = P.grading.homogeneous_dim();

  if (P.order < -dH - kDegTol) {
    // Below the critical order the kernel is continuous at 0 and the cocycle
    // vanishes; run it anyway as a consistency check when data is present.
    R.short_circuit = true;
    R.value = {0.0, 0.0};
    double worst = 0.0;
    if (P.has_kernel()) {
      auto k = kernel_closure(P, x, false);
      for (double s : opt.s_set) {
        CocycleSample cs = run_cocycle(P, s, k, opt);
        worst = std::max(worst, std::abs(cs.F_at_zero) / std::abs(std::log(s)));
        R.samples.push_back(std::move(cs));
      }
    }
    R.spread = worst;
    R.error_estimate = worst;
    R.accepted = worst <= opt.tolerance;
    return R;
  }

  if (!P.kernel.term_of_degree(0.0))
    throw std::runtime_error("groupoidal_residue_at: degree-0 kernel term missing");
  auto k = kernel_closure(P, x, true);

  std::vector<cplx> estimates;
  std::vector<double> errors;
  for (double s : opt.s_set) {
    CocycleSample cs = run_cocycle(P, s, k, opt);
    const double ls = std::log(s);
    estimates.push_back(cs.F_at_zero / ls);
    errors.push_back(cs.extrapolation_error / std::abs(ls));
    R.samples.push_back(std::move(cs));
  }

  double wsum = 0.0;
  cplx acc{0.0, 0.0};
  for (size_t i = 0; i < estimates.size(); ++i) {
    const double scale = 1.0 + std::abs(estimates[i]);
    const double err = std::max(errors[i], 1e-15 * scale);
    const double w = 1.0 / (err * err);
    acc += w * estimates[i];
    wsum += w;
  }
  R.value = acc / wsum;
  for (size_t i = 0; i < estimates.size(); ++i)
    for (size_t j = i + 1; j < estimates.size(); ++j)
      R.spread = std::max(R.spread, std::abs(estimates[i] - estimates[j]));
  R.error_estimate = R.spread;
  for (double e : errors) R.error_estimate = std::max(R.error_estimate, e);
  R.accepted = R.spread <= opt.tolerance * (1.0 + std::abs(R.value));
  return R;
}

cplx ponge_residue_at(const OperatorModel& P, const Vec& x, const SphereRule& rule) {
  if (P.grading.is_trivial())
    throw std::invalid_argument("ponge_residue_at: needs a graded (Heisenberg) model");
  const int dim = P.dim();
  if (rule.dim != dim) throw std::invalid_argument("ponge_residue_at: rule dimension mismatch");
  const double dH = P.grading.homogeneous_dim();
  if (P.order < -dH - kDegTol) return {0.0, 0.0};

  const HomogeneousTerm* u = P.symbol.term_of_degree(-dH);
  if (!u) throw std::runtime_error("ponge_residue_at: degree-(-d_H) symbol term missing");
  cplx acc{0.0, 0.0};
  for (int j = 0; j < rule.size(); ++j)
    acc += rule.weights[j] * u->h(x, rule.nodes.row(j).transpose());
  return std::pow(2.0 * pi, -dim) * acc;
}

EquivReport ponge_groupoidal_equiv(const OperatorModel& P, const Vec& x,
                                   const ResidueOptions& opt) {
  if (P.grading.is_trivial())
    throw std::invalid_argument("ponge_groupoidal_equiv: needs a graded model");
  const int dim = P.dim();
  const double dH = P.grading.homogeneous_dim();

  EquivReport rep;
  const SphereRule rule_p = sphere_quadrature(dim, opt.sphere_degree);
  const SphereRule rule_g = sphere_quadrature(dim, opt.sphere_degree + 8);
  rep.ponge = ponge_residue_at(P, x, rule_p);

  if (P.order < -dH - kDegTol) {
    rep.groupoidal = {0.0, 0.0};
    rep.agreement_error = std::abs(rep.ponge - rep.groupoidal) / (1.0 + std::abs(rep.ponge));
    rep.agree = rep.agreement_error <= kAgreeTol;
    rep.certified = true; // no critical term: nothing to certify
    return rep;
  }

  const HomogeneousTerm* u = P.symbol.term_of_degree(-dH);
  if (!u) throw std::runtime_error("ponge_groupoidal_equiv: critical symbol term missing");
  ExtendedHomogeneousDistribution U;
  U.grading = P.grading;
  U.degree = -dH;
  U.profile = [u, x](const Vec& xi) { return u->h(x, xi); };

  rep.c0_value = c0(U, rule_g);
  rep.graded_angular_constant = cocycle_constant(U, rule_g);
  rep.groupoidal = std::pow(2.0 * pi, -dim) * rep.c0_value;
  rep.agreement_error = std::abs(rep.ponge - rep.groupoidal) / (1.0 + std::abs(rep.ponge));
  rep.agree = rep.agreement_error <= kAgreeTol;

  const TestFunction phi = default_bump(P.grading);
  const double phi0 = phi.value_at_zero;
  const double cert_scale = 1.0 + std::abs(rep.c0_value * phi0);
  rep.certified = true;
  for (double s : opt.s_set) {
    const cplx coc = dilation_cocycle(U, s, phi);
    const cplx target = std::pow(s, -dH) * std::log(s) * rep.c0_value * phi0;
    const double err = std::abs(coc - target) / cert_scale;
    rep.s_values.push_back(s);
    rep.certification_errors.push_back(err);
    if (err > kCertTol) rep.certified = false;
  }
  return rep;
}

bool ResidueReport::pass() const {
  if (!note.empty()) return false;
  if (has_groupoidal && !groupoidal.short_circuit && !groupoidal.accepted) return false;
  return agree;
}

ResidueReport residue_report_at(const OperatorModel& P, const Vec& x,
                                const ResidueOptions& opt) {
  ResidueReport rep;
  rep.x = x;
  auto record = [&rep](const std::string& method, const std::exception& e) {
    if (!rep.note.empty()) rep.note += "; ";
    rep.note += method + ": " + e.what();
  };

  if (P.grading.is_trivial()) {
    const SphereRule rule = sphere_quadrature(P.dim(), opt.sphere_degree);
    try {
      rep.wodzicki = wodzicki_residue_at(P, x, rule, opt);
      rep.has_wodzicki = true;
    } catch (const std::exception& e) {
      record("wodzicki", e);
    }
    if (P.has_kernel()) {
      try {
        rep.groupoidal = groupoidal_residue_at(P, x, opt);
        rep.has_groupoidal = true;
      } catch (const std::exception& e) {
        record("groupoidal", e);
      }
    }
    if (rep.has_wodzicki && rep.has_groupoidal) {
      rep.agreement_error = std::abs(rep.wodzicki - rep.groupoidal.value);
      rep.agree =
          rep.agreement_error <= kAgreeTol * (1.0 + std::abs(rep.groupoidal.value));
    }
    return rep;
  }

  try {
    rep.equiv = ponge_groupoidal_equiv(P, x, opt);
    rep.has_equiv = true;
    rep.ponge = rep.equiv.ponge;
    rep.has_ponge = true;
    rep.groupoidal.value = rep.equiv.groupoidal;
    rep.groupoidal.accepted = rep.equiv.agree;
    rep.groupoidal.short_circuit = P.order < -P.grading.homogeneous_dim() - kDegTol;
    rep.has_groupoidal = true;
    rep.agreement_error = rep.equiv.agreement_error;
    rep.agree = rep.equiv.agree;
  } catch (const std::exception& e) {
    record("equivalence", e);
    try {
      const SphereRule rule = sphere_quadrature(P.dim(), opt.sphere_degree);
      rep.ponge = ponge_residue_at(P, x, rule);
      rep.has_ponge = true;
    } catch (const std::exception& e2) {
      record("ponge", e2);
    }
  }
  return rep;
}

cplx global_residue(const OperatorModel& P, const Vec& lo, const Vec& hi, int pts,
                    const SphereRule& rule, const ResidueOptions& opt) {
  const int d = P.dim();
  if (lo.size() != d || hi.size() != d)
    throw std::invalid_argument("global_residue: region dimension mismatch");
  if (pts < 2) throw std::invalid_argument("global_residue: need at least 2 points per axis");
  for (int i = 0; i < d; ++i)
    if (!(hi[i] > lo[i])) throw std::invalid_argument("global_residue: empty region");

  long N = 1;
  for (int i = 0; i < d; ++i) N *= pts;
  if (N > (1L << 22)) throw std::invalid_argument("global_residue: region grid too large");

  double cell = 1.0;
  for (int i = 0; i < d; ++i) cell *= (hi[i] - lo[i]) / (pts - 1);

  std::vector<cplx> density(static_cast<size_t>(N));
#pragma omp parallel for schedule(dynamic, 8)
  for (long f = 0; f < N; ++f) {
    Vec xp(d);
    long rest = f;
    for (int i = d - 1; i >= 0; --i) {
      const long idx = rest % pts;
      rest /= pts;
      xp[i] = lo[i] + (hi[i] - lo[i]) * static_cast<double>(idx) / (pts - 1);
    }
    density[static_cast<size_t>(f)] = wodzicki_residue_at(P, xp, rule, opt);
  }

  double vmax = 0.0, bmax = 0.0;
  cplx acc{0.0, 0.0};
  for (long f = 0; f < N; ++f) {
    double w = 1.0;
    long rest = f;
    bool boundary = false;
    for (int i = 0; i < d; ++i) {
      const long idx = rest % pts;
      rest /= pts;
      if (idx == 0 || idx == pts - 1) {
        w *= 0.5;
        boundary = true;
      }
    }
    const cplx v = density[static_cast<size_t>(f)];
    vmax = std::max(vmax, std::abs(v));
    if (boundary) bmax = std::max(bmax, std::abs(v));
    acc += w * v;
  }
  if (vmax > 0.0 && bmax > 1e-9 * vmax)
    throw std::runtime_error("global_residue: support overflow, density reaches the region edge");
  return acc * cell;
}

double representative_invariance_check(const OperatorModel& P, const Vec& x,
                                       const std::function<cplx(const Vec&)>& perturbation,
                                       const ResidueOptions& opt) {
  const GroupoidalResult base = groupoidal_residue_at(P, x, opt);

  OperatorModel Q = P;
  bool patched = false;
  for (auto& t : Q.kernel.terms) {
    if (std::abs(t.degree) < kDegTol) {
      SymbolFn f = t.f;
      t.f = [f, perturbation](const Vec& xp, const Vec& z) -> cplx {
        return (f ? f(xp, z) : cplx{0.0, 0.0}) + perturbation(z);
      };
      patched = true;
      break;
    }
  }
  if (!patched)
    throw std::runtime_error("representative_invariance_check: degree-0 kernel term missing");
  const GroupoidalResult shifted = groupoidal_residue_at(Q, x, opt);
  return std::abs(shifted.value - base.value);
}

namespace {

cplx cocycle_value_at_zero(const OperatorModel& P, const Vec& x, double s,
                           const ResidueOptions& opt) {
  if (std::abs(std::log(s)) < 1e-12) return {0.0, 0.0}; // F_1 = 0 identically
  return cocycle_sample(P, x, s, opt).F_at_zero;
}

} // namespace

double cocycle_homomorphism_check(const OperatorModel& P, const Vec& x, double s,
                                  double t, const ResidueOptions& opt) {
  if (!(s > 0.0) || !(t > 0.0))
    throw std::invalid_argument("cocycle_homomorphism_check: scales must be positive");
  const cplx Fst = cocycle_value_at_zero(P, x, s * t, opt);
  const cplx Fs = cocycle_value_at_zero(P, x, s, opt);
  const cplx Ft = cocycle_value_at_zero(P, x, t, opt);
  return std::abs(Fst - Fs - Ft);
}

} // namespace ncres
