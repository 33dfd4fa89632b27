#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncres/homog_dist.hpp"
#include "ncres/symbols.hpp"

namespace ncres {

// A model operator: symbol and/or kernel expansion data in model coordinates,
// with the declared order m <= -d_H tying the two through the degree shift
// kappa = -m - d_H.
struct OperatorModel {
  std::string name;
  Grading grading;
  double box_extent = 1.0; // base domain U = [-extent, extent]^dim
  PolySymbol symbol;
  KernelExpansion kernel;
  CutoffFunction chi;
  double order = 0.0;

  int dim() const { return grading.dim(); }
  bool has_symbol() const;
  bool has_kernel() const;
  bool critical() const; // order == -d_H
};

// Catalog constructor. Recognized names: log_kernel, homog0, norm_power,
// graded_norm_power, bessel_potential, gaussian. Parameters are string
// key=value pairs (dim, m, J, profile, variant, p0, xprofile, center, radius,
// center2, n, mab). Unknown names or bad parameters throw with the offending
// token.
OperatorModel make_model(const std::string& name,
                         const std::map<std::string, std::string>& params = {});
std::vector<std::string> catalog_names();

struct ResidueOptions {
  int sphere_degree = 30;
  std::vector<double> s_set{1.0 / 3.0, 0.5, 2.0, 3.0};
  std::vector<double> v_radii;              // default 2^{-k}, k chosen per s
  Vec v_direction;                          // default: normalized all-ones ray
  std::vector<double> t_sequence{256.0, 512.0, 1024.0, 2048.0};
  FourierOptions fourier{};
  double tolerance = 1e-6; // accepted s-spread: tolerance * (1 + |value|)
  unsigned seed = 12345;
};

// One scale of the zoom cocycle F_s(v) = chi(d_{1/s}v) k0(x, d_{1/s}v)
// - chi(v) k0(x, v), evaluated along a v-sequence shrinking to 0 and
// extrapolated; the per-scale residue estimate is F_s(0) / log(s).
struct CocycleSample {
  double s = 0.0;
  std::vector<double> v_radii;
  std::vector<cplx> F_values;
  cplx F_at_zero{0.0, 0.0};
  double extrapolation_error = 0.0;
  bool converged = false;
};

struct GroupoidalResult {
  cplx value{0.0, 0.0};
  double spread = 0.0;         // max deviation between per-s estimates
  double error_estimate = 0.0;
  bool accepted = false;       // spread within tolerance
  bool short_circuit = false;  // order below critical: value forced to 0
  std::vector<CocycleSample> samples;
};

// (1/(2pi)^d) int_{S^{d-1}} a_{-d}(x, xi) dsigma. Trivial gradings. The
// degree-(-d) symbol term is used directly when present; otherwise it is
// produced from the degree-0 kernel term by the truncated-FT limit (sphere
// averaged). Orders below -d return 0.
cplx wodzicki_residue_at(const OperatorModel& P, const Vec& x, const SphereRule& rule,
                         const ResidueOptions& opt = {});

// Zoom-cocycle residue from the degree-0 kernel term; error-weighted mean
// over s_set with the spread reported. Orders below critical short-circuit to
// 0 but still run the cocycle as a consistency check when kernel data exists.
GroupoidalResult groupoidal_residue_at(const OperatorModel& P, const Vec& x,
                                       const ResidueOptions& opt = {});

// (1/(2pi)^{dim}) int_{S^{dim-1}} p_{-d_H}(x, xi) dsigma over the Euclidean
// unit sphere of the ambient space (the model-coordinate density |dPsi_x| = 1).
// Heisenberg gradings.
cplx ponge_residue_at(const OperatorModel& P, const Vec& x, const SphereRule& rule);

struct EquivReport {
  cplx ponge{0.0, 0.0};
  cplx groupoidal{0.0, 0.0}; // symbol-side value (1/(2pi)^dim) c0(u0')
  double agreement_error = 0.0;
  bool agree = false;

  // per-s certification of the dilation-cocycle identity with c0
  std::vector<double> s_values;
  std::vector<double> certification_errors; // mixed: |delta|/(1+|c0 phi0|)
  bool certified = false;
  cplx c0_value{0.0, 0.0};
  cplx graded_angular_constant{0.0, 0.0}; // the constant the cocycle produces
};

// Compares ponge_residue_at with the symbol-side groupoidal residue and
// certifies the log-cocycle identity for each s. Certification failure is
// reported separately from disagreement.
EquivReport ponge_groupoidal_equiv(const OperatorModel& P, const Vec& x,
                                   const ResidueOptions& opt = {});

// Every method applicable to the grading at one base point, with the
// cross-method agreement checked at 1e-3 * (1 + |value|). A method that
// cannot run (no kernel data, say) is marked absent and explained in `note`
// instead of aborting the report.
struct ResidueReport {
  Vec x;
  bool has_wodzicki = false;
  cplx wodzicki{0.0, 0.0};
  bool has_ponge = false;
  cplx ponge{0.0, 0.0};
  bool has_groupoidal = false;
  GroupoidalResult groupoidal;
  bool has_equiv = false;
  EquivReport equiv;             // graded gradings: symbol-side route + certification
  double agreement_error = 0.0;  // |classical - groupoidal| when both ran
  bool agree = true;
  std::string note;

  bool pass() const; // every method ran, fits accepted, methods agree
};

ResidueReport residue_report_at(const OperatorModel& P, const Vec& x,
                                const ResidueOptions& opt = {});

// Trapezoidal integral of x -> wodzicki_residue_at(P, x) over the box
// [lo, hi] with pts points per axis; the density must be supported inside.
cplx global_residue(const OperatorModel& P, const Vec& lo, const Vec& hi, int pts,
                    const SphereRule& rule, const ResidueOptions& opt = {});

// |groupoidal(k0 + perturbation) - groupoidal(k0)|.
double representative_invariance_check(const OperatorModel& P, const Vec& x,
                                       const std::function<cplx(const Vec&)>& perturbation,
                                       const ResidueOptions& opt = {});

// |F_{st}(0) - F_s(0) - F_t(0)|.
double cocycle_homomorphism_check(const OperatorModel& P, const Vec& x, double s,
                                  double t, const ResidueOptions& opt = {});

// F_s(0) for one scale (the building block of the checks above).
CocycleSample cocycle_sample(const OperatorModel& P, const Vec& x, double s,
                             const ResidueOptions& opt = {});

} // namespace ncres
