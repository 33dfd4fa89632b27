#pragma once

#include <functional>
#include <vector>

#include "ncres/grading.hpp"

namespace ncres {

// Model nilpotent group: R^d with either the abelian structure or the
// Heisenberg-type structure H_n x R^m. Coordinates for the latter:
// index 0 the center t (weight 2), then x_1..x_n, y_1..y_n, and m abelian
// coordinates, all of weight 1.
struct OsculatingGroup {
  enum class Kind { Abelian, Heisenberg };

  Kind kind = Kind::Abelian;
  int n = 0;
  int m = 0;
  Grading grading;

  int dim() const { return grading.dim(); }

  static OsculatingGroup abelian(int d);
  static OsculatingGroup heisenberg(int n, int m = 0);
};

Vec group_law(const OsculatingGroup& G, const Vec& a, const Vec& b);
Vec group_inverse(const OsculatingGroup& G, const Vec& a);
Vec group_identity(const OsculatingGroup& G);
Vec group_dilate(const OsculatingGroup& G, double s, const Vec& a);

// Values on the uniform grid of the box [-extent, extent)^dim with npts nodes
// per axis (npts even, so 0 is a node and negation maps interior nodes to
// nodes). Functions are extended by 0 outside the box; sampled data must be
// supported in the interior for the group operations to be meaningful.
struct GridFunction {
  int dim = 0;
  double extent = 0.0;
  int npts = 0;
  std::vector<cplx> values;

  double spacing() const { return 2.0 * extent / npts; }
  double cell_volume() const;
  long total() const;
  Vec node(long flat) const;
  cplx& at(long flat) { return values[static_cast<size_t>(flat)]; }
  const cplx& at(long flat) const { return values[static_cast<size_t>(flat)]; }
};

GridFunction sample_grid(int dim, double extent, int npts,
                         const std::function<cplx(const Vec&)>& fn);

// Multilinear interpolation; 0 outside the box.
cplx interpolate(const GridFunction& f, const Vec& p);

// Largest sup-norm of a node with |value| > rel_tol * max|values|.
double support_radius(const GridFunction& f, double rel_tol = 1e-13);

// Largest |value| on the outermost node layer.
double boundary_sup(const GridFunction& f);

// sum of values * cell volume (= integral against Haar = Lebesgue measure).
cplx grid_integral(const GridFunction& f);

// (f * g)(x) = int f(y) g(y^{-1} x) dy, discretized on the common grid.
// Throws when the product of the supports cannot fit inside the box.
GridFunction convolve(const OsculatingGroup& G, const GridFunction& f,
                      const GridFunction& g);

cplx convolve_at(const OsculatingGroup& G, const GridFunction& f,
                 const GridFunction& g, const Vec& x);

// (f * g - g * f)(e).
cplx commutator_at_identity(const OsculatingGroup& G, const GridFunction& f,
                            const GridFunction& g);

// (kP * g + f * kQ - kQ * f - g * kP)(e): the discrete pairing whose
// continuum limit the residue trace theorems control.
cplx trace_engine(const OsculatingGroup& G, const GridFunction& kP,
                  const GridFunction& kQ, const GridFunction& f,
                  const GridFunction& g);

} // namespace ncres
