#include "ncres/osculating.hpp"

#include <cmath>
#include <stdexcept>

namespace ncres {

OsculatingGroup OsculatingGroup::abelian(int d) {
  OsculatingGroup G;
  G.kind = Kind::Abelian;
  G.m = d;
  G.grading = Grading::trivial(d);
  return G;
}

OsculatingGroup OsculatingGroup::heisenberg(int n, int m) {
  if (n < 1 || m < 0)
    throw std::invalid_argument("OsculatingGroup::heisenberg: need n >= 1, m >= 0");
  OsculatingGroup G;
  G.kind = Kind::Heisenberg;
  G.n = n;
  G.m = m;
  G.grading = Grading::heisenberg(n, m);
  return G;
}

Vec group_law(const OsculatingGroup& G, const Vec& a, const Vec& b) {
  if (a.size() != G.dim() || b.size() != G.dim())
    throw std::invalid_argument("group_law: dimension mismatch");
  if (G.kind == OsculatingGroup::Kind::Abelian) return a + b;
  Vec out = a + b;
  double twist = 0.0;
  for (int i = 0; i < G.n; ++i)
    twist += a[1 + i] * b[1 + G.n + i] - a[1 + G.n + i] * b[1 + i];
  out[0] += 0.5 * twist;
  return out;
}

Vec group_inverse(const OsculatingGroup& G, const Vec& a) {
  if (a.size() != G.dim())
    throw std::invalid_argument("group_inverse: dimension mismatch");
  return -a; // exact for both structures in these symmetric coordinates
}

Vec group_identity(const OsculatingGroup& G) { return Vec::Zero(G.dim()); }

Vec group_dilate(const OsculatingGroup& G, double s, const Vec& a) {
  return dilate(G.grading, s, a);
}

double GridFunction::cell_volume() const {
  return std::pow(spacing(), dim);
}

long GridFunction::total() const {
  long t = 1;
  for (int i = 0; i < dim; ++i) t *= npts;
  return t;
}

Vec GridFunction::node(long flat) const {
  Vec p(dim);
  const double h = spacing();
  for (int i = dim - 1; i >= 0; --i) {
    p[i] = -extent + static_cast<double>(flat % npts) * h;
    flat /= npts;
  }
  return p;
}

GridFunction sample_grid(int dim, double extent, int npts,
                         const std::function<cplx(const Vec&)>& fn) {
  if (dim < 1 || dim > 6) throw std::invalid_argument("sample_grid: dimension out of range");
  if (npts < 4 || npts % 2 != 0)
    throw std::invalid_argument("sample_grid: npts must be even and >= 4");
  if (!(extent > 0.0)) throw std::invalid_argument("sample_grid: extent must be positive");
  GridFunction f;
  f.dim = dim;
  f.extent = extent;
  f.npts = npts;
  const long N = f.total();
  if (N > (1L << 24)) throw std::invalid_argument("sample_grid: grid too large");
  f.values.resize(static_cast<size_t>(N));
#pragma omp parallel for schedule(static)
  for (long i = 0; i < N; ++i) f.values[static_cast<size_t>(i)] = fn(f.node(i));
  return f;
}

cplx interpolate(const GridFunction& f, const Vec& p) {
  if (p.size() != f.dim) throw std::invalid_argument("interpolate: dimension mismatch");
  const double h = f.spacing();
  int base[6];
  double frac[6];
  for (int i = 0; i < f.dim; ++i) {
    const double u = (p[i] + f.extent) / h;
    const double fl = std::floor(u);
    base[i] = static_cast<int>(fl);
    frac[i] = u - fl;
    if (base[i] < -1 || base[i] > f.npts - 1) return {0.0, 0.0};
  }
  cplx acc{0.0, 0.0};
  const int corners = 1 << f.dim;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    long flat = 0;
    bool inside = true;
    for (int i = 0; i < f.dim; ++i) {
      const int bit = (c >> i) & 1;
      const int idx = base[i] + bit;
      if (idx < 0 || idx >= f.npts) {
        inside = false;
        break;
      }
      w *= bit ? frac[i] : 1.0 - frac[i];
      flat = flat * f.npts + idx;
    }
    if (inside && w != 0.0) acc += w * f.at(flat);
  }
  return acc;
}

double support_radius(const GridFunction& f, double rel_tol) {
  double vmax = 0.0;
  for (const cplx& v : f.values) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) return 0.0;
  const double thresh = rel_tol * vmax;
  double rad = 0.0;
  for (long i = 0; i < f.total(); ++i) {
    if (std::abs(f.at(i)) > thresh) rad = std::max(rad, f.node(i).lpNorm<Eigen::Infinity>());
  }
  return rad;
}

double boundary_sup(const GridFunction& f) {
  double sup = 0.0;
  for (long i = 0; i < f.total(); ++i) {
    long rest = i;
    bool boundary = false;
    for (int k = 0; k < f.dim; ++k) {
      const long idx = rest % f.npts;
      rest /= f.npts;
      if (idx == 0 || idx == f.npts - 1) boundary = true;
    }
    if (boundary) sup = std::max(sup, std::abs(f.at(i)));
  }
  return sup;
}

cplx grid_integral(const GridFunction& f) {
  cplx acc{0.0, 0.0};
  for (const cplx& v : f.values) acc += v;
  return acc * f.cell_volume();
}

namespace {

void require_same_grid(const GridFunction& f, const GridFunction& g, const char* who) {
  if (f.dim != g.dim || f.npts != g.npts || f.extent != g.extent)
    throw std::invalid_argument(std::string(who) + ": operands use different grids");
}

cplx convolve_at_unchecked(const OsculatingGroup& G, const GridFunction& f,
                           const GridFunction& g, const Vec& x) {
  const long N = f.total();
  cplx acc{0.0, 0.0};
  for (long i = 0; i < N; ++i) {
    const cplx fv = f.at(i);
    if (fv == cplx{0.0, 0.0}) continue;
    const Vec y = f.node(i);
    acc += fv * interpolate(g, group_law(G, group_inverse(G, y), x));
  }
  return acc * f.cell_volume();
}

} // namespace

GridFunction convolve(const OsculatingGroup& G, const GridFunction& f,
                      const GridFunction& g) {
  require_same_grid(f, g, "convolve");
  if (G.dim() != f.dim) throw std::invalid_argument("convolve: group dimension mismatch");
  const long N = f.total();
  if (N > 250000) throw std::invalid_argument("convolve: grid too large for a dense pass");
  GridFunction out = f;
#pragma omp parallel for schedule(dynamic, 16)
  for (long j = 0; j < N; ++j)
    out.at(j) = convolve_at_unchecked(G, f, g, out.node(j));
  double vmax = 0.0;
  for (const cplx& v : out.values) vmax = std::max(vmax, std::abs(v));
  if (vmax > 0.0 && boundary_sup(out) > 1e-8 * vmax)
    throw std::runtime_error("convolve: support overflow, result reaches the grid boundary");
  return out;
}

cplx convolve_at(const OsculatingGroup& G, const GridFunction& f,
                 const GridFunction& g, const Vec& x) {
  require_same_grid(f, g, "convolve_at");
  if (G.dim() != f.dim || x.size() != f.dim)
    throw std::invalid_argument("convolve_at: dimension mismatch");
  return convolve_at_unchecked(G, f, g, x);
}

cplx commutator_at_identity(const OsculatingGroup& G, const GridFunction& f,
                            const GridFunction& g) {
  const Vec e = group_identity(G);
  return convolve_at(G, f, g, e) - convolve_at(G, g, f, e);
}

cplx trace_engine(const OsculatingGroup& G, const GridFunction& kP,
                  const GridFunction& kQ, const GridFunction& f,
                  const GridFunction& g) {
  const Vec e = group_identity(G);
  return convolve_at(G, kP, g, e) + convolve_at(G, f, kQ, e) -
         convolve_at(G, kQ, f, e) - convolve_at(G, g, kP, e);
}

} // namespace ncres
