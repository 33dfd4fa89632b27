#include "ncres/bessel.hpp"

#include <cmath>
#include <stdexcept>

#include "ncres/types.hpp"

namespace ncres {

namespace {

// Downward (Miller) recurrence for J_m resp. j_k when the order can exceed
// the argument; normalized against the directly computed order-0/1 values.
std::vector<double> miller(int nmax, double x, bool spherical, double f0_ref,
                           double f1_ref) {
  const int pad = static_cast<int>(std::ceil(std::sqrt(40.0 * (nmax + 1)))) + 16;
  int M = std::max(nmax, static_cast<int>(std::ceil(x))) + pad;
  std::vector<double> f(M + 2, 0.0);
  f[M + 1] = 0.0;
  f[M] = 1e-300;
  for (int m = M; m >= 1; --m) {
    const double c = spherical ? (2.0 * m + 1.0) : (2.0 * m);
    f[m - 1] = (c / x) * f[m] - f[m + 1];
    if (std::abs(f[m - 1]) > 1e250) {
      for (int j = m - 1; j <= M + 1; ++j) f[j] *= 1e-250;
    }
  }
  const double scale =
      std::abs(f0_ref) > std::abs(f1_ref) ? f0_ref / f[0] : f1_ref / f[1];
  std::vector<double> out(nmax + 1);
  for (int m = 0; m <= nmax; ++m) out[m] = f[m] * scale;
  return out;
}

} // namespace

std::vector<double> bessel_j_array(int nmax, double x) {
  if (nmax < 0 || x < 0.0) throw std::invalid_argument("bessel_j_array: bad arguments");
  std::vector<double> out(nmax + 1, 0.0);
  if (x < 1e-12) {
    out[0] = 1.0;
    return out;
  }
  const double j0 = std::cyl_bessel_j(0.0, x);
  out[0] = j0;
  if (nmax == 0) return out;
  const double j1 = std::cyl_bessel_j(1.0, x);
  out[1] = j1;
  if (nmax == 1) return out;
  if (x > nmax) {
    for (int m = 1; m < nmax; ++m) out[m + 1] = (2.0 * m / x) * out[m] - out[m - 1];
    return out;
  }
  return miller(nmax, x, false, j0, j1);
}

std::vector<double> sph_bessel_array(int nmax, double x) {
  if (nmax < 0 || x < 0.0) throw std::invalid_argument("sph_bessel_array: bad arguments");
  std::vector<double> out(nmax + 1, 0.0);
  if (x < 1e-8) {
    out[0] = 1.0 - x * x / 6.0;
    if (nmax >= 1) out[1] = x / 3.0;
    return out;
  }
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  out[0] = j0;
  if (nmax == 0) return out;
  out[1] = j1;
  if (nmax == 1) return out;
  if (x > nmax) {
    for (int k = 1; k < nmax; ++k)
      out[k + 1] = ((2.0 * k + 1.0) / x) * out[k] - out[k - 1];
    return out;
  }
  return miller(nmax, x, true, j0, j1);
}

double sphere_phase_average(int d, double r) {
  switch (d) {
    case 1:
      return 2.0 * std::cos(r);
    case 2:
      return 2.0 * pi * std::cyl_bessel_j(0.0, r);
    case 3:
      return r < 1e-8 ? 4.0 * pi * (1.0 - r * r / 6.0) : 4.0 * pi * std::sin(r) / r;
    default:
      throw std::invalid_argument("sphere_phase_average: d must be 1, 2 or 3");
  }
}

} // namespace ncres
