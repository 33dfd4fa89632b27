#pragma once

#include <vector>

namespace ncres {

// J_0(x) .. J_nmax(x), cylindrical Bessel, x >= 0.
std::vector<double> bessel_j_array(int nmax, double x);

// j_0(x) .. j_nmax(x), spherical Bessel, x >= 0.
std::vector<double> sph_bessel_array(int nmax, double x);

// B_d(r) = integral of e^{-i theta . z} over theta in S^{d-1} at |z| = r:
// 2 cos r (d=1), 2 pi J_0(r) (d=2), 4 pi sin(r)/r (d=3).
double sphere_phase_average(int d, double r);

} // namespace ncres
