#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ncres/homog_dist.hpp"
#include "oracles.hpp"

using namespace ncres;

TEST_CASE("default bump: normalized at 0, supported in the quasi-ball") {
  const TestFunction phi = default_bump(Grading::trivial(2));
  CHECK(phi.value_at_zero == doctest::Approx(1.0));
  CHECK(phi(Vec::Zero(2)) == doctest::Approx(1.0));
  Vec v(2);
  v << 0.999, 0.0;
  CHECK(phi(v) >= 0.0);
  v << 1.001, 0.0;
  CHECK(phi(v) == 0.0);
  CHECK(phi.support_radius == doctest::Approx(1.0));

  const TestFunction phih = default_bump(Grading::heisenberg(1, 0), 2.0);
  const QuasiNorm q(phih.grading);
  Vec w(3);
  w << 1.2, 0.3, -0.2; // quasi-norm well below 2
  CHECK(q(w) < 2.0);
  CHECK(phih(w) > 0.0);
  w << 16.0, 0.0, 0.0; // quasi-norm 4
  CHECK(phih(w) == 0.0);
}

TEST_CASE("critical pairing in d = 1 against adaptive Simpson") {
  // oracle first: <u, phi> = int_0^1 (phi(t)+phi(-t)-2 phi(0))/t dt
  //                        + int_1^R (phi(t)+phi(-t))/t dt
  const TestFunction phi = default_bump(Grading::trivial(1), 1.5);
  auto phi_at = [&phi](double t) {
    Vec v(1);
    v << t;
    return phi(v);
  };
  const double inner = oracles::integrate(
      [&](double t) { return (phi_at(t) + phi_at(-t) - 2.0) / t; }, 1e-14, 1.0,
      1e-13);
  const double outer = oracles::integrate(
      [&](double t) { return (phi_at(t) + phi_at(-t)) / t; }, 1.0, 1.6, 1e-13);

  ExtendedHomogeneousDistribution u;
  u.grading = Grading::trivial(1);
  u.degree = -1.0;
  u.profile = [](const Vec& v) -> cplx { return 1.0 / std::abs(v[0]); };
  CHECK(u.critical());

  const cplx got = pair(u, phi);
  CHECK(got.real() == doctest::Approx(inner + outer).epsilon(1e-10));
  CHECK(std::abs(got.imag()) < 1e-14);
}

TEST_CASE("subcritical pairing is the plain integral") {
  // u = |t|^{-1/2} in d = 1, degree -1/2 > -1: absolutely integrable.
  // Oracle via t = u^2, which removes the endpoint singularity.
  const TestFunction phi = default_bump(Grading::trivial(1));
  auto phi_at = [&phi](double t) {
    Vec v(1);
    v << t;
    return phi(v);
  };
  const double oracle = oracles::integrate(
      [&](double u) { return 2.0 * (phi_at(u * u) + phi_at(-u * u)); }, 0.0,
      1.02, 1e-13);

  ExtendedHomogeneousDistribution u;
  u.grading = Grading::trivial(1);
  u.degree = -0.5;
  u.profile = [](const Vec& v) -> cplx {
    return 1.0 / std::sqrt(std::abs(v[0]));
  };
  CHECK(!u.critical());
  CHECK(pair(u, phi).real() == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("pairing rejects degrees below the critical order") {
  ExtendedHomogeneousDistribution u;
  u.grading = Grading::trivial(2);
  u.degree = -3.0;
  u.profile = [](const Vec& v) -> cplx { return std::pow(v.norm(), -3.0); };
  CHECK_THROWS_AS(pair(u, default_bump(u.grading)), std::invalid_argument);
}

TEST_CASE("trivial dilation cocycle: closed form (pi/2) log 2") {
  // u = |xi|^{-2} on R^2, s = 2: s^{-2} log(2) c0 phi(0) with c0 = 2 pi
  ExtendedHomogeneousDistribution u;
  u.grading = Grading::trivial(2);
  u.degree = -2.0;
  u.profile = [](const Vec& v) -> cplx { return 1.0 / v.squaredNorm(); };
  const TestFunction phi = default_bump(u.grading);

  const cplx coc = dilation_cocycle(u, 2.0, phi);
  const double target = 0.5 * oracles::pi * std::log(2.0);
  CHECK(coc.real() == doctest::Approx(target).epsilon(1e-12));

  // the constant is independent of the probe
  const TestFunction phi2 = default_bump(u.grading, 1.7);
  const cplx coc2 = dilation_cocycle(u, 2.0, phi2);
  CHECK(coc2.real() == doctest::Approx(target * phi2.value_at_zero).epsilon(1e-10));
}

TEST_CASE("graded dilation cocycle produces the weight-flux constant") {
  // oracle first: the H1 profile constants, by 1-D reduction
  const double plain = oracles::h1_sphere_constant();
  const double flux = oracles::h1_cocycle_constant();
  CHECK(oracles::h1_cocycle_constant_integral() ==
        doctest::Approx(flux).epsilon(1e-12));
  CHECK(plain == doctest::Approx(14.646999193420285).epsilon(1e-12));

  ExtendedHomogeneousDistribution u;
  u.grading = Grading::heisenberg(1, 0);
  u.degree = -4.0;
  u.profile = [](const Vec& v) -> cplx {
    return 1.0 / (v[0] * v[0] + std::pow(v[1] * v[1] + v[2] * v[2], 2));
  };
  const SphereRule rule = sphere_quadrature(3, 40);
  CHECK(c0(u, rule).real() == doctest::Approx(plain).epsilon(1e-10));
  CHECK(cocycle_constant(u, rule).real() == doctest::Approx(flux).epsilon(1e-10));

  const TestFunction phi = default_bump(u.grading);
  for (double s : {0.5, 2.0, 3.0}) {
    const cplx coc = dilation_cocycle(u, s, phi);
    const double target = std::pow(s, -4.0) * std::log(s) * flux;
    CHECK(std::abs(coc.real() - target) < 1e-4 * (1.0 + std::abs(target)));
  }
}

TEST_CASE("ft_log closed forms") {
  Vec xi(2);
  xi << 3.0, 4.0; // |xi| = 5
  CHECK(ft_log(2, xi) ==
        doctest::Approx(-std::pow(2.0 * oracles::pi, 2) /
                        (2.0 * oracles::pi * 25.0)));
  Vec xi1(1);
  xi1 << 2.0;
  CHECK(ft_log(1, xi1) == doctest::Approx(-oracles::pi / 2.0));
}

TEST_CASE("grafakos decomposition: delta coefficient and mean-zero angular part") {
  GrafakosOptions light;
  light.omega_radii = {1.0, 2.0};
  light.t_sequence = {64.0, 128.0, 256.0};
  light.sphere_degree = 10;

  // radial profile: pure delta, b = (2 pi)^2, Omega = 0
  HomogeneousTerm one;
  one.grading = Grading::trivial(2);
  one.degree = 0.0;
  one.h = [](const Vec&, const Vec&) -> cplx { return 1.0; };
  const AngularDecomposition rad = grafakos_decompose(one, Vec::Zero(2), light);
  CHECK(std::abs(rad.b - std::pow(2.0 * oracles::pi, 2)) <
        5e-3 * std::pow(2.0 * oracles::pi, 2));
  // exact Omega is identically 0; the observed level is the extrapolation
  // tail of the short t-sequence, three orders below the axis profile's max
  CHECK(rad.max_abs_omega < 1e-2);

  // mean-zero profile: b = 0, Omega integrates to 0 but is not 0
  HomogeneousTerm axis;
  axis.grading = Grading::trivial(2);
  axis.degree = 0.0;
  axis.h = [](const Vec&, const Vec& z) -> cplx { return z[0] / z.norm(); };
  const AngularDecomposition dec = grafakos_decompose(axis, Vec::Zero(2), light);
  CHECK(std::abs(dec.b) < 1e-3);
  CHECK(dec.max_abs_omega > 1.0);
  CHECK(std::abs(dec.omega_mean_integral) < 1e-3 * dec.max_abs_omega);

  // the callable form reproduces the sampled values (spot-check a few nodes)
  for (int j = 0; j < std::min(dec.rule.size(), 3); ++j) {
    const Vec th = dec.rule.nodes.row(j).transpose();
    const cplx w = dec.omega(th);
    CHECK(std::abs(w - dec.omega_nodes[j]) < 1e-12 * (1.0 + std::abs(w)));
  }
}
