#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "ncres/osculating.hpp"
#include "oracles.hpp"

using namespace ncres;

namespace {

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

// C-infinity bump that is exactly 0 outside |z| >= r.
std::function<cplx(const Vec&)> hard_bump(double r, const Vec& center) {
  return [r, center](const Vec& z) -> cplx {
    const double q = (z - center).squaredNorm();
    const double r2 = r * r;
    if (q >= r2) return {0.0, 0.0};
    return {std::exp(-q / (r2 - q)), 0.0};
  };
}

double inf_norm(const Vec& v) { return v.lpNorm<Eigen::Infinity>(); }

} // namespace

TEST_CASE("group law hand values") {
  const OsculatingGroup H = OsculatingGroup::heisenberg(1);
  // (t,x,y)(t',x',y') = (t+t'+(xy'-yx')/2, x+x', y+y')
  const Vec a = vec3(0.5, 1.0, 2.0);
  const Vec b = vec3(-0.25, 3.0, -1.0);
  const Vec ab = group_law(H, a, b);
  CHECK(ab[0] == doctest::Approx(0.5 - 0.25 + 0.5 * (1.0 * -1.0 - 2.0 * 3.0)));
  CHECK(ab[1] == doctest::Approx(4.0));
  CHECK(ab[2] == doctest::Approx(1.0));

  // abelian tail coordinates just add
  const OsculatingGroup HR = OsculatingGroup::heisenberg(1, 1);
  Vec c(4), d(4);
  c << 0.0, 1.0, 0.0, 5.0;
  d << 0.0, 0.0, 1.0, -2.0;
  const Vec cd = group_law(HR, c, d);
  CHECK(cd[0] == doctest::Approx(0.5));
  CHECK(cd[1] == doctest::Approx(1.0));
  CHECK(cd[2] == doctest::Approx(1.0));
  CHECK(cd[3] == doctest::Approx(3.0));

  // the commutator of the two generators is central: aba^{-1}b^{-1} = (1,0,0)
  const Vec X = vec3(0.0, 1.0, 0.0);
  const Vec Y = vec3(0.0, 0.0, 1.0);
  const Vec comm = group_law(
      H, group_law(H, X, Y),
      group_law(H, group_inverse(H, X), group_inverse(H, Y)));
  CHECK(comm[0] == doctest::Approx(1.0));
  CHECK(comm[1] == doctest::Approx(0.0));
  CHECK(comm[2] == doctest::Approx(0.0));
}

TEST_CASE("group axioms and dilation automorphisms (randomized)") {
  std::mt19937 rng(20240915u);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (const OsculatingGroup& G :
       {OsculatingGroup::abelian(3), OsculatingGroup::heisenberg(1),
        OsculatingGroup::heisenberg(2, 1)}) {
    const Vec e = group_identity(G);
    double worst = 0.0;
    for (int it = 0; it < 200; ++it) {
      Vec a(G.dim()), b(G.dim()), c(G.dim());
      for (int i = 0; i < G.dim(); ++i) {
        a[i] = U(rng);
        b[i] = U(rng);
        c[i] = U(rng);
      }
      const Vec assoc =
          group_law(G, group_law(G, a, b), c) - group_law(G, a, group_law(G, b, c));
      worst = std::max(worst, inf_norm(assoc));
      worst = std::max(worst, inf_norm(group_law(G, a, group_inverse(G, a)) - e));
      worst = std::max(worst, inf_norm(group_law(G, e, a) - a));
      worst = std::max(worst, inf_norm(group_law(G, a, e) - a));
      const double s = std::exp(U(rng));
      const Vec dil = group_dilate(G, s, group_law(G, a, b)) -
                      group_law(G, group_dilate(G, s, a), group_dilate(G, s, b));
      worst = std::max(worst, inf_norm(dil) / (1.0 + s * s));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("grid basics: nodes, constants, sampling guards") {
  const GridFunction f =
      sample_grid(2, 1.0, 8, [](const Vec&) -> cplx { return {1.0, 0.0}; });
  CHECK(f.spacing() == doctest::Approx(0.25));
  CHECK(f.total() == 64);
  // integral of 1 over [-1,1)^2 with left-endpoint cells = full box area
  CHECK(grid_integral(f).real() == doctest::Approx(4.0));
  // node(flat) walks the last axis fastest and starts at the corner
  CHECK(inf_norm(f.node(0) - Vec::Constant(2, -1.0)) < 1e-15);
  CHECK(f.node(1)[0] == doctest::Approx(-1.0));
  CHECK(f.node(1)[1] == doctest::Approx(-0.75));

  CHECK_THROWS_AS(sample_grid(2, 1.0, 7, [](const Vec&) -> cplx { return {}; }),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_grid(2, 1.0, 2, [](const Vec&) -> cplx { return {}; }),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_grid(7, 1.0, 8, [](const Vec&) -> cplx { return {}; }),
                  std::invalid_argument);
}

TEST_CASE("interpolation: node-exact, multilinear-exact, zero outside") {
  auto fn = [](const Vec& z) -> cplx {
    return {2.0 + 3.0 * z[0] - z[1] + 0.5 * z[0] * z[1], 0.0};
  };
  const GridFunction f = sample_grid(2, 1.0, 16, fn);
  for (long flat : {0L, 37L, 200L, 255L}) {
    const Vec p = f.node(flat);
    CHECK(std::abs(interpolate(f, p) - f.at(flat)) < 1e-14);
  }
  Vec p(2);
  p << 0.3123, -0.7741; // generic interior point, multilinear reproduced
  CHECK(interpolate(f, p).real() == doctest::Approx(fn(p).real()).epsilon(1e-13));
  p << 5.0, 0.0;
  CHECK(interpolate(f, p) == cplx{0.0, 0.0});
}

TEST_CASE("support diagnostics") {
  const GridFunction f =
      sample_grid(2, 1.5, 32, hard_bump(0.8, Vec::Zero(2)));
  CHECK(boundary_sup(f) == 0.0);
  CHECK(support_radius(f) <= 0.8);
  CHECK(support_radius(f) > 0.5);
}

TEST_CASE("Haar invariance of the grid integral") {
  const double h = 3.0 / 32.0;

  SUBCASE("abelian: node shift is a value permutation") {
    const OsculatingGroup G = OsculatingGroup::abelian(2);
    auto fn = hard_bump(0.8, Vec::Zero(2));
    Vec a(2);
    a << 4.0 * h, -2.0 * h;
    const GridFunction f = sample_grid(2, 1.5, 32, fn);
    const GridFunction g = sample_grid(
        2, 1.5, 32, [&](const Vec& z) { return fn(group_law(G, a, z)); });
    CHECK(std::abs(grid_integral(f) - grid_integral(g)) <
          1e-13 * std::abs(grid_integral(f)));
  }

  SUBCASE("heisenberg: central and generic shifts") {
    const OsculatingGroup G = OsculatingGroup::heisenberg(1);
    auto fn = [](const Vec& z) -> cplx {
      return {std::exp(-z.squaredNorm() / 0.05), 0.0};
    };
    const GridFunction f = sample_grid(3, 1.5, 32, fn);
    for (const Vec& a : {vec3(4.0 * h, 0.0, 0.0), vec3(0.1, 0.15, -0.05)}) {
      const GridFunction g = sample_grid(
          3, 1.5, 32, [&](const Vec& z) { return fn(group_law(G, a, z)); });
      CHECK(std::abs(grid_integral(g) - grid_integral(f)) <
            1e-9 * std::abs(grid_integral(f)));
    }
  }
}

TEST_CASE("abelian convolution of gaussians against the closed form") {
  const OsculatingGroup G = OsculatingGroup::abelian(2);
  const double wa = std::sqrt(0.08), wb = std::sqrt(0.1);
  const GridFunction f = sample_grid(2, 2.0, 48, [&](const Vec& z) -> cplx {
    return {std::exp(-z.squaredNorm() / (wa * wa)), 0.0};
  });
  const GridFunction g = sample_grid(2, 2.0, 48, [&](const Vec& z) -> cplx {
    return {std::exp(-z.squaredNorm() / (wb * wb)), 0.0};
  });
  const double h = f.spacing();
  CHECK(h == doctest::Approx(1.0 / 12.0));

  Vec x(2);
  x << 3.0 * h, -2.0 * h; // on-grid: every interpolation lands on a node
  const cplx got = convolve_at(G, f, g, x);
  const double want = oracles::gaussian_convolution(2, wa, wb, x.squaredNorm());
  CHECK(std::abs(got - want) < 1e-12 * want);

  const GridFunction fg = convolve(G, f, g);
  double worst_vs_oracle = 0.0, worst_vs_point = 0.0;
  for (long flat : {0L, 1177L, 1200L, 2017L}) {
    const Vec p = fg.node(flat);
    const double ref = oracles::gaussian_convolution(2, wa, wb, p.squaredNorm());
    worst_vs_oracle = std::max(worst_vs_oracle, std::abs(fg.at(flat) - ref));
    worst_vs_point =
        std::max(worst_vs_point, std::abs(fg.at(flat) - convolve_at(G, f, g, p)));
  }
  CHECK(worst_vs_oracle < 1e-12);
  CHECK(worst_vs_point < 1e-14);
}

TEST_CASE("convolution rejects supports that overflow the box") {
  const OsculatingGroup G = OsculatingGroup::abelian(1);
  const GridFunction f = sample_grid(1, 1.0, 16, [](const Vec& z) -> cplx {
    return {std::exp(-z.squaredNorm() / 0.49), 0.0};
  });
  CHECK_THROWS_AS(convolve(G, f, f), std::runtime_error);
}

TEST_CASE("commutator and trace pairing vanish at the identity") {
  const OsculatingGroup G = OsculatingGroup::heisenberg(1);
  const GridFunction kP =
      sample_grid(3, 1.5, 32, hard_bump(0.7, vec3(0.05, -0.08, 0.10)));
  const GridFunction kQ =
      sample_grid(3, 1.5, 32, hard_bump(0.6, vec3(-0.10, 0.04, 0.02)));
  const GridFunction f =
      sample_grid(3, 1.5, 32, hard_bump(0.65, vec3(0.02, 0.12, -0.06)));
  const GridFunction g =
      sample_grid(3, 1.5, 32, hard_bump(0.75, vec3(-0.04, -0.02, 0.08)));

  const Vec e = group_identity(G);
  const double scale = std::abs(convolve_at(G, kP, g, e)) +
                       std::abs(convolve_at(G, f, kQ, e)) +
                       std::abs(convolve_at(G, kQ, f, e)) +
                       std::abs(convolve_at(G, g, kP, e));
  CHECK(scale > 1e-6); // the pairing is not trivially zero

  CHECK(std::abs(commutator_at_identity(G, f, g)) < 1e-12 * scale);
  CHECK(std::abs(trace_engine(G, kP, kQ, f, g)) < 1e-12 * scale);
}
