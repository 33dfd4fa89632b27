#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "ncres/residue.hpp"
#include "oracles.hpp"

using namespace ncres;

namespace {

Vec origin(int d) { return Vec::Zero(d); }

const double kTwoPi = 2.0 * oracles::pi;

} // namespace

TEST_CASE("catalog names and constructor error paths") {
  const auto names = catalog_names();
  CHECK(names.size() == 6);
  for (const auto& n : names) CHECK_NOTHROW(make_model(n));

  CHECK_THROWS_WITH_AS(make_model("fourier_magic"),
                       doctest::Contains("fourier_magic"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_model("log_kernel", {{"p0", "abc"}}),
                       doctest::Contains("abc"), std::invalid_argument);
  CHECK_THROWS_AS(make_model("log_kernel", {{"dim", "2.5"}}), std::invalid_argument);
  CHECK_THROWS_AS(make_model("log_kernel", {{"dim", "4"}}), std::invalid_argument);
  CHECK_THROWS_AS(make_model("log_kernel", {{"xprofile", "spline"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_model("log_kernel", {{"xprofile", "bump"}, {"radius", "-1"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_model("homog0", {{"profile", "zigzag"}}), std::invalid_argument);
  CHECK_THROWS_AS(make_model("homog0", {{"dim", "1"}, {"profile", "cos2"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_model("graded_norm_power", {{"variant", "curly"}}),
                  std::invalid_argument);
  // order bounds: nothing above the critical order is admitted
  CHECK_THROWS_AS(make_model("norm_power", {{"dim", "2"}, {"m", "-1"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_model("graded_norm_power", {{"n", "1"}, {"m", "-3"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_model("bessel_potential", {{"dim", "2"}, {"m", "-1"}}),
                  std::invalid_argument);
}

TEST_CASE("method preconditions") {
  const OperatorModel trivial = make_model("log_kernel", {{"dim", "2"}});
  const OperatorModel graded = make_model("graded_norm_power", {{"n", "1"}, {"m", "-4"}});
  const SphereRule r2 = sphere_quadrature(2, 10);
  const SphereRule r3 = sphere_quadrature(3, 10);

  CHECK_THROWS_AS(wodzicki_residue_at(graded, origin(3), r3), std::invalid_argument);
  CHECK_THROWS_AS(wodzicki_residue_at(trivial, origin(2), r3), std::invalid_argument);
  CHECK_THROWS_AS(ponge_residue_at(trivial, origin(2), r2), std::invalid_argument);
  CHECK_THROWS_AS(ponge_residue_at(graded, origin(3), r2), std::invalid_argument);
  CHECK_THROWS_AS(ponge_groupoidal_equiv(trivial, origin(2)), std::invalid_argument);
  CHECK_THROWS_AS(cocycle_sample(graded, origin(3), 2.0), std::runtime_error);
  CHECK_THROWS_AS(cocycle_sample(trivial, origin(2), 1.0), std::invalid_argument);
}

TEST_CASE("log kernel: symbol route, kernel route, zoom route all give -p0") {
  const double p0 = 1.5;
  const OperatorModel P =
      make_model("log_kernel", {{"dim", "2"}, {"p0", std::to_string(p0)}});
  const SphereRule rule = sphere_quadrature(2, 20);
  const Vec x = origin(2);

  const cplx w = wodzicki_residue_at(P, x, rule);
  CHECK(w.real() == doctest::Approx(-p0).epsilon(1e-12));
  CHECK(std::abs(w.imag()) < 1e-13);

  const GroupoidalResult g = groupoidal_residue_at(P, x);
  CHECK(g.accepted);
  CHECK(!g.short_circuit);
  CHECK(g.samples.size() == 4); // default s set
  CHECK(std::abs(g.value - w) < 1e-9);
  CHECK(g.spread < 1e-9);

  // strip the symbol: the residue density must then come from the kernel FT
  OperatorModel K = P;
  K.symbol.terms.clear();
  CHECK(!K.has_symbol());
  ResidueOptions opt;
  opt.t_sequence = {64.0, 128.0, 256.0, 512.0};
  const cplx wk = wodzicki_residue_at(K, x, sphere_quadrature(2, 6), opt);
  CHECK(std::abs(wk.real() + p0) < 1e-3 * p0);

  // linearity in the operator data
  const OperatorModel P3 =
      make_model("log_kernel", {{"dim", "2"}, {"p0", std::to_string(3.0 * p0)}});
  CHECK(wodzicki_residue_at(P3, x, rule).real() ==
        doctest::Approx(3.0 * w.real()).epsilon(1e-12));
}

TEST_CASE("zoom cocycle samples of the log kernel") {
  const OperatorModel P = make_model("log_kernel", {{"dim", "2"}, {"p0", "2.0"}});
  const Vec x = origin(2);
  for (double s : {0.5, 2.0, 5.0}) {
    const CocycleSample cs = cocycle_sample(P, x, s);
    CHECK(cs.converged);
    CHECK(cs.s == s);
    CHECK(std::abs(cs.F_at_zero - cplx{-2.0 * std::log(s), 0.0}) < 1e-8);
    CHECK(cs.extrapolation_error < 1e-6);
  }
  ResidueOptions opt;
  opt.s_set = {2.0, 4.0};
  const GroupoidalResult g = groupoidal_residue_at(P, x, opt);
  CHECK(g.samples.size() == 2);
  CHECK(g.samples[0].s == 2.0);
  CHECK(g.samples[1].s == 4.0);
  CHECK(std::abs(g.value - cplx{-2.0, 0.0}) < 1e-9);
}

TEST_CASE("purely homogeneous degree-0 kernels carry no residue") {
  const std::map<int, std::vector<std::string>> profiles = {
      {1, {"one", "axis", "mix"}}, {2, {"cos2", "axis", "mix"}}, {3, {"pair", "axis", "mix"}}};
  for (const auto& [d, names] : profiles) {
    for (const auto& prof : names) {
      const OperatorModel P =
          make_model("homog0", {{"dim", std::to_string(d)}, {"profile", prof}});
      const GroupoidalResult g = groupoidal_residue_at(P, origin(d));
      CHECK(g.accepted);
      CHECK(std::abs(g.value) < 1e-6);
    }
  }
}

TEST_CASE("euclidean norm powers") {
  const SphereRule rule = sphere_quadrature(2, 20);
  const Vec x = origin(2);

  SUBCASE("critical order: residue is 1/(2 pi) by both routes") {
    const OperatorModel P = make_model("norm_power", {{"dim", "2"}, {"m", "-2"}});
    const double expected = 0.15915494309189535; // 1/(2 pi)
    CHECK(wodzicki_residue_at(P, x, rule).real() ==
          doctest::Approx(expected).epsilon(1e-12));
    const GroupoidalResult g = groupoidal_residue_at(P, x);
    CHECK(g.accepted);
    CHECK(g.value.real() == doctest::Approx(expected).epsilon(1e-10));
  }

  SUBCASE("below critical order: residue vanishes, cocycle stays consistent") {
    const OperatorModel P = make_model("norm_power", {{"dim", "2"}, {"m", "-3"}});
    CHECK(std::abs(wodzicki_residue_at(P, x, rule)) == 0.0);
    const GroupoidalResult g = groupoidal_residue_at(P, x);
    CHECK(g.short_circuit);
    CHECK(g.accepted);
    CHECK(std::abs(g.value) == 0.0);
    CHECK(!g.samples.empty());
  }
}

TEST_CASE("bessel potential at the critical order matches the norm power") {
  const OperatorModel P = make_model("bessel_potential", {{"dim", "2"}, {"m", "-2"}});
  const SphereRule rule = sphere_quadrature(2, 20);
  const Vec x = origin(2);
  const double expected = 1.0 / kTwoPi;
  CHECK(wodzicki_residue_at(P, x, rule).real() ==
        doctest::Approx(expected).epsilon(1e-10));
  const GroupoidalResult g = groupoidal_residue_at(P, x);
  CHECK(g.accepted);
  CHECK(g.value.real() == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("gaussian smoothing operator has zero residue") {
  const OperatorModel P = make_model("gaussian", {{"dim", "2"}});
  const SphereRule rule = sphere_quadrature(2, 10);
  CHECK(std::abs(wodzicki_residue_at(P, origin(2), rule)) == 0.0);
  const GroupoidalResult g = groupoidal_residue_at(P, origin(2));
  CHECK(g.short_circuit);
  CHECK(g.accepted);
  CHECK(std::abs(g.value) == 0.0);
}

TEST_CASE("graded residue of the quartic norm power") {
  const SphereRule rule = sphere_quadrature(3, 30);
  const Vec x = origin(3);
  const double expected = oracles::h1_sphere_constant() / std::pow(kTwoPi, 3);

  const OperatorModel P = make_model("graded_norm_power", {{"n", "1"}, {"m", "-4"}});
  CHECK(ponge_residue_at(P, x, rule).real() ==
        doctest::Approx(expected).epsilon(1e-9));

  const OperatorModel Podd =
      make_model("graded_norm_power", {{"n", "1"}, {"m", "-4"}, {"variant", "odd"}});
  CHECK(std::abs(ponge_residue_at(Podd, x, rule)) < 1e-12);

  const OperatorModel Pmix =
      make_model("graded_norm_power", {{"n", "1"}, {"m", "-4"}, {"variant", "mixed"}});
  CHECK(ponge_residue_at(Pmix, x, rule).real() ==
        doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("graded equivalence report") {
  const OperatorModel P = make_model("graded_norm_power", {{"n", "1"}, {"m", "-4"}});
  const EquivReport rep = ponge_groupoidal_equiv(P, origin(3));

  CHECK(rep.agree);
  CHECK(rep.agreement_error < 1e-9);
  CHECK(rep.ponge.real() ==
        doctest::Approx(oracles::h1_sphere_constant() / std::pow(kTwoPi, 3))
            .epsilon(1e-9));
  CHECK(std::abs(rep.groupoidal - rep.ponge) < 1e-9);

  // angular constants: the plain sphere integral and the weight-flux integral
  CHECK(rep.c0_value.real() ==
        doctest::Approx(oracles::h1_sphere_constant()).epsilon(1e-9));
  CHECK(rep.graded_angular_constant.real() ==
        doctest::Approx(oracles::h1_cocycle_constant()).epsilon(1e-8));

  // the two constants differ for this grading, so the per-s certification
  // of the c0 identity cannot hold
  CHECK(rep.s_values.size() == rep.certification_errors.size());
  CHECK(rep.s_values.size() == 4);
  CHECK(!rep.certified);
  double worst = 0.0;
  for (double e : rep.certification_errors) worst = std::max(worst, e);
  CHECK(worst > 1e-3);
}

TEST_CASE("representative invariance of the zoom residue") {
  const OperatorModel P = make_model("log_kernel", {{"dim", "2"}, {"p0", "1.5"}});
  Vec x(2);
  x << 0.1, -0.2;
  auto pert = [](const Vec& z) -> cplx {
    return {0.3 * std::exp(-z.squaredNorm()) * (1.0 + 0.5 * z[0]), 0.0};
  };
  CHECK(representative_invariance_check(P, x, pert) < 1e-8);
}

TEST_CASE("zoom cocycle is a log homomorphism") {
  const OperatorModel P = make_model("log_kernel", {{"dim", "2"}});
  const Vec x = origin(2);
  CHECK(cocycle_homomorphism_check(P, x, 2.0, 3.0) < 1e-10);
  CHECK(cocycle_homomorphism_check(P, x, 0.5, 4.0) < 1e-10);
  CHECK(cocycle_homomorphism_check(P, x, 3.0, 1.0 / 3.0) < 1e-10); // st = 1
  CHECK_THROWS_AS(cocycle_homomorphism_check(P, x, -2.0, 3.0), std::invalid_argument);
}

TEST_CASE("global residue against a nested-quadrature oracle") {
  const OperatorModel P = make_model(
      "log_kernel",
      {{"dim", "2"}, {"p0", "2.0"}, {"xprofile", "bump"}, {"radius", "0.8"}});
  const SphereRule rule = sphere_quadrature(2, 12);

  // density is -2 bump(|x|/0.8); radially: -2 * 2 pi * (0.64/2) int_0^1 e^{-q/(1-q)} dq
  const double radial =
      oracles::integrate([](double q) { return std::exp(-q / (1.0 - q)); }, 0.0,
                         1.0 - 1e-14, 1e-13);
  const double expected = -2.0 * kTwoPi * 0.32 * radial;

  const cplx got = global_residue(P, Vec::Constant(2, -1.0), Vec::Constant(2, 1.0),
                                  41, rule);
  CHECK(std::abs(got.real() - expected) < 1e-4 * std::abs(expected));
  CHECK(std::abs(got.imag()) < 1e-12);

  // guards
  CHECK_THROWS_AS(global_residue(P, Vec::Constant(2, -1.0), Vec::Constant(2, 1.0), 1, rule),
                  std::invalid_argument);
  CHECK_THROWS_AS(global_residue(P, Vec::Constant(2, 1.0), Vec::Constant(2, 1.0), 8, rule),
                  std::invalid_argument);
  const OperatorModel flat = make_model("log_kernel", {{"dim", "2"}});
  CHECK_THROWS_AS(
      global_residue(flat, Vec::Constant(2, -1.0), Vec::Constant(2, 1.0), 8, rule),
      std::runtime_error);
}

TEST_CASE("combined per-point report") {
  SUBCASE("trivial grading: classical and zoom routes paired") {
    const OperatorModel P = make_model("log_kernel", {{"dim", "2"}, {"p0", "1.25"}});
    const ResidueReport rep = residue_report_at(P, origin(2));
    CHECK(rep.has_wodzicki);
    CHECK(rep.has_groupoidal);
    CHECK(!rep.has_ponge);
    CHECK(!rep.has_equiv);
    CHECK(rep.wodzicki.real() == doctest::Approx(-1.25).epsilon(1e-9));
    CHECK(rep.agree);
    CHECK(rep.agreement_error < 1e-6);
    CHECK(rep.note.empty());
    CHECK(rep.pass());
  }

  SUBCASE("short-circuit order still passes") {
    const OperatorModel P = make_model("gaussian", {{"dim", "2"}});
    const ResidueReport rep = residue_report_at(P, origin(2));
    CHECK(rep.has_wodzicki);
    CHECK(rep.has_groupoidal);
    CHECK(rep.groupoidal.short_circuit);
    CHECK(rep.pass());
  }

  SUBCASE("graded grading: equivalence embedded, certification separate") {
    const OperatorModel P = make_model("graded_norm_power", {{"n", "1"}, {"m", "-4"}});
    const ResidueReport rep = residue_report_at(P, origin(3));
    CHECK(!rep.has_wodzicki);
    CHECK(rep.has_ponge);
    CHECK(rep.has_groupoidal);
    CHECK(rep.has_equiv);
    CHECK(rep.agree);
    CHECK(rep.pass());          // certification failure does not gate the report
    CHECK(!rep.equiv.certified); // ... but is still visible
    CHECK(rep.ponge.real() == doctest::Approx(rep.equiv.ponge.real()));
  }
}
