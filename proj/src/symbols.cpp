#include "ncres/symbols.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ncres {

cplx PseudoHomogeneousTerm::value(const Vec& x, const Vec& xi) const {
  cplx v{0.0, 0.0};
  if (f) v += f(x, xi);
  if (log_coeff) {
    const QuasiNorm q{grading};
    v += std::log(q(xi)) * log_coeff(x, xi);
  }
  return v;
}

const HomogeneousTerm* PolySymbol::term_of_degree(double deg, double tol) const {
  for (const auto& t : terms)
    if (std::abs(t.degree - deg) <= tol && t.h) return &t;
  return nullptr;
}

const PseudoHomogeneousTerm* KernelExpansion::term_of_degree(double deg,
                                                             double tol) const {
  for (const auto& t : terms)
    if (std::abs(t.degree - deg) <= tol) return &t;
  return nullptr;
}

CutoffFunction::CutoffFunction(Grading g, double inner, double outer)
    : norm(std::move(g)), r0(inner), r1(outer) {
  if (!(0.0 < r0 && r0 < r1))
    throw std::invalid_argument("cutoff: need 0 < r0 < r1");
}

double CutoffFunction::profile(double r) const {
  if (r <= r0) return 1.0;
  if (r >= r1) return 0.0;
  const double u = (r - r0) / (r1 - r0);
  const double a = std::exp(-1.0 / (1.0 - u));
  const double b = std::exp(-1.0 / u);
  return a / (a + b);
}

double cutoff_eval(const CutoffFunction& chi, const Vec& z) { return chi(z); }

DecayCheck schwartz_decay_check(const SchwartzRemainder& rem, const Vec& x,
                                double bound, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int d = rem.grading.dim();
  DecayCheck chk;
  for (int i = 0; i < samples; ++i) {
    Vec dir(d);
    double n2 = 0.0;
    do {
      for (int c = 0; c < d; ++c) dir[c] = unit(rng);
      n2 = dir.squaredNorm();
    } while (n2 < 1e-3);
    dir /= std::sqrt(n2);
    const double radius = std::ldexp(1.0, i % 7); // 1 .. 64
    const Vec xi = radius * dir;
    const double v = std::abs(rem.value(x, xi));
    chk.max_bound =
        std::max(chk.max_bound, v * std::pow(1.0 + xi.norm(), rem.decay_order));
  }
  chk.ok = chk.max_bound <= bound;
  return chk;
}

HomogeneityCheck check_homogeneity(const HomogeneousTerm& term, const Vec& x,
                                   int sample_count, double tol,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> logs(std::log(0.25), std::log(4.0));
  const int d = term.grading.dim();
  const QuasiNorm q{term.grading};

  HomogeneityCheck chk;
  chk.ok = true;
  for (int i = 0; i < sample_count; ++i) {
    Vec xi(d);
    do {
      for (int c = 0; c < d; ++c) xi[c] = coord(rng);
    } while (q(xi) < 0.3);
    const double s = std::exp(logs(rng));
    cplx lhs, ref;
    try {
      lhs = term(x, dilate(term.grading, s, xi));
      ref = std::pow(s, term.degree) * term(x, xi);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "check_homogeneity: evaluation failed at s=" << s << ", xi=["
         << xi.transpose() << "]: " << e.what();
      throw std::runtime_error(os.str());
    }
    const double dev = std::abs(lhs - ref);
    const double den = std::abs(ref);
    const double measure = den > 1e-12 ? dev / den : dev;
    if (measure > chk.max_deviation) {
      chk.max_deviation = measure;
      chk.worst_xi = xi;
      chk.worst_s = s;
    }
  }
  chk.ok = chk.max_deviation <= tol;
  return chk;
}

PolySymbol bessel_potential_expansion(int m, int d, int J) {
  if (m >= 0) throw std::invalid_argument("bessel_potential_expansion: order must be negative");
  if (d < 1 || J < 1) throw std::invalid_argument("bessel_potential_expansion: bad d or J");

  PolySymbol sym;
  sym.grading = Grading::trivial(d);
  sym.order = m;
  // (1+|xi|^2)^{m/2} = sum_j binom(m/2, j) |xi|^{m-2j}
  for (int j = 0; j < J; ++j) {
    HomogeneousTerm t;
    t.grading = sym.grading;
    t.degree = m - j;
    if (j % 2 == 0) {
      const int half = j / 2;
      double c = 1.0;
      for (int i = 0; i < half; ++i) c *= (0.5 * m - i) / (i + 1.0);
      const double deg = t.degree;
      t.h = [c, deg](const Vec&, const Vec& xi) -> cplx {
        return c * std::pow(xi.norm(), deg);
      };
    }
    sym.terms.push_back(std::move(t));
  }
  return sym;
}

std::vector<double> default_t_sequence() { return {8.0, 16.0, 32.0, 64.0}; }

} // namespace ncres
