#include "ncres/extrapolation.hpp"

#include <cmath>
#include <stdexcept>

namespace ncres {

LimitFit aitken_limit(const std::vector<cplx>& seq) {
  const size_t n = seq.size();
  if (n == 0) throw std::invalid_argument("aitken_limit: empty sequence");
  LimitFit fit;
  if (n == 1) {
    fit.value = seq[0];
    fit.error_estimate = std::abs(seq[0]);
    return fit;
  }
  std::vector<double> deltas(n - 1);
  for (size_t k = 0; k + 1 < n; ++k) deltas[k] = std::abs(seq[k + 1] - seq[k]);

  const double scale = std::max(1.0, std::abs(seq.back()));
  fit.converged = true;
  for (size_t k = 1; k < deltas.size(); ++k)
    if (deltas[k] > 1.5 * deltas[k - 1] && deltas[k] > 1e-14 * scale)
      fit.converged = false;

  fit.value = seq.back();
  fit.error_estimate = deltas.back();
  if (n >= 3 && deltas[n - 2] < deltas[n - 3]) {
    const cplx d1 = seq[n - 1] - seq[n - 2];
    const cplx d0 = seq[n - 2] - seq[n - 3];
    const cplx den = d1 - d0;
    if (std::abs(den) > 1e-14 * std::abs(d0) + 1e-300)
      fit.value = seq[n - 1] - d1 * d1 / den;
  }
  return fit;
}

LimitFit neville_limit(const std::vector<double>& r, const std::vector<cplx>& f) {
  const size_t n = r.size();
  if (n == 0 || f.size() != n) throw std::invalid_argument("neville_limit: bad input");
  std::vector<cplx> t(f);
  LimitFit fit;
  fit.value = t[0];
  double prev_corr = std::abs(t[0]);
  fit.converged = true;
  for (size_t j = 1; j < n; ++j) {
    for (size_t i = 0; i + j < n; ++i)
      t[i] = (r[i + j] * t[i] - r[i] * t[i + 1]) / (r[i + j] - r[i]);
    const double corr = std::abs(t[0] - fit.value);
    const double scale = std::max(1.0, std::abs(t[0]));
    if (j >= 2 && corr > 1.5 * prev_corr && corr > 1e-13 * scale) {
      // the table stopped improving; keep the previous diagonal entry
      fit.converged = corr < 1e-8 * scale;
      fit.error_estimate = corr;
      return fit;
    }
    fit.error_estimate = corr;
    fit.value = t[0];
    prev_corr = std::max(corr, 1e-300);
  }
  return fit;
}

} // namespace ncres
