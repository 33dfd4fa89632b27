#pragma once

#include <vector>

#include "ncres/types.hpp"

namespace ncres {

// Result of extrapolating a convergent sequence to its limit.
struct LimitFit {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0; // conservative; magnitude of the last correction
  bool converged = false;      // successive corrections were non-increasing
};

// Aitken delta-squared acceleration for sequences with slowly varying
// contraction ratio (used for the t -> infinity Fourier truncation limits).
// Falls back to the last raw value when acceleration is not warranted.
LimitFit aitken_limit(const std::vector<cplx>& seq);

// Polynomial (Neville) extrapolation of f(r) to r = 0 from samples at
// r_0 > r_1 > ... > 0. Machine-precision for functions smooth at 0 sampled
// on a geometric sequence; used for the v -> 0 cocycle limits and the
// shrinking-bump delta extraction.
LimitFit neville_limit(const std::vector<double>& r, const std::vector<cplx>& f);

} // namespace ncres
