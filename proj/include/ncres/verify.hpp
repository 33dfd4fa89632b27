#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncres/spec_file.hpp"

namespace ncres {

struct VerifyOptions {
  double tol_floor = 0.0;   // raises every check's tolerance to at least this
  std::uint64_t seed = 12345;
};

// {ft, cocycle, conv, equivalence, all}.
std::vector<std::string> verify_suite_names();

// Runs the named invariant suite over the built-in catalog. Unknown suite
// names throw std::invalid_argument. Each check reports the measured
// quantity, the tolerance it was held to and a pass flag; nothing throws on
// a numerical failure.
std::vector<CheckResult> run_verify_suite(const std::string& suite,
                                          const VerifyOptions& opt = {});

} // namespace ncres
