#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncres/residue.hpp"

namespace ncres {

// Parse failure with file/line/field context.
struct SpecParseError : std::runtime_error {
  SpecParseError(const std::string& origin, int line, const std::string& field,
                 const std::string& what);
  std::string origin;
  int line = 0;
  std::string field;
};

// One operator run, fully resolved: grading preset, catalog term, base
// points, quadrature settings, s-set, tolerance, seed, output format.
// Everything a run needs is in here; re-running the same spec with the same
// tool version reproduces the report bit-for-bit.
struct OperatorSpecFile {
  std::string origin;                 // path or "<inline>"

  std::string grading_name;           // "trivial(d)" or "heisenberg(n,m)"
  std::vector<int> weights;           // resolved weight vector
  std::string operator_name;          // catalog term name
  std::map<std::string, std::string> operator_params; // merged with grading dims

  std::vector<std::vector<double>> base_points; // default: the origin
  int sphere_degree = 30;
  std::vector<double> t_sequence{256.0, 512.0, 1024.0, 2048.0};
  std::vector<double> s_set{1.0 / 3.0, 0.5, 2.0, 3.0};
  double tolerance = 1e-6;
  std::uint64_t seed = 12345;
  std::string output_format = "text"; // text | json | csv

  bool operator==(const OperatorSpecFile&) const = default;
};

// Key = value lines, '#' comments. Keys: grading, operator, point
// (repeatable), sphere_degree, t_sequence, s_set, tolerance, seed, format.
// The operator value is "name" or "name(k1=v1, k2=v2)"; the grading's
// dimensions are injected into the parameter map (and must match any the
// operator line also declares). Unknown keys, unknown catalog names and
// malformed values throw SpecParseError pointing at the line.
OperatorSpecFile parse_spec_file(const std::string& path);
OperatorSpecFile parse_spec_text(const std::string& text,
                                 const std::string& origin = "<inline>");

OperatorModel model_from_spec(const OperatorSpecFile& spec);
ResidueOptions options_from_spec(const OperatorSpecFile& spec);

// One named numerical check inside a verification suite.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

// The run artifact: resolved settings echo, per-point method results,
// suite results, timing. Deterministic given spec + version.
struct Report {
  std::string tool_version;
  std::string command;                // "residue" | "verify <suite>"
  OperatorSpecFile settings;          // resolved echo (residue runs)
  std::vector<ResidueReport> points;
  std::vector<CheckResult> checks;    // verify runs
  double elapsed_seconds = 0.0;

  bool all_pass() const;
};

std::string report_to_json(const Report& rep);
std::string report_to_text(const Report& rep);
// Flat table: point, method, value, error_estimate, pass  (verify runs:
// check, measured, tolerance, pass).
std::string report_to_csv(const Report& rep);

// Re-parse of report_to_json output; settings echo round-trips exactly.
Report report_from_json(const std::string& json_text);

} // namespace ncres
