#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "ncres/spec_file.hpp"
#include "ncres/verify.hpp"
#include "ncres/version.hpp"

namespace {

using namespace ncres;

struct CommonFlags {
  std::string out_path;
  std::string format;
  std::optional<double> tol;
  std::optional<std::vector<double>> s_set;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--out", f.out_path, "Write the report here instead of stdout");
  cmd->add_option("--format", f.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--tol", f.tol, "Tolerance override");
  cmd->add_option("--s-set", f.s_set,
                  "Comma-separated zoom scales (positive, != 1)")
      ->delimiter(',');
  cmd->add_option("--seed", f.seed, "Seed for any sampled quantities");
  cmd->add_option("--threads", f.threads, "OpenMP thread count (0 = default)");
}

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int emit(const Report& rep, const std::string& format, const std::string& out_path) {
  std::string body;
  if (format == "json")
    body = report_to_json(rep);
  else if (format == "csv")
    body = report_to_csv(rep);
  else
    body = report_to_text(rep);

  if (out_path.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "ncres: cannot write " << out_path << "\n";
    return 2;
  }
  out << body;
  return 0;
}

int cmd_residue(const std::string& spec_path, const CommonFlags& flags) {
  apply_threads(flags.threads);
  OperatorSpecFile spec = parse_spec_file(spec_path);
  if (flags.tol) spec.tolerance = *flags.tol;
  if (flags.seed) spec.seed = *flags.seed;
  if (!flags.format.empty()) spec.output_format = flags.format;
  if (flags.s_set) {
    for (double s : *flags.s_set)
      if (s <= 0.0 || s == 1.0)
        throw SpecParseError("--s-set", 0, "s_set",
                             "scales must be positive and != 1");
    spec.s_set = *flags.s_set;
  }

  Report rep;
  rep.tool_version = kVersion;
  rep.command = "residue";
  rep.settings = spec;

  const OperatorModel P = model_from_spec(spec);
  const ResidueOptions opt = options_from_spec(spec);

  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& pt : spec.base_points) {
    const Vec x = Eigen::Map<const Vec>(pt.data(), static_cast<Eigen::Index>(pt.size()));
    rep.points.push_back(residue_report_at(P, x, opt));
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const int io = emit(rep, spec.output_format, flags.out_path);
  if (io != 0) return io;
  return rep.all_pass() ? 0 : 1;
}

int cmd_verify(const std::string& suite, const CommonFlags& flags) {
  apply_threads(flags.threads);
  VerifyOptions vopt;
  if (flags.tol) vopt.tol_floor = *flags.tol;
  if (flags.seed) vopt.seed = *flags.seed;

  Report rep;
  rep.tool_version = kVersion;
  rep.command = "verify " + suite;
  rep.settings.origin = "<builtin catalog>";

  const auto t0 = std::chrono::steady_clock::now();
  rep.checks = run_verify_suite(suite, vopt); // unknown suite -> invalid_argument
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string format = flags.format.empty() ? "text" : flags.format;
  const int io = emit(rep, format, flags.out_path);
  if (io != 0) return io;
  return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noncommutative residues of model operators: sphere integrals, "
               "graded sphere integrals and the zoom-cocycle limit, with "
               "cross-method verification suites"};
  app.set_version_flag("--version", std::string("ncres ") + ncres::kVersion);
  app.require_subcommand(1);

  std::string spec_path;
  CommonFlags residue_flags;
  CLI::App* residue = app.add_subcommand(
      "residue", "Run every applicable residue method over an operator spec");
  residue->add_option("--spec", spec_path, "Operator spec file")
      ->required();
  add_common(residue, residue_flags);

  std::string suite;
  CommonFlags verify_flags;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run a named invariant suite over the built-in catalog");
  verify->add_option("suite", suite, "ft | cocycle | conv | equivalence | all")
      ->required();
  add_common(verify, verify_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2; // bad usage is a spec error, not a numerical one
  }

  try {
    if (residue->parsed()) return cmd_residue(spec_path, residue_flags);
    return cmd_verify(suite, verify_flags);
  } catch (const ncres::SpecParseError& e) {
    std::cerr << "ncres: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ncres: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ncres: " << e.what() << "\n";
    return 1;
  }
}
