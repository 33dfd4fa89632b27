#include <string>

#include "doctest.h"
#include "ncres/spec_file.hpp"
#include "ncres/verify.hpp"

using namespace ncres;

namespace {

const char* kFullSpec = R"(# He1 run
grading = heisenberg(1)
operator = graded_norm_power(m=-4, variant=plain)
point = 0, 0, 0
point = 0.1, -0.2, 0.3
sphere_degree = 24
t_sequence = 128, 256, 512
s_set = 0.5, 2, 3
tolerance = 1e-5
seed = 99
format = json
)";

} // namespace

TEST_CASE("spec parsing: full file") {
  const OperatorSpecFile s = parse_spec_text(kFullSpec, "mem.spec");
  CHECK(s.origin == "mem.spec");
  CHECK(s.grading_name == "heisenberg(1,0)");
  CHECK(s.weights == std::vector<int>{2, 1, 1});
  CHECK(s.operator_name == "graded_norm_power");
  CHECK(s.operator_params.at("m") == "-4");
  CHECK(s.operator_params.at("variant") == "plain");
  CHECK(s.operator_params.at("n") == "1"); // injected from the grading
  CHECK(s.base_points.size() == 2);
  CHECK(s.base_points[1] == std::vector<double>{0.1, -0.2, 0.3});
  CHECK(s.sphere_degree == 24);
  CHECK(s.t_sequence == std::vector<double>{128.0, 256.0, 512.0});
  CHECK(s.s_set == std::vector<double>{0.5, 2.0, 3.0});
  CHECK(s.tolerance == 1e-5);
  CHECK(s.seed == 99);
  CHECK(s.output_format == "json");

  const OperatorModel P = model_from_spec(s);
  CHECK(P.name == "graded_norm_power");
  CHECK(P.dim() == 3);
  CHECK(P.order == -4.0);

  const ResidueOptions opt = options_from_spec(s);
  CHECK(opt.sphere_degree == 24);
  CHECK(opt.s_set == std::vector<double>{0.5, 2.0, 3.0});
  CHECK(opt.tolerance == 1e-5);
  CHECK(opt.seed == 99);
}

TEST_CASE("spec parsing: defaults and grading forms") {
  const OperatorSpecFile s =
      parse_spec_text("grading = trivial(2)\noperator = log_kernel\n");
  CHECK(s.weights == std::vector<int>{1, 1});
  CHECK(s.base_points == std::vector<std::vector<double>>{{0.0, 0.0}});
  CHECK(s.sphere_degree == 30);
  CHECK(s.tolerance == 1e-6);
  CHECK(s.seed == 12345);
  CHECK(s.output_format == "text");
  CHECK(s.operator_params.at("dim") == "2");

  // an all-ones weight list is the same grading
  const OperatorSpecFile w =
      parse_spec_text("grading = 1, 1\noperator = log_kernel\n");
  CHECK(w.grading_name == s.grading_name);
  CHECK(w.weights == s.weights);

  // non-preset weight lists are rejected
  CHECK_THROWS_AS(parse_spec_text("grading = 2, 1, 1\noperator = log_kernel\n"),
                  SpecParseError);
}

TEST_CASE("spec parsing: errors carry origin, line and field") {
  try {
    parse_spec_text("grading = trivial(2)\noperator = fourier_magic\n", "bad.spec");
    FAIL("expected a parse error");
  } catch (const SpecParseError& e) {
    CHECK(e.origin == "bad.spec");
    CHECK(e.line == 2);
    CHECK(e.field == "operator");
    CHECK(std::string(e.what()).find("bad.spec:2:") == 0);
    CHECK(std::string(e.what()).find("fourier_magic") != std::string::npos);
  }

  // unknown key, with its line number
  try {
    parse_spec_text("grading = trivial(2)\noperator = log_kernel\n\nwavelets = 3\n");
    FAIL("expected a parse error");
  } catch (const SpecParseError& e) {
    CHECK(e.line == 4);
    CHECK(e.field == "wavelets");
  }

  // missing required keys
  CHECK_THROWS_AS(parse_spec_text("operator = log_kernel\n"), SpecParseError);
  CHECK_THROWS_AS(parse_spec_text("grading = trivial(2)\n"), SpecParseError);

  // dimension conflicts between grading and operator parameters
  CHECK_THROWS_AS(
      parse_spec_text("grading = trivial(2)\noperator = log_kernel(dim=3)\n"),
      SpecParseError);
  CHECK_THROWS_AS(
      parse_spec_text("grading = heisenberg(1)\noperator = graded_norm_power(n=2)\n"),
      SpecParseError);

  // point dimension must match the grading
  CHECK_THROWS_AS(
      parse_spec_text("grading = trivial(2)\noperator = log_kernel\npoint = 1\n"),
      SpecParseError);

  // malformed values
  CHECK_THROWS_AS(
      parse_spec_text("grading = trivial(2)\noperator = log_kernel\ntolerance = 0\n"),
      SpecParseError);
  CHECK_THROWS_AS(
      parse_spec_text("grading = trivial(2)\noperator = log_kernel\ns_set = 1\n"),
      SpecParseError);
  CHECK_THROWS_AS(
      parse_spec_text("grading = trivial(2)\noperator = log_kernel\nt_sequence = 512\n"),
      SpecParseError);
  CHECK_THROWS_AS(
      parse_spec_text("grading = trivial(2)\noperator = log_kernel\nformat = yaml\n"),
      SpecParseError);
  CHECK_THROWS_AS(
      parse_spec_text("grading = trivial(2)\noperator = log_kernel(p0=1,p0=2)\n"),
      SpecParseError);
  CHECK_THROWS_AS(parse_spec_text("grading = trivial(2)\noperator = log_kernel\nseed = -4\n"),
                  SpecParseError);
  CHECK_THROWS_AS(parse_spec_text("grading\noperator = log_kernel\n"), SpecParseError);

  // file that is not there
  CHECK_THROWS_AS(parse_spec_file("/nonexistent/x.spec"), SpecParseError);
}

TEST_CASE("report serialization round trip") {
  const OperatorSpecFile s = parse_spec_text(kFullSpec, "mem.spec");
  Report rep;
  rep.tool_version = "0.1.0";
  rep.command = "residue";
  rep.settings = s;
  rep.elapsed_seconds = 0.25;
  rep.points.push_back(residue_report_at(model_from_spec(s), Vec::Zero(3),
                                         options_from_spec(s)));
  CHECK(rep.all_pass());

  const std::string js = report_to_json(rep);
  const Report back = report_from_json(js);
  CHECK(back.settings == s); // exact echo round trip
  CHECK(back.tool_version == rep.tool_version);
  CHECK(back.command == rep.command);
  CHECK(back.points.size() == 1);
  CHECK(back.points[0].has_ponge);
  CHECK(back.points[0].ponge == rep.points[0].ponge);
  CHECK(back.points[0].equiv.certified == rep.points[0].equiv.certified);
  CHECK(back.all_pass() == rep.all_pass());

  const std::string csv = report_to_csv(rep);
  CHECK(csv.find("point,method,value,error_estimate,pass") != std::string::npos);
  CHECK(csv.find("ponge") != std::string::npos);

  const std::string text = report_to_text(rep);
  CHECK(text.find("result: PASS") != std::string::npos);
  CHECK(text.find("graded_norm_power") != std::string::npos);
  CHECK(text.find("dilation-cocycle certification") != std::string::npos);
}

TEST_CASE("verify runner registration") {
  const auto suites = verify_suite_names();
  CHECK(suites == std::vector<std::string>{"ft", "cocycle", "conv", "equivalence", "all"});
  CHECK_THROWS_AS(run_verify_suite("nosuch"), std::invalid_argument);

  // the cheapest suite end to end, and its serialized forms
  Report rep;
  rep.tool_version = "0.1.0";
  rep.command = "verify cocycle";
  rep.checks = run_verify_suite("cocycle");
  CHECK(!rep.checks.empty());
  CHECK(rep.all_pass());
  for (const auto& c : rep.checks) {
    CHECK(c.pass);
    CHECK(c.measured <= c.tolerance);
  }

  const std::string csv = report_to_csv(rep);
  CHECK(csv.find("check,measured,tolerance,pass") != std::string::npos);
  const Report back = report_from_json(report_to_json(rep));
  CHECK(back.checks.size() == rep.checks.size());
  CHECK(back.checks[0].name == rep.checks[0].name);
  CHECK(back.all_pass());
}
