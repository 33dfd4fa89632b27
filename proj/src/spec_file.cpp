#include "ncres/spec_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ncres/version.hpp"
#include "json.hpp"

namespace ncres {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_number(const std::string& tok, const std::string& origin, int line,
                    const std::string& field) {
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw SpecParseError(origin, line, field, "not a number: '" + tok + "'");
  }
}

std::vector<double> parse_number_list(const std::string& val, const std::string& origin,
                                      int line, const std::string& field) {
  std::vector<double> out;
  for (const std::string& tok : split_commas(val))
    out.push_back(parse_number(tok, origin, line, field));
  return out;
}

// "name" or "name(k1=v1, k2=v2)".
void parse_operator_value(const std::string& val, const std::string& origin, int line,
                          OperatorSpecFile& spec) {
  const size_t open = val.find('(');
  if (open == std::string::npos) {
    spec.operator_name = trim(val);
    return;
  }
  if (val.back() != ')')
    throw SpecParseError(origin, line, "operator", "missing ')' in '" + val + "'");
  spec.operator_name = trim(val.substr(0, open));
  const std::string inner = trim(val.substr(open + 1, val.size() - open - 2));
  if (inner.empty()) return;
  for (const std::string& item : split_commas(inner)) {
    const size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw SpecParseError(origin, line, "operator",
                           "parameter '" + item + "' is not key=value");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (key.empty() || value.empty())
      throw SpecParseError(origin, line, "operator",
                           "parameter '" + item + "' is not key=value");
    if (!spec.operator_params.emplace(key, value).second)
      throw SpecParseError(origin, line, "operator", "duplicate parameter '" + key + "'");
  }
}

// "trivial(d)", "heisenberg(n[,m])", or an all-ones weight list "1,1,...".
void parse_grading_value(const std::string& val, const std::string& origin, int line,
                         OperatorSpecFile& spec) {
  auto preset_args = [&](const std::string& head) -> std::vector<int> {
    const std::string inner =
        trim(val.substr(head.size() + 1, val.size() - head.size() - 2));
    std::vector<int> args;
    for (const std::string& tok : split_commas(inner)) {
      const double v = parse_number(tok, origin, line, "grading");
      if (v != static_cast<int>(v))
        throw SpecParseError(origin, line, "grading", "not an integer: '" + tok + "'");
      args.push_back(static_cast<int>(v));
    }
    return args;
  };

  if (val.rfind("trivial(", 0) == 0 && val.back() == ')') {
    const std::vector<int> args = preset_args("trivial");
    if (args.size() != 1 || args[0] < 1)
      throw SpecParseError(origin, line, "grading", "expected trivial(d) with d >= 1");
    spec.grading_name = "trivial(" + std::to_string(args[0]) + ")";
    spec.weights = Grading::trivial(args[0]).weights;
    return;
  }
  if (val.rfind("heisenberg(", 0) == 0 && val.back() == ')') {
    std::vector<int> args = preset_args("heisenberg");
    if (args.size() == 1) args.push_back(0);
    if (args.size() != 2 || args[0] < 1 || args[1] < 0)
      throw SpecParseError(origin, line, "grading",
                           "expected heisenberg(n[,m]) with n >= 1, m >= 0");
    spec.grading_name =
        "heisenberg(" + std::to_string(args[0]) + "," + std::to_string(args[1]) + ")";
    spec.weights = Grading::heisenberg(args[0], args[1]).weights;
    return;
  }

  std::vector<int> w;
  for (const std::string& tok : split_commas(val)) {
    const double v = parse_number(tok, origin, line, "grading");
    if (v != static_cast<int>(v) || v < 1)
      throw SpecParseError(origin, line, "grading", "bad weight '" + tok + "'");
    w.push_back(static_cast<int>(v));
  }
  if (!std::all_of(w.begin(), w.end(), [](int x) { return x == 1; }))
    throw SpecParseError(origin, line, "grading",
                         "weight lists must be all ones; use trivial(d) or "
                         "heisenberg(n,m) for graded cases");
  spec.grading_name = "trivial(" + std::to_string(w.size()) + ")";
  spec.weights = std::move(w);
}

// The grading fixes the catalog's dimension parameters; an operator line
// repeating them must agree.
void merge_grading_params(OperatorSpecFile& spec, const std::string& origin, int line) {
  auto inject = [&](const std::string& key, int value) {
    auto it = spec.operator_params.find(key);
    if (it == spec.operator_params.end()) {
      spec.operator_params[key] = std::to_string(value);
      return;
    }
    if (trim(it->second) != std::to_string(value))
      throw SpecParseError(origin, line, "operator",
                           "parameter " + key + "=" + it->second +
                               " conflicts with grading " + spec.grading_name);
  };
  if (spec.grading_name.rfind("trivial", 0) == 0) {
    inject("dim", static_cast<int>(spec.weights.size()));
  } else {
    int n = 0, mab = 0;
    std::sscanf(spec.grading_name.c_str(), "heisenberg(%d,%d)", &n, &mab);
    inject("n", n);
    inject("mab", mab);
  }
}

json cplx_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }
cplx cplx_from_json(const json& j) { return cplx(j.at(0).get<double>(), j.at(1).get<double>()); }

json settings_to_json(const OperatorSpecFile& s) {
  json j;
  j["origin"] = s.origin;
  j["grading"] = s.grading_name;
  j["weights"] = s.weights;
  j["operator"] = s.operator_name;
  j["parameters"] = s.operator_params;
  j["points"] = s.base_points;
  j["sphere_degree"] = s.sphere_degree;
  j["t_sequence"] = s.t_sequence;
  j["s_set"] = s.s_set;
  j["tolerance"] = s.tolerance;
  j["seed"] = s.seed;
  j["format"] = s.output_format;
  return j;
}

OperatorSpecFile settings_from_json(const json& j) {
  OperatorSpecFile s;
  s.origin = j.at("origin").get<std::string>();
  s.grading_name = j.at("grading").get<std::string>();
  s.weights = j.at("weights").get<std::vector<int>>();
  s.operator_name = j.at("operator").get<std::string>();
  s.operator_params = j.at("parameters").get<std::map<std::string, std::string>>();
  s.base_points = j.at("points").get<std::vector<std::vector<double>>>();
  s.sphere_degree = j.at("sphere_degree").get<int>();
  s.t_sequence = j.at("t_sequence").get<std::vector<double>>();
  s.s_set = j.at("s_set").get<std::vector<double>>();
  s.tolerance = j.at("tolerance").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.output_format = j.at("format").get<std::string>();
  return s;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string format_cplx(const cplx& z) {
  if (z.imag() == 0.0) return format_double(z.real());
  return format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") +
         format_double(std::abs(z.imag())) + "i";
}

} // namespace

SpecParseError::SpecParseError(const std::string& origin_, int line_,
                               const std::string& field_, const std::string& what_)
    : std::runtime_error(origin_ + ":" + std::to_string(line_) + ": [" + field_ + "] " +
                         what_),
      origin(origin_), line(line_), field(field_) {}

OperatorSpecFile parse_spec_text(const std::string& text, const std::string& origin) {
  OperatorSpecFile spec;
  spec.origin = origin;

  int grading_line = 0, operator_line = 0;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw SpecParseError(origin, lineno, "-", "expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw SpecParseError(origin, lineno, key.empty() ? "-" : key, "empty key or value");

    if (key == "grading") {
      parse_grading_value(val, origin, lineno, spec);
      grading_line = lineno;
    } else if (key == "operator") {
      parse_operator_value(val, origin, lineno, spec);
      operator_line = lineno;
    } else if (key == "point") {
      spec.base_points.push_back(parse_number_list(val, origin, lineno, "point"));
    } else if (key == "sphere_degree") {
      const double v = parse_number(val, origin, lineno, key);
      if (v < 1 || v != static_cast<int>(v))
        throw SpecParseError(origin, lineno, key, "expected a positive integer");
      spec.sphere_degree = static_cast<int>(v);
    } else if (key == "t_sequence") {
      spec.t_sequence = parse_number_list(val, origin, lineno, key);
      if (spec.t_sequence.size() < 2 ||
          !std::is_sorted(spec.t_sequence.begin(), spec.t_sequence.end()) ||
          spec.t_sequence.front() <= 0)
        throw SpecParseError(origin, lineno, key,
                             "expected >= 2 increasing positive values");
    } else if (key == "s_set") {
      spec.s_set = parse_number_list(val, origin, lineno, key);
      for (double s : spec.s_set)
        if (s <= 0 || s == 1.0)
          throw SpecParseError(origin, lineno, key,
                               "scales must be positive and != 1, got " + format_double(s));
      if (spec.s_set.empty())
        throw SpecParseError(origin, lineno, key, "needs at least one scale");
    } else if (key == "tolerance") {
      spec.tolerance = parse_number(val, origin, lineno, key);
      if (spec.tolerance <= 0)
        throw SpecParseError(origin, lineno, key, "tolerance must be positive");
    } else if (key == "seed") {
      const double v = parse_number(val, origin, lineno, key);
      if (v < 0 || v != static_cast<std::uint64_t>(v))
        throw SpecParseError(origin, lineno, key, "expected a nonnegative integer");
      spec.seed = static_cast<std::uint64_t>(v);
    } else if (key == "format") {
      if (val != "text" && val != "json" && val != "csv")
        throw SpecParseError(origin, lineno, key,
                             "expected text, json or csv, got '" + val + "'");
      spec.output_format = val;
    } else {
      throw SpecParseError(origin, lineno, key, "unknown key");
    }
  }

  if (spec.grading_name.empty())
    throw SpecParseError(origin, lineno, "grading", "missing required key");
  if (spec.operator_name.empty())
    throw SpecParseError(origin, lineno, "operator", "missing required key");

  merge_grading_params(spec, origin, std::max(grading_line, operator_line));

  const size_t dim = spec.weights.size();
  if (spec.base_points.empty())
    spec.base_points.push_back(std::vector<double>(dim, 0.0));
  for (const auto& p : spec.base_points)
    if (p.size() != dim)
      throw SpecParseError(origin, lineno, "point",
                           "point of dimension " + std::to_string(p.size()) +
                               " does not match grading " + spec.grading_name);

  try {
    (void)model_from_spec(spec);
  } catch (const std::exception& e) {
    throw SpecParseError(origin, operator_line, "operator", e.what());
  }
  return spec;
}

OperatorSpecFile parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw SpecParseError(path, 0, "-", "cannot open spec file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str(), path);
}

OperatorModel model_from_spec(const OperatorSpecFile& spec) {
  return make_model(spec.operator_name, spec.operator_params);
}

ResidueOptions options_from_spec(const OperatorSpecFile& spec) {
  ResidueOptions opt;
  opt.sphere_degree = spec.sphere_degree;
  opt.s_set = spec.s_set;
  opt.t_sequence = spec.t_sequence;
  opt.tolerance = spec.tolerance;
  opt.seed = static_cast<unsigned>(spec.seed);
  return opt;
}

bool Report::all_pass() const {
  for (const auto& p : points)
    if (!p.pass()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string report_to_json(const Report& rep) {
  json j;
  j["tool"] = "ncres";
  j["version"] = rep.tool_version;
  j["command"] = rep.command;
  j["settings"] = settings_to_json(rep.settings);
  j["elapsed_seconds"] = rep.elapsed_seconds;
  j["pass"] = rep.all_pass();

  json pts = json::array();
  for (const auto& p : rep.points) {
    json jp;
    jp["x"] = std::vector<double>(p.x.data(), p.x.data() + p.x.size());
    json methods;
    if (p.has_wodzicki) methods["wodzicki"] = {{"value", cplx_to_json(p.wodzicki)}};
    if (p.has_ponge) methods["ponge"] = {{"value", cplx_to_json(p.ponge)}};
    if (p.has_groupoidal) {
      json g;
      g["value"] = cplx_to_json(p.groupoidal.value);
      g["spread"] = p.groupoidal.spread;
      g["error_estimate"] = p.groupoidal.error_estimate;
      g["accepted"] = p.groupoidal.accepted;
      g["short_circuit"] = p.groupoidal.short_circuit;
      json per_s = json::array();
      for (const auto& smp : p.groupoidal.samples) {
        json js;
        js["s"] = smp.s;
        js["F_at_zero"] = cplx_to_json(smp.F_at_zero);
        js["extrapolation_error"] = smp.extrapolation_error;
        js["converged"] = smp.converged;
        per_s.push_back(js);
      }
      g["samples"] = per_s;
      methods["groupoidal"] = g;
    }
    jp["methods"] = methods;
    if (p.has_equiv) {
      json e;
      e["sphere_constant"] = cplx_to_json(p.equiv.c0_value);
      e["cocycle_constant"] = cplx_to_json(p.equiv.graded_angular_constant);
      e["s_values"] = p.equiv.s_values;
      e["certification_errors"] = p.equiv.certification_errors;
      e["certified"] = p.equiv.certified;
      jp["dilation_certification"] = e;
    }
    jp["agreement_error"] = p.agreement_error;
    jp["agree"] = p.agree;
    if (!p.note.empty()) jp["note"] = p.note;
    jp["pass"] = p.pass();
    pts.push_back(jp);
  }
  j["points"] = pts;

  json chk = json::array();
  for (const auto& c : rep.checks) {
    json jc;
    jc["name"] = c.name;
    jc["measured"] = c.measured;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    chk.push_back(jc);
  }
  j["checks"] = chk;
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  Report rep;
  rep.tool_version = j.at("version").get<std::string>();
  rep.command = j.at("command").get<std::string>();
  rep.settings = settings_from_json(j.at("settings"));
  rep.elapsed_seconds = j.at("elapsed_seconds").get<double>();

  for (const auto& jp : j.at("points")) {
    ResidueReport p;
    const auto xv = jp.at("x").get<std::vector<double>>();
    p.x = Eigen::Map<const Vec>(xv.data(), static_cast<Eigen::Index>(xv.size()));
    const json& methods = jp.at("methods");
    if (methods.contains("wodzicki")) {
      p.has_wodzicki = true;
      p.wodzicki = cplx_from_json(methods["wodzicki"].at("value"));
    }
    if (methods.contains("ponge")) {
      p.has_ponge = true;
      p.ponge = cplx_from_json(methods["ponge"].at("value"));
    }
    if (methods.contains("groupoidal")) {
      const json& g = methods["groupoidal"];
      p.has_groupoidal = true;
      p.groupoidal.value = cplx_from_json(g.at("value"));
      p.groupoidal.spread = g.at("spread").get<double>();
      p.groupoidal.error_estimate = g.at("error_estimate").get<double>();
      p.groupoidal.accepted = g.at("accepted").get<bool>();
      p.groupoidal.short_circuit = g.at("short_circuit").get<bool>();
      for (const auto& js : g.at("samples")) {
        CocycleSample smp;
        smp.s = js.at("s").get<double>();
        smp.F_at_zero = cplx_from_json(js.at("F_at_zero"));
        smp.extrapolation_error = js.at("extrapolation_error").get<double>();
        smp.converged = js.at("converged").get<bool>();
        p.groupoidal.samples.push_back(smp);
      }
    }
    if (jp.contains("dilation_certification")) {
      const json& e = jp["dilation_certification"];
      p.has_equiv = true;
      p.equiv.c0_value = cplx_from_json(e.at("sphere_constant"));
      p.equiv.graded_angular_constant = cplx_from_json(e.at("cocycle_constant"));
      p.equiv.s_values = e.at("s_values").get<std::vector<double>>();
      p.equiv.certification_errors =
          e.at("certification_errors").get<std::vector<double>>();
      p.equiv.certified = e.at("certified").get<bool>();
      p.equiv.ponge = p.ponge;
      p.equiv.groupoidal = p.groupoidal.value;
      p.equiv.agreement_error = jp.at("agreement_error").get<double>();
      p.equiv.agree = jp.at("agree").get<bool>();
    }
    p.agreement_error = jp.at("agreement_error").get<double>();
    p.agree = jp.at("agree").get<bool>();
    if (jp.contains("note")) p.note = jp["note"].get<std::string>();
    rep.points.push_back(std::move(p));
  }

  for (const auto& jc : j.at("checks")) {
    CheckResult c;
    c.name = jc.at("name").get<std::string>();
    c.measured = jc.at("measured").get<double>();
    c.tolerance = jc.at("tolerance").get<double>();
    c.pass = jc.at("pass").get<bool>();
    if (jc.contains("detail")) c.detail = jc["detail"].get<std::string>();
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

std::string report_to_csv(const Report& rep) {
  std::ostringstream os;
  os.precision(17);
  if (!rep.points.empty()) {
    os << "point,method,value,error_estimate,pass\n";
    for (const auto& p : rep.points) {
      std::ostringstream pt;
      pt.precision(17);
      for (Eigen::Index i = 0; i < p.x.size(); ++i)
        pt << (i ? " " : "") << p.x[i];
      const std::string point = "\"(" + pt.str() + ")\"";
      const std::string flag = p.pass() ? "1" : "0";
      if (p.has_wodzicki)
        os << point << ",wodzicki," << p.wodzicki.real() << ",0," << flag << "\n";
      if (p.has_ponge)
        os << point << ",ponge," << p.ponge.real() << ",0," << flag << "\n";
      if (p.has_groupoidal)
        os << point << ",groupoidal," << p.groupoidal.value.real() << ","
           << p.groupoidal.error_estimate << "," << flag << "\n";
    }
  }
  if (!rep.checks.empty()) {
    os << "check,measured,tolerance,pass\n";
    for (const auto& c : rep.checks)
      os << c.name << "," << c.measured << "," << c.tolerance << ","
         << (c.pass ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string report_to_text(const Report& rep) {
  std::ostringstream os;
  os << "ncres " << rep.tool_version << " -- " << rep.command << "\n";
  if (rep.command == "residue") {
    const auto& s = rep.settings;
    os << "spec: " << s.origin << "\n";
    os << "grading: " << s.grading_name << "  operator: " << s.operator_name;
    if (!s.operator_params.empty()) {
      os << "(";
      bool first = true;
      for (const auto& [k, v] : s.operator_params) {
        os << (first ? "" : ", ") << k << "=" << v;
        first = false;
      }
      os << ")";
    }
    os << "\n";
    os << "sphere_degree: " << s.sphere_degree << "  tolerance: " << s.tolerance
       << "  seed: " << s.seed << "\n";
    os << "s_set:";
    for (double v : s.s_set) os << " " << format_double(v);
    os << "\n\n";
  }

  for (const auto& p : rep.points) {
    os << "point (";
    for (Eigen::Index i = 0; i < p.x.size(); ++i)
      os << (i ? ", " : "") << format_double(p.x[i]);
    os << ")\n";
    if (p.has_wodzicki)
      os << "  wodzicki    " << format_cplx(p.wodzicki) << "\n";
    if (p.has_ponge)
      os << "  ponge       " << format_cplx(p.ponge) << "\n";
    if (p.has_groupoidal) {
      os << "  groupoidal  " << format_cplx(p.groupoidal.value);
      if (p.groupoidal.short_circuit)
        os << "   (below critical order; cocycle consistency "
           << (p.groupoidal.accepted ? "ok" : "FAILED") << ")";
      else
        os << "   (s-spread " << format_double(p.groupoidal.spread) << ", "
           << (p.groupoidal.accepted ? "accepted" : "NOT ACCEPTED") << ")";
      os << "\n";
    }
    if (p.has_wodzicki + p.has_ponge + p.has_groupoidal > 1)
      os << "  agreement   " << format_double(p.agreement_error) << "  "
         << (p.agree ? "ok" : "DISAGREE") << "\n";
    if (p.has_equiv) {
      os << "  dilation-cocycle certification: "
         << (p.equiv.certified ? "ok" : "FAILED") << "  (cocycle constant "
         << format_cplx(p.equiv.graded_angular_constant) << ", sphere constant "
         << format_cplx(p.equiv.c0_value) << ")\n";
    }
    if (!p.note.empty()) os << "  note: " << p.note << "\n";
    os << "  " << (p.pass() ? "PASS" : "FAIL") << "\n";
  }

  for (const auto& c : rep.checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  measured "
       << format_double(c.measured) << "  tolerance " << format_double(c.tolerance);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }

  os << "\nresult: " << (rep.all_pass() ? "PASS" : "FAIL") << "  (elapsed "
     << format_double(rep.elapsed_seconds) << " s)\n";

  const std::string csv = report_to_csv(rep);
  if (!csv.empty()) os << "\ncsv:\n" << csv;
  return os.str();
}

} // namespace ncres
