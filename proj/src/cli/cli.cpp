#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "sgball/coefficient_field.hpp"
#include "sgball/diagnostics.hpp"
#include "sgball/errors.hpp"
#include "sgball/solver.hpp"

namespace sgball::cli {

namespace {

constexpr const char* kOutputDirEnv = "SGBALL_OUTPUT_DIR";

// A usage problem detected after parsing (bad file, bad config key, ...).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// basis-check found a violated invariant.
class InvariantFailure : public std::runtime_error {
 public:
  InvariantFailure(const std::string& what, std::vector<std::string> failures)
      : std::runtime_error(what), failures_(std::move(failures)) {}
  const std::vector<std::string>& failures() const noexcept { return failures_; }

 private:
  std::vector<std::string> failures_;
};

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::x:
      return "x";
    case Axis::y:
      return "y";
    case Axis::z:
      return "z";
  }
  return "z";
}

std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Raw flag values before merging with the config file.
struct Flags {
  std::string case_text;
  int degree = 0;
  std::string degrees_text;
  int radial = 0;
  int theta = 0;
  int phi = 0;
  std::string out;
  std::string format;
  std::string plane = "z=0";
  int resolution = 64;
  std::string var = "u";
  int threads = 0;
  bool timings = false;
  double perturb = 0.0;
  std::string config_path;
};

struct Command {
  CLI::App* app = nullptr;
  std::map<std::string, CLI::Option*> options;

  bool given(const std::string& key) const {
    auto it = options.find(key);
    return it != options.end() && it->second->count() > 0;
  }
  bool has(const std::string& key) const { return options.count(key) > 0; }
};

nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.is_object()) throw UsageError("config file '" + path + "' must hold a JSON object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

std::string json_to_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Flags beat the config file, which beats the defaults.
RunConfig merge(const std::string& name, const Command& cmd, const Flags& flags) {
  nlohmann::json file = nlohmann::json::object();
  if (!flags.config_path.empty()) file = read_config_file(flags.config_path);

  static const std::map<std::string, std::string> kKeys = {
      {"case", "case"},           {"degree", "degree"},       {"degrees", "degrees"},
      {"radial_nodes", "radial"}, {"theta_nodes", "theta"},   {"phi_nodes", "phi"},
      {"out", "out"},             {"format", "format"},       {"plane", "plane"},
      {"grid", "grid"},           {"var", "var"},             {"threads", "threads"},
      {"timings", "timings"}};
  for (const auto& [key, value] : file.items()) {
    auto it = kKeys.find(key);
    if (it == kKeys.end() || !cmd.has(it->second)) {
      throw UsageError("config key '" + key + "' is not accepted by " + name);
    }
  }

  auto pick = [&](const std::string& opt, const std::string& key) -> const nlohmann::json* {
    if (cmd.given(opt)) return nullptr;
    auto it = file.find(key);
    return it == file.end() ? nullptr : &*it;
  };
  auto as_int = [](const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer()) throw UsageError("config key '" + key + "' must be an integer");
    return v.get<int>();
  };

  RunConfig c;
  c.command = name;
  c.degree = name == "basis-check" ? 6 : 16;

  std::string case_text = flags.case_text.empty() ? "1" : flags.case_text;
  if (auto v = pick("case", "case")) case_text = json_to_text(*v);
  c.case_id = parse_case(case_text);

  if (cmd.given("degree")) c.degree = flags.degree;
  else if (auto v = pick("degree", "degree")) c.degree = as_int(*v, "degree");

  if (cmd.given("degrees")) {
    c.degrees = parse_degrees(flags.degrees_text);
  } else if (auto v = pick("degrees", "degrees")) {
    if (v->is_string()) {
      c.degrees = parse_degrees(v->get<std::string>());
    } else if (v->is_array()) {
      c.degrees.clear();
      for (const auto& d : *v) c.degrees.push_back(as_int(d, "degrees"));
      if (c.degrees.empty()) throw InvalidArgument("degree list is empty");
    } else {
      throw UsageError("config key 'degrees' must be a list or a string");
    }
  }

  c.grid.radial = flags.radial;
  c.grid.theta = flags.theta;
  c.grid.phi = flags.phi;
  if (auto v = pick("radial", "radial_nodes")) c.grid.radial = as_int(*v, "radial_nodes");
  if (auto v = pick("theta", "theta_nodes")) c.grid.theta = as_int(*v, "theta_nodes");
  if (auto v = pick("phi", "phi_nodes")) c.grid.phi = as_int(*v, "phi_nodes");

  c.out = flags.out;
  if (auto v = pick("out", "out")) c.out = json_to_text(*v);
  c.format = flags.format;
  if (auto v = pick("format", "format")) c.format = json_to_text(*v);

  std::string plane = flags.plane;
  if (auto v = pick("plane", "plane")) plane = json_to_text(*v);
  if (cmd.has("plane")) c.plane = parse_plane(plane);

  c.resolution = flags.resolution;
  if (auto v = pick("grid", "grid")) c.resolution = as_int(*v, "grid");
  c.var = flags.var;
  if (auto v = pick("var", "var")) c.var = json_to_text(*v);
  c.threads = flags.threads;
  if (auto v = pick("threads", "threads")) c.threads = as_int(*v, "threads");
  c.timings = flags.timings;
  if (auto v = pick("timings", "timings")) c.timings = v->is_boolean() && v->get<bool>();
  c.perturb_lambda = flags.perturb;
  return c;
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& msg) { throw InvalidArgument(msg); };
  if (c.command != "convergence" && c.degree < 2) {
    std::ostringstream msg;
    msg << "degree must be at least 2 (V_N needs 2 <= 2k+n <= N), got " << c.degree;
    fail(msg.str());
  }
  if (c.command == "convergence") {
    for (std::size_t i = 0; i < c.degrees.size(); ++i) {
      if (c.degrees[i] < 2) fail("every degree must be at least 2");
      if (i > 0 && c.degrees[i] <= c.degrees[i - 1]) fail("degrees must be strictly ascending");
    }
  }
  const bool any_grid = c.grid.radial != 0 || c.grid.theta != 0 || c.grid.phi != 0;
  if (any_grid && (c.grid.radial < 0 || c.grid.theta < 0 || c.grid.phi < 0)) {
    fail("quadrature node counts must be positive");
  }
  if (c.resolution < 2) fail("lattice resolution must be at least 2");
  if (c.var != "u" && c.var != "sigma") fail("--var must be u or sigma");
  if (c.threads < 0) fail("--threads must be nonnegative");
  const std::string& f = c.format;
  if (!f.empty() && f != "csv" && f != "json" && f != "md") {
    fail("format must be one of csv, json, md; got '" + f + "'");
  }
  if (c.command == "export-field" && f == "md") fail("export-field writes csv or json");
  if (std::abs(c.plane.value) > 1.0) fail("plane offset must lie in [-1, 1]");
}

std::filesystem::path resolve_output(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void write_artifact(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  const auto path = resolve_output(c.out);
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write output file '" + path.string() + "'");
  file << text;
  if (!file) throw UsageError("failed writing output file '" + path.string() + "'");
}

std::string render_report(const ErrorReport& report, const std::string& format) {
  if (format == "csv") return report.to_csv();
  if (format == "json") return report.to_json().dump(2) + "\n";
  return report.to_markdown();
}

nlohmann::json timings_json(const StageTimings& t) {
  return {{"analysis_seconds", t.analysis_seconds},
          {"algebra_seconds", t.algebra_seconds},
          {"error_seconds", t.error_seconds}};
}

int cmd_solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ManufacturedCase mcase = manufactured_case(c.case_id);
  const SolveResult result =
      solve_biharmonic(radial_field(mcase.f), c.degree, SolveOptions{c.grid, c.threads});
  StageTimings timings = result.timings;
  ErrorOptions eopts;
  eopts.threads = c.threads;
  ErrorReport report;
  report.case_name = case_name(c.case_id);
  report.rows.push_back(compute_errors(mcase, result, eopts, &timings));
  report.compute_rates();
  report.config = c.to_json();

  nlohmann::json doc = {{"config", c.to_json()},
                        {"case", case_name(c.case_id)},
                        {"degree", c.degree},
                        {"dimension", result.sigma_hat.size()},
                        {"grid", {{"radial", result.grid.radial},
                                  {"theta", result.grid.theta},
                                  {"phi", result.grid.phi}}},
                        {"sigma", to_json(result.sigma_hat)},
                        {"u", to_json(result.u_hat)},
                        {"report", report.to_json()}};
  if (c.timings) doc["timings"] = timings_json(timings);
  write_artifact(c, doc.dump(2) + "\n", out);
  if (!c.out.empty()) out << render_report(report, c.format.empty() ? "md" : c.format);
  if (c.timings) err << nlohmann::json{{"timings", timings_json(timings)}}.dump() << "\n";
  return kSuccess;
}

int cmd_convergence(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<StageTimings> timings;
  StudyOptions options{c.grid, c.threads, c.timings ? &timings : nullptr};
  ErrorReport report = run_convergence_study(c.case_id, c.degrees, options);
  report.config = c.to_json();
  write_artifact(c, render_report(report, c.format.empty() ? "md" : c.format), out);
  if (c.timings) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < timings.size(); ++i) {
      nlohmann::json row = timings_json(timings[i]);
      row["N"] = c.degrees[i];
      rows.push_back(row);
    }
    err << nlohmann::json{{"timings", rows}}.dump() << "\n";
  }
  return kSuccess;
}

int cmd_export_field(const RunConfig& c, std::ostream& out) {
  const ManufacturedCase mcase = manufactured_case(c.case_id);
  const SolveResult result =
      solve_biharmonic(radial_field(mcase.f), c.degree, SolveOptions{c.grid, c.threads});
  const bool is_u = c.var == "u";
  const CoefficientField& field = is_u ? result.u_hat : result.sigma_hat;
  const RadialFunction& exact = is_u ? mcase.u : mcase.sigma;

  const int g = c.resolution;
  const int fixed = static_cast<int>(c.plane.axis);
  const int ax = fixed == 0 ? 1 : 0;
  const int bx = fixed == 2 ? 1 : 2;
  auto coord = [g](int i) { return -1.0 + 2.0 * i / (g - 1); };

  std::vector<Point3> inside;
  std::vector<std::size_t> slot(static_cast<std::size_t>(g * g), SIZE_MAX);
  for (int j = 0; j < g; ++j) {
    for (int i = 0; i < g; ++i) {
      Point3 x{};
      x[fixed] = c.plane.value;
      x[ax] = coord(i);
      x[bx] = coord(j);
      if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= 1.0) {
        slot[static_cast<std::size_t>(j * g + i)] = inside.size();
        inside.push_back(x);
      }
    }
  }
  const std::vector<double> numeric = synthesize(field, inside);
  std::vector<double> exact_values(inside.size());
  double max_error = 0.0;
  for (std::size_t p = 0; p < inside.size(); ++p) {
    const Point3& x = inside[p];
    exact_values[p] = exact(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    max_error = std::max(max_error, std::abs(exact_values[p] - numeric[p]));
  }

  const std::string a_name = axis_name(static_cast<Axis>(ax));
  const std::string b_name = axis_name(static_cast<Axis>(bx));
  const std::string format = c.format.empty() ? "csv" : c.format;
  std::ostringstream text;
  if (format == "json") {
    nlohmann::json points = nlohmann::json::array();
    for (int j = 0; j < g; ++j) {
      for (int i = 0; i < g; ++i) {
        const std::size_t s = slot[static_cast<std::size_t>(j * g + i)];
        nlohmann::json pt = {{"i", i}, {"j", j}, {a_name, coord(i)}, {b_name, coord(j)}};
        if (s == SIZE_MAX) {
          pt["exact"] = nullptr;
          pt["numerical"] = nullptr;
          pt["abs_error"] = nullptr;
        } else {
          pt["exact"] = exact_values[s];
          pt["numerical"] = numeric[s];
          pt["abs_error"] = std::abs(exact_values[s] - numeric[s]);
        }
        points.push_back(std::move(pt));
      }
    }
    nlohmann::json doc = {{"config", c.to_json()},
                          {"var", c.var},
                          {"plane", {{"axis", axis_name(c.plane.axis)}, {"value", c.plane.value}}},
                          {"axes", {a_name, b_name}},
                          {"resolution", g},
                          {"inside_points", inside.size()},
                          {"max_abs_error", max_error},
                          {"missing", nullptr},
                          {"points", std::move(points)}};
    text << doc.dump(2) << "\n";
  } else {
    text << "# config: " << c.to_json().dump() << "\n";
    text << "# var: " << c.var << "; plane " << axis_name(c.plane.axis) << "="
         << full_precision(c.plane.value) << "; points outside the ball have empty value cells\n";
    text << "# max_abs_error: " << full_precision(max_error) << "\n";
    text << "i,j," << a_name << "," << b_name << ",exact,numerical,abs_error\n";
    for (int j = 0; j < g; ++j) {
      for (int i = 0; i < g; ++i) {
        const std::size_t s = slot[static_cast<std::size_t>(j * g + i)];
        text << i << "," << j << "," << full_precision(coord(i)) << "," << full_precision(coord(j));
        if (s == SIZE_MAX) {
          text << ",,,\n";
        } else {
          text << "," << full_precision(exact_values[s]) << "," << full_precision(numeric[s])
               << "," << full_precision(std::abs(exact_values[s] - numeric[s])) << "\n";
        }
      }
    }
  }
  write_artifact(c, text.str(), out);
  return kSuccess;
}

int cmd_basis_check(const RunConfig& c, std::ostream& out) {
  BasisCheckOptions options;
  options.lambda_perturbation = c.perturb_lambda;
  const BasisCheckReport report = run_basis_check(c.degree, options);
  std::string text;
  if (c.format == "json") {
    nlohmann::json doc = to_json(report);
    doc["config"] = c.to_json();
    text = doc.dump(2) + "\n";
  } else if (c.format == "csv") {
    std::ostringstream s;
    s << "# config: " << c.to_json().dump() << "\n";
    s << "check,value,tolerance,passed\n";
    for (const auto& chk : report.checks) {
      s << '"' << chk.name << "\"," << full_precision(chk.value) << ","
        << full_precision(chk.tolerance) << "," << (chk.passed() ? "true" : "false") << "\n";
    }
    text = s.str();
  } else {
    text = to_text(report);
  }
  write_artifact(c, text, out);
  if (!report.ok()) {
    const auto failures = report.failures();
    std::string msg;
    for (const auto& f : failures) msg += (msg.empty() ? "" : "; ") + f;
    throw InvariantFailure(msg, failures);
  }
  return kSuccess;
}

int report_error(std::ostream& err, int code, const std::string& kind, const std::string& message,
                 const std::string& command, const nlohmann::json& extra = {}) {
  nlohmann::json e = {{"code", code}, {"kind", kind}, {"message", message}};
  if (!command.empty()) e["command"] = command;
  if (extra.is_object()) {
    for (const auto& [k, v] : extra.items()) e[k] = v;
  }
  err << nlohmann::json{{"error", e}}.dump() << "\n";
  return code;
}

}  // namespace

PlaneSpec parse_plane(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw InvalidArgument("plane must look like z=0, got '" + text + "'");
  }
  const std::string axis = text.substr(0, eq);
  PlaneSpec p;
  if (axis == "x") p.axis = Axis::x;
  else if (axis == "y") p.axis = Axis::y;
  else if (axis == "z") p.axis = Axis::z;
  else throw InvalidArgument("plane axis must be x, y or z, got '" + axis + "'");
  const std::string value = text.substr(eq + 1);
  std::size_t used = 0;
  try {
    p.value = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !std::isfinite(p.value)) {
    throw InvalidArgument("plane offset '" + value + "' is not a number");
  }
  return p;
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InvalidArgument("empty entry in degree list '" + text + "'");
    item = item.substr(b, e - b + 1);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw InvalidArgument("degree '" + item + "' is not an integer");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("degree list is empty");
  return out;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = {{"command", command}};
  if (command != "basis-check") j["case"] = case_name(case_id);
  if (command == "convergence") j["degrees"] = degrees;
  else j["degree"] = degree;
  if (command != "basis-check") {
    j["quadrature"] = {{"radial_nodes", grid.radial}, {"theta_nodes", grid.theta},
                       {"phi_nodes", grid.phi}};
    j["threads"] = threads;
  }
  if (command == "export-field") {
    j["plane"] = {{"axis", axis_name(plane.axis)}, {"value", plane.value}};
    j["grid"] = resolution;
    j["var"] = var;
  }
  if (command == "basis-check" && perturb_lambda != 0.0) j["perturb_lambda"] = perturb_lambda;
  return j;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral-Galerkin solver for the simply supported biharmonic problem on the unit ball"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sgball 0.1.0");

  Flags flags;
  std::map<std::string, Command> commands;

  auto add_common = [&](Command& cmd, bool with_case) {
    CLI::App* a = cmd.app;
    cmd.options["config"] =
        a->add_option("--config", flags.config_path, "JSON file with default settings");
    cmd.options["out"] = a->add_option("--out", flags.out,
                                       "Output path (relative paths resolve under $SGBALL_OUTPUT_DIR)");
    cmd.options["format"] = a->add_option("--format", flags.format, "csv | json | md");
    if (with_case) {
      cmd.options["case"] = a->add_option("--case", flags.case_text, "Manufactured case: 1 or 2");
      cmd.options["threads"] =
          a->add_option("--threads", flags.threads, "Worker threads (0 = all cores)");
      cmd.options["radial"] =
          a->add_option("--radial-nodes", flags.radial, "Radial quadrature nodes M_r");
      cmd.options["theta"] =
          a->add_option("--theta-nodes", flags.theta, "Polar quadrature nodes L_theta");
      cmd.options["phi"] =
          a->add_option("--phi-nodes", flags.phi, "Azimuthal quadrature nodes L_phi");
    }
  };

  {
    Command& cmd = commands["solve"];
    cmd.app = app.add_subcommand("solve", "Solve one degree and write the coefficients");
    add_common(cmd, true);
    cmd.options["degree"] = cmd.app->add_option("--degree", flags.degree, "Degree N of V_N");
    cmd.options["timings"] = cmd.app->add_flag("--timings", flags.timings, "Report stage timings");
  }
  {
    Command& cmd = commands["convergence"];
    cmd.app = app.add_subcommand("convergence", "Error table over a list of degrees");
    add_common(cmd, true);
    cmd.options["degrees"] =
        cmd.app->add_option("--degrees", flags.degrees_text, "Ascending list, e.g. 4,8,12,16");
    cmd.options["timings"] = cmd.app->add_flag("--timings", flags.timings, "Report stage timings");
  }
  {
    Command& cmd = commands["export-field"];
    cmd.app = app.add_subcommand("export-field", "Exact and numerical values on a planar lattice");
    add_common(cmd, true);
    cmd.options["degree"] = cmd.app->add_option("--degree", flags.degree, "Degree N of V_N");
    cmd.options["plane"] = cmd.app->add_option("--plane", flags.plane, "Plane such as z=0");
    cmd.options["grid"] = cmd.app->add_option("--grid", flags.resolution, "Lattice resolution G");
    cmd.options["var"] = cmd.app->add_option("--var", flags.var, "u or sigma");
  }
  {
    Command& cmd = commands["basis-check"];
    cmd.app = app.add_subcommand("basis-check", "Check the basis invariants up to degree 12");
    add_common(cmd, false);
    cmd.options["degree"] = cmd.app->add_option("--degree", flags.degree, "Degree N of V_N");
    cmd.options["perturb"] =
        cmd.app->add_option("--perturb-lambda", flags.perturb)->group("");  // self-test fixture
  }

  std::string command;
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::ostringstream ignored;
    app.exit(e, ignored, ignored);
    return report_error(err, kUsageError, "usage", e.what(), command);
  }

  for (const auto& [name, cmd] : commands) {
    if (cmd.app->parsed()) command = name;
  }

  try {
    const RunConfig config = merge(command, commands.at(command), flags);
    validate(config);
    if (command == "solve") return cmd_solve(config, out, err);
    if (command == "convergence") return cmd_convergence(config, out, err);
    if (command == "export-field") return cmd_export_field(config, out);
    return cmd_basis_check(config, out);
  } catch (const InvariantFailure& e) {
    return report_error(err, kNumericalFailure, "invariant", e.what(), command,
                        {{"failures", e.failures()}});
  } catch (const UsageError& e) {
    return report_error(err, kUsageError, "usage", e.what(), command);
  } catch (const InvalidArgument& e) {
    return report_error(err, kUsageError, "invalid_argument", e.what(), command);
  } catch (const DomainError& e) {
    return report_error(err, kUsageError, "domain", e.what(), command);
  } catch (const GridTooCoarse& e) {
    return report_error(err, kUsageError, "grid_too_coarse", e.what(), command);
  } catch (const ConvergenceError& e) {
    return report_error(err, kNumericalFailure, "convergence", e.what(), command,
                        {{"index", e.index()}});
  } catch (const NonFiniteSample& e) {
    return report_error(err, kNumericalFailure, "non_finite_sample", e.what(), command);
  } catch (const NumericalError& e) {
    return report_error(err, kNumericalFailure, "numerical", e.what(), command);
  } catch (const std::exception& e) {
    return report_error(err, kNumericalFailure, "internal", e.what(), command);
  }
}

}  // namespace sgball::cli
