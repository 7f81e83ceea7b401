#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "sgball/errors.hpp"

using sgball::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sgball");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "sgball_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json error_object(const Outcome& o) {
  const auto j = nlohmann::json::parse(o.err);
  REQUIRE(j.contains("error"));
  return j["error"];
}

}  // namespace

TEST_CASE("solve writes 680 entries per field at N = 16") {
  const auto path = scratch("run.json");
  const auto o = invoke({"solve", "--case", "1", "--degree", "16", "--out", path.string()});
  REQUIRE(o.code == 0);
  const auto doc = nlohmann::json::parse(slurp(path));
  CHECK(doc["sigma"]["entries"].size() == 680);
  CHECK(doc["u"]["entries"].size() == 680);
  CHECK(doc["u"]["ordering"] == "n-major");
  CHECK(doc["config"]["degree"] == 16);
  CHECK(doc["report"]["rows"].size() == 1);
  CHECK_FALSE(doc.contains("timings"));
  CHECK(o.out.find("| 16 |") != std::string::npos);
}

TEST_CASE("solve validation exit codes") {
  auto o = invoke({"solve", "--case", "3", "--degree", "4"});
  CHECK(o.code == 2);
  CHECK(error_object(o)["message"].get<std::string>().find("unknown case") != std::string::npos);
  o = invoke({"solve", "--case", "1", "--degree", "1"});
  CHECK(o.code == 2);
  CHECK(error_object(o)["code"] == 2);
  o = invoke({"solve", "--case", "1", "--degree", "6", "--radial-nodes", "2", "--theta-nodes", "2", "--phi-nodes", "2"});
  CHECK(o.code == 2);
  CHECK(error_object(o)["kind"] == "grid_too_coarse");
  o = invoke({"solve", "--bogus"});
  CHECK(o.code == 2);
  CHECK(error_object(o)["kind"] == "usage");
  o = invoke({});
  CHECK(o.code == 2);
  o = invoke({"solve", "--degree", "four"});
  CHECK(o.code == 2);
  o = invoke({"solve", "--format", "xml", "--degree", "4"});
  CHECK(o.code == 2);
}

TEST_CASE("help exits 0") {
  const auto o = invoke({"--help"});
  CHECK(o.code == 0);
  CHECK(o.out.find("convergence") != std::string::npos);
}

TEST_CASE("convergence formats") {
  auto o = invoke({"convergence", "--case", "1", "--degrees", "4,8,12,16", "--format", "md"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("| 16 |") != std::string::npos);
  CHECK(o.out.find("| N | ‖σ − σ_N‖_H¹ | ‖u − u_N‖_H¹ | ‖σ − σ_N‖ | ‖u − u_N‖ | Rate_σ | Rate_u |") != std::string::npos);

  o = invoke({"convergence", "--case", "2", "--degrees", "4,8,12,16", "--format", "csv"});
  REQUIRE(o.code == 0);
  std::istringstream lines(o.out);
  std::string line;
  std::string last;
  while (std::getline(lines, line)) if (!line.empty() && line[0] != '#') last = line;
  CHECK(last.rfind("16,", 0) == 0);
  std::vector<std::string> cells;
  std::stringstream cs(last);
  for (std::string c; std::getline(cs, c, ',');) cells.push_back(c);
  REQUIRE(cells.size() == 7);
  const double l2u = std::stod(cells[4]);
  CHECK(l2u == doctest::Approx(5.63e-11).epsilon(0.01));

  o = invoke({"convergence", "--case", "1", "--degrees", "4,8", "--format", "json"});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["rows"].size() == 2);
  CHECK(j["config"]["degrees"] == nlohmann::json({4, 8}));
}

TEST_CASE("convergence degree validation") {
  CHECK(invoke({"convergence", "--degrees", ""}).code == 2);
  CHECK(invoke({"convergence", "--degrees", "8,4"}).code == 2);
  CHECK(invoke({"convergence", "--degrees", "4,,8"}).code == 2);
  CHECK(invoke({"convergence", "--degrees", "1,4"}).code == 2);
}

TEST_CASE("timings only on request") {
  const auto o = invoke({"convergence", "--degrees", "4,6", "--timings"});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.err);
  CHECK(j["timings"].size() == 2);
  CHECK(j["timings"][0].contains("algebra_seconds"));
  CHECK(invoke({"convergence", "--degrees", "4,6"}).err.empty());
}

TEST_CASE("reruns are byte identical") {
  const auto a = scratch("a.csv");
  const auto b = scratch("b.csv");
  REQUIRE(invoke({"convergence", "--case", "2", "--degrees", "4,8", "--format", "csv", "--out", a.string()}).code == 0);
  REQUIRE(invoke({"convergence", "--case", "2", "--degrees", "4,8", "--format", "csv", "--out", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto c = scratch("c.json");
  const auto d = scratch("d.json");
  REQUIRE(invoke({"solve", "--degree", "8", "--out", c.string()}).code == 0);
  REQUIRE(invoke({"solve", "--degree", "8", "--out", d.string()}).code == 0);
  CHECK(slurp(c) == slurp(d));
}

TEST_CASE("export-field lattice") {
  auto o = invoke({"export-field", "--case", "1", "--degree", "16", "--plane", "z=0", "--grid", "64", "--var", "u"});
  REQUIRE(o.code == 0);
  std::istringstream lines(o.out);
  std::string line;
  int rows = 0;
  int missing = 0;
  double worst = 0.0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("i,", 0) == 0) continue;
    ++rows;
    std::vector<std::string> cells;
    std::stringstream cs(line);
    for (std::string c; std::getline(cs, c, ',');) cells.push_back(c);
    const double x = std::stod(cells[2]);
    const double y = std::stod(cells[3]);
    if (cells.size() < 7 || cells[6].empty()) {
      CHECK(x * x + y * y > 1.0);
      ++missing;
    } else {
      CHECK(x * x + y * y <= 1.0);
      worst = std::max(worst, std::stod(cells[6]));
    }
  }
  CHECK(rows == 64 * 64);
  CHECK(missing > 0);
  CHECK(worst <= 5e-12);

  o = invoke({"export-field", "--degree", "8", "--grid", "9", "--var", "sigma", "--format", "json", "--plane", "x=0.5"});
  REQUIRE(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["var"] == "sigma");
  CHECK(j["points"].size() == 81);
  CHECK(j["axes"] == nlohmann::json({"y", "z"}));
  CHECK(j["points"][0]["exact"].is_null());
  CHECK(j["points"][40]["numerical"].is_number());

  CHECK(invoke({"export-field", "--grid", "1"}).code == 2);
  CHECK(invoke({"export-field", "--plane", "w=0"}).code == 2);
  CHECK(invoke({"export-field", "--plane", "z=2"}).code == 2);
  CHECK(invoke({"export-field", "--var", "phi"}).code == 2);
  CHECK(invoke({"export-field", "--format", "md"}).code == 2);
}

TEST_CASE("basis-check exit codes") {
  auto o = invoke({"basis-check", "--degree", "6"});
  CHECK(o.code == 0);
  CHECK(o.out.find("stiffness off-diagonal") != std::string::npos);
  o = invoke({"basis-check", "--degree", "2", "--format", "json"});
  CHECK(o.code == 0);
  CHECK(nlohmann::json::parse(o.out)["dimension"] == 1);
  o = invoke({"basis-check", "--degree", "6", "--perturb-lambda", "1e-6"});
  CHECK(o.code == 1);
  const auto e = error_object(o);
  CHECK(e["message"].get<std::string>().find("stiffness diagonal mismatch") != std::string::npos);
  CHECK(e["failures"] == nlohmann::json({"stiffness diagonal mismatch"}));
  CHECK(invoke({"basis-check", "--degree", "13"}).code == 2);
}

TEST_CASE("config file precedence and output directory") {
  const auto cfg = scratch("config.json");
  {
    std::ofstream f(cfg);
    f << R"({"case": "2", "degrees": [4, 6], "format": "json"})";
  }
  auto o = invoke({"convergence", "--config", cfg.string()});
  REQUIRE(o.code == 0);
  auto j = nlohmann::json::parse(o.out);
  CHECK(j["case"] == "case2");
  CHECK(j["rows"].size() == 2);
  o = invoke({"convergence", "--config", cfg.string(), "--case", "1", "--format", "csv"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("# case: case1") != std::string::npos);

  const auto bad = scratch("bad.json");
  {
    std::ofstream f(bad);
    f << R"({"colour": "red"})";
  }
  CHECK(invoke({"convergence", "--config", bad.string()}).code == 2);
  CHECK(invoke({"convergence", "--config", scratch("missing.json").string()}).code == 2);

  const auto dir = scratch("outdir");
  std::filesystem::remove_all(dir);
  setenv("SGBALL_OUTPUT_DIR", dir.string().c_str(), 1);
  o = invoke({"convergence", "--degrees", "4", "--out", "table.md"});
  unsetenv("SGBALL_OUTPUT_DIR");
  REQUIRE(o.code == 0);
  CHECK(std::filesystem::exists(dir / "table.md"));
  CHECK(slurp(dir / "table.md").find("\"degrees\":[4]") != std::string::npos);
}

TEST_CASE("parse helpers") {
  using namespace sgball::cli;
  CHECK(parse_degrees("4, 8,12") == std::vector<int>{4, 8, 12});
  CHECK_THROWS_AS(parse_degrees(""), sgball::InvalidArgument);
  CHECK_THROWS_AS(parse_degrees("4;8"), sgball::InvalidArgument);
  const auto p = parse_plane("y=-0.25");
  CHECK(p.axis == Axis::y);
  CHECK(p.value == -0.25);
  CHECK_THROWS_AS(parse_plane("z"), sgball::InvalidArgument);
  CHECK_THROWS_AS(parse_plane("z=abc"), sgball::InvalidArgument);
}
