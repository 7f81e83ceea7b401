#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgball/manufactured.hpp"
#include "sgball/transform.hpp"

namespace sgball::cli {

enum ExitCode { kSuccess = 0, kNumericalFailure = 1, kUsageError = 2 };

enum class Axis { x, y, z };

struct PlaneSpec {
  Axis axis = Axis::z;
  double value = 0.0;
};

/// "z=0", "x=-0.25". Throws InvalidArgument.
PlaneSpec parse_plane(const std::string& text);
/// "4,8,12,16". Throws InvalidArgument on empty or malformed lists.
std::vector<int> parse_degrees(const std::string& text);

struct RunConfig {
  std::string command;
  CaseId case_id = CaseId::case1;
  int degree = 16;
  std::vector<int> degrees{4, 8, 12, 16};
  GridConfig grid{};  ///< zero counts select the per-degree default
  std::string out;    ///< empty writes to stdout
  std::string format; ///< empty selects the command default
  PlaneSpec plane{};
  int resolution = 64;
  std::string var = "u";
  int threads = 0;
  bool timings = false;
  double perturb_lambda = 0.0;

  /// Echoed into every output artifact.
  nlohmann::json to_json() const;
};

/// Runs the command line; returns the process exit code. Errors are written to
/// `err` as {"error": {...}}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sgball::cli
