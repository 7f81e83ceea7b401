#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace sgball {

struct DegreeError {
  int degree = 0;
  double error = 0.0;
};

/// ln(E_{i-1} / E_i) / (N_i - N_{i-1}) for each consecutive pair; entry i-1
/// belongs to degree N_i. Errors must be positive and degrees increasing.
std::vector<double> convergence_rates(std::span<const DegreeError> errors);

/// One line of a convergence table.
struct ErrorRow {
  int degree = 0;
  double h1_sigma = 0.0;
  double h1_u = 0.0;
  double l2_sigma = 0.0;
  double l2_u = 0.0;
  std::optional<double> rate_sigma;
  std::optional<double> rate_u;
};

/// Convergence table. Rates are computed from the L2 columns
/// (rate_source = "L2").
struct ErrorReport {
  std::string case_name;
  std::string rate_source = "L2";
  std::vector<ErrorRow> rows;
  nlohmann::json config = nlohmann::json::object();

  /// Fills rate_sigma / rate_u from the L2 columns.
  void compute_rates();

  /// Header row plus one line per degree; "# " lines carry the config.
  std::string to_csv() const;
  nlohmann::json to_json() const;
  /// Seven-column markdown table with "--" in empty rate cells.
  std::string to_markdown() const;
};

/// %.6e, the format used in the tables.
std::string format_error(double value);
/// %.4f
std::string format_rate(double value);

}  // namespace sgball
