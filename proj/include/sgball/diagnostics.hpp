#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace sgball {

struct BasisCheckOptions {
  /// Relative perturbation applied to the expected stiffness diagonal. Only
  /// used to exercise the failure path.
  double lambda_perturbation = 0.0;
  int boundary_points = 50;
  unsigned long long seed = 20240607ULL;
};

struct InvariantCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed() const noexcept { return value <= tolerance; }
};

struct BasisCheckReport {
  int degree = 0;
  std::size_t dimension = 0;
  double max_stiffness_diagonal = 0.0;
  double max_stiffness_off_diagonal = 0.0;
  double max_stiffness_diagonal_error = 0.0;  ///< relative to 2n + 4k + 1
  double max_mass_deviation = 0.0;
  double max_boundary_value = 0.0;
  std::vector<InvariantCheck> checks;

  bool ok() const noexcept;
  /// Names of the failing invariants, in check order.
  std::vector<std::string> failures() const;
};

/// Stiffness Gram from radial gradient quadrature, full-grid mass Gram against
/// the closed-form tridiagonal blocks, and basis values on the unit sphere.
/// Degree must lie in [2, 12].
BasisCheckReport run_basis_check(int degree, const BasisCheckOptions& options = {});

nlohmann::json to_json(const BasisCheckReport& report);
std::string to_text(const BasisCheckReport& report);

}  // namespace sgball
