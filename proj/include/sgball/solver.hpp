#pragma once

#include <memory>
#include <span>
#include <vector>

#include "sgball/ball_basis.hpp"
#include "sgball/coefficient_field.hpp"
#include "sgball/error_report.hpp"
#include "sgball/manufactured.hpp"
#include "sgball/transform.hpp"

namespace sgball {

struct StageTimings {
  double analysis_seconds = 0.0;
  double algebra_seconds = 0.0;
  double error_seconds = 0.0;
};

/// Coefficient-space algebra of the mixed scheme on V_N. The stiffness is
/// diagonal and the mass is tridiagonal within each (n, l) block, so both
/// stages are explicit O(dim V_N) sweeps:
///   sigma = load / lambda,   u = (M sigma) / lambda.
class MixedAlgebra {
 public:
  explicit MixedAlgebra(int degree);

  int degree() const noexcept { return layout_->degree(); }
  std::size_t size() const noexcept { return layout_->size(); }

  void solve_sigma(std::span<const double> load, std::span<double> sigma) const;
  void solve_u(std::span<const double> sigma, std::span<double> u) const;

 private:
  std::shared_ptr<const BasisLayout> layout_;
  std::vector<ModeOperator> modes_;
};

struct SolveOptions {
  /// Quadrature for the load; zero counts select GridConfig::for_degree(N).
  GridConfig grid{};
  int threads = 0;
};

struct SolveResult {
  CoefficientField sigma_hat;
  CoefficientField u_hat;
  CoefficientField load;  ///< (f, B_j) for every basis function
  int degree = 0;
  GridConfig grid{};
  StageTimings timings{};
};

GridConfig resolve_grid(const GridConfig& requested, int degree);

/// Mixed spectral-Galerkin solve of laplacian^2 u = f, u = laplacian u = 0
/// on the sphere: a(sigma_N, v) = (f, v), a(u_N, tau) = (sigma_N, tau).
SolveResult solve_biharmonic(const ScalarField& f, int degree, const SolveOptions& options = {});

/// The algebra alone, from a precomputed load vector.
SolveResult solve_from_load(const CoefficientField& load);

/// Ritz projection of v from its negative Laplacian: (-lap v, B_j) / lambda_j.
CoefficientField ritz_project(const ScalarField& neg_laplacian, int degree, const BallGrid& grid,
                              int threads = 0);

struct ErrorOptions {
  /// Error quadrature; zero counts select the solve grid refined().
  GridConfig fine{};
  /// Degree up to which the H1 seminorm tail is summed; 0 selects N + 16.
  int tail_degree = 0;
  int threads = 0;
};

/// L2 errors by quadrature of the squared pointwise error on the fine grid.
/// H1 seminorms from coefficient space: with p_j = (sigma, B_j) / lambda_j the
/// Ritz coefficients of u (a(u, w) = (sigma, w) for w vanishing on the sphere),
/// |u - u_N|_1^2 = sum_j lambda_j (p_j - u_j)^2 over V_{tail}, and the same for
/// sigma with f in place of sigma. H1 norm = sqrt(L2^2 + seminorm^2).
ErrorRow compute_errors(const ManufacturedCase& mcase, const SolveResult& result,
                        const ErrorOptions& options = {}, StageTimings* timings = nullptr);

struct StudyOptions {
  GridConfig grid{};  ///< zero counts select the per-degree default
  int threads = 0;
  std::vector<StageTimings>* timings = nullptr;  ///< one entry per degree when set
};

/// Solves at every degree and tabulates the four error columns and rates.
ErrorReport run_convergence_study(CaseId id, std::span<const int> degrees,
                                  const StudyOptions& options = {});

}  // namespace sgball
