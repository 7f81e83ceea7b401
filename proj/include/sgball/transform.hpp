#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "sgball/ball_basis.hpp"
#include "sgball/coefficient_field.hpp"
#include "sgball/harmonics.hpp"

namespace sgball {

using ScalarField = std::function<double(const Point3&)>;

/// Node counts of a ball grid: radial Gauss-Jacobi nodes and the angular
/// Gauss-Legendre x uniform-azimuth grid.
struct GridConfig {
  int radial = 0;
  int theta = 0;
  int phi = 0;

  /// Solve grid for degree N: (N + 8, N + 8, 2N + 16).
  static GridConfig for_degree(int degree);
  /// Error-evaluation grid: every count doubled.
  GridConfig refined() const { return {2 * radial, 2 * theta, 2 * phi}; }

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

/// Tensor quadrature grid on the unit ball. Radial nodes are the (0, 1/2)
/// Gauss-Jacobi nodes t_q with r_q = sqrt((1 + t_q) / 2); since
/// int_0^1 F(r) r^2 dr = 1/(4 sqrt 2) int F (1 + t)^{1/2} dt the radial
/// weights already include r^2 dr. Sample arrays are laid out
/// [radial q][theta i][phi m].
class BallGrid {
 public:
  BallGrid(int radial, int theta, int phi);
  explicit BallGrid(const GridConfig& config) : BallGrid(config.radial, config.theta, config.phi) {}

  GridConfig config() const noexcept;
  int radial_count() const noexcept { return static_cast<int>(t_.size()); }
  std::span<const double> radial_t() const noexcept { return t_; }
  std::span<const double> radial_r() const noexcept { return r_; }
  std::span<const double> radial_weights() const noexcept { return w_; }
  const AngularGrid& angular() const noexcept { return angular_; }

  std::size_t size() const noexcept { return t_.size() * angular_.size(); }
  std::size_t shell_size() const noexcept { return angular_.size(); }

  Point3 point(int q, int i, int m) const noexcept;
  double weight(int q, int i, int m) const noexcept;

  /// Largest total degree of polynomials on the ball integrated exactly.
  int exact_degree() const noexcept;

 private:
  std::vector<double> t_;
  std::vector<double> r_;
  std::vector<double> w_;
  AngularGrid angular_;
};

BallGrid build_ball_grid(int radial, int theta, int phi);

/// f at every grid point; throws NonFiniteSample naming the first bad point.
std::vector<double> sample_on_grid(const ScalarField& f, const BallGrid& grid, int threads = 0);

/// Quadrature sum of grid samples.
double integrate(const BallGrid& grid, std::span<const double> samples);

/// Analysis and synthesis tables for one grid and degree.
///
/// Analysis runs in two stages: harmonic analysis on every radial shell,
/// then one radial quadrature per (n, l) block. Shells and harmonic degrees
/// are independent work items summed in a fixed order, so results do not
/// depend on the thread count.
class BallTransform {
 public:
  /// Throws GridTooCoarse unless the grid integrates degree 2N exactly.
  BallTransform(const BallGrid& grid, int degree, int threads = 0);

  int degree() const noexcept { return degree_; }
  const BallGrid& grid() const noexcept { return grid_; }

  /// (f, B^{-1,n}_{k,l}) for every index of V_N from grid samples of f.
  CoefficientField analyze(std::span<const double> samples) const;
  /// sum_j c_j B_j at every grid point.
  std::vector<double> synthesize(const CoefficientField& field) const;

 private:
  double radial_value(int q, int n, int k) const noexcept {
    return radial_[static_cast<std::size_t>(q) * radial_stride_ + radial_offset_[n] + (k - 1)];
  }

  BallGrid grid_;
  int degree_;
  int threads_;
  AngularTransform angular_;
  std::vector<std::size_t> radial_offset_;  // start of degree n within one node's row
  std::size_t radial_stride_;
  std::vector<double> radial_;  // [q][n][k] generalized radial profile at r_q
};

/// Values of every basis function of V_N at one point, in layout order.
class BasisEvaluator {
 public:
  explicit BasisEvaluator(int degree);

  std::size_t size() const noexcept { return layout_->size(); }
  const BasisLayout& layout() const noexcept { return *layout_; }
  void evaluate(const Point3& x, std::span<double> out) const;

 private:
  static std::size_t key(int n, int j) { return static_cast<std::size_t>(n * (n + 1) / 2 + j); }

  std::shared_ptr<const BasisLayout> layout_;
  int n_max_;
  std::vector<double> constants_;  // C_{n,j}, packed n(n+1)/2 + j
};

/// f_hat_{k,n,l} = (f, B^{-1,n}_{k,l}) by quadrature on the grid.
CoefficientField analyze(const ScalarField& f, int degree, const BallGrid& grid, int threads = 0);

/// Same inner products by direct summation of f * eval_generalized over every
/// grid point. O(points * dim V_N); a cross-check for the separable path.
CoefficientField analyze_direct(const ScalarField& f, int degree, const BallGrid& grid);

/// Point values of sum_j c_j B_j, summed in index_set order.
std::vector<double> synthesize(const CoefficientField& field, std::span<const Point3> points);

/// Grid values of sum_j c_j B_j via the separable transform.
std::vector<double> synthesize_on_grid(const CoefficientField& field, const BallGrid& grid,
                                       int threads = 0);

}  // namespace sgball
