#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sgball/harmonics.hpp"

namespace sgball {

using Point3 = std::array<double, 3>;

/// Points with norm up to 1 + kBallTolerance count as inside the closed ball.
inline constexpr double kBallTolerance = 1e-14;

/// Radius and direction of a point; the origin maps to theta = phi = 0.
struct PolarPoint {
  double r = 0.0;
  double cos_theta = 1.0;
  double sin_theta = 0.0;
  double phi = 0.0;
};

/// Throws DomainError for points outside the closed unit ball.
PolarPoint to_polar(const Point3& x);

/// (k, n, l) addressing one generalized basis function. k >= 1, n >= 0,
/// 1 <= l <= 2n + 1; the total degree 2k + n is therefore at least 2.
class BasisIndex {
 public:
  BasisIndex(int k, int n, int l);

  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  int total_degree() const noexcept { return 2 * k_ + n_; }
  HarmonicIndex harmonic() const { return HarmonicIndex(n_, l_); }

  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;

 private:
  int k_;
  int n_;
  int l_;
};

/// One ball polynomial B^{alpha,n}_{k,l}. alpha must be -1, 0 or 1; for
/// alpha = -1 and k = 0 the function is B^{0,n}_{0,l}.
struct BallPolySpec {
  double alpha = 0.0;
  int k = 0;
  int n = 0;
  int l = 1;
};

/// h_k^{alpha,n}, the squared norm of B^{alpha,n}_{k,l} under (1 - |x|^2)^alpha.
double ball_norm(double alpha, int k, int n);

/// Normalising prefactor (n+k+3/2)_k / (n+k+3/2+alpha)_k of B^{alpha,n}_{k,l}.
double ball_prefactor(double alpha, int k, int n);

double eval_ball(const BallPolySpec& spec, const Point3& x);

/// B^{-1,n}_{k,l} = B^{0,n}_{k,l} - B^{0,n}_{k-1,l}; vanishes on the sphere.
double eval_generalized(const BasisIndex& idx, const Point3& x);

/// Radial profiles r^n (P_k - P_{k-1})^{0,n+1/2}(2r^2 - 1) for k = 1..out.size().
void generalized_radial(int n, double r, std::span<double> out);

/// Diagonal of the stiffness (gradient Gram) matrix: 2n + 4k + 1.
double stiffness_lambda(int k, int n);

/// Radial L2 Gram block of the generalized basis for one (n, l):
/// diag[k-1] = h_k + h_{k-1}, off[k-1] = M_{k,k+1} = -h_k with h = h^{0,n}.
struct RadialMass {
  int n = 0;
  std::vector<double> diag;
  std::vector<double> off;

  int size() const noexcept { return static_cast<int>(diag.size()); }
  /// Entry M_{k,k'} for 1-based k, k'.
  double operator()(int k, int kp) const;
};

RadialMass mass_tridiagonal(int n, int k_max);

/// Coefficient-space operators of one harmonic degree n: the stiffness
/// diagonal lambda_{k,n} and the radial mass block, for k = 1 .. k_max.
struct ModeOperator {
  int n = 0;
  std::vector<double> stiffness;
  RadialMass mass;
};

ModeOperator mode_operator(int n, int k_max);

/// Every (k, n, l) with k >= 1, 2k + n <= N, ordered by n, then l, then k.
std::vector<BasisIndex> index_set(int degree);

/// Number of basis functions in V_N.
std::size_t space_dimension(int degree);

/// The index set of V_N with O(1) position lookup. Each (n, l) owns a
/// contiguous block of radial degrees k = 1 .. radial_count(n).
class BasisLayout {
 public:
  explicit BasisLayout(int degree);

  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::span<const BasisIndex> indices() const noexcept { return indices_; }

  /// Largest harmonic degree present (N - 2).
  int max_harmonic_degree() const noexcept { return degree_ - 2; }
  /// Number of radial functions for harmonic degree n (0 if n > N - 2).
  int radial_count(int n) const noexcept;
  /// Offset of the (n, l) block.
  std::size_t block_offset(int n, int l) const;
  bool contains(int k, int n, int l) const noexcept;
  /// Position of (k, n, l); throws InvalidArgument if not in V_N.
  std::size_t position(int k, int n, int l) const;
  std::size_t position(const BasisIndex& idx) const { return position(idx.k(), idx.n(), idx.l()); }

 private:
  int degree_;
  std::vector<BasisIndex> indices_;
  std::vector<std::size_t> degree_offsets_;  // first position of each n
};

}  // namespace sgball
