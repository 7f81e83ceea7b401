#pragma once

#include <span>
#include <vector>

namespace sgball {

/// Polar angle theta in [0, pi] measured from +z, azimuth phi (any finite
/// value; harmonics are 2*pi periodic in phi).
struct SphericalPoint {
  double theta = 0.0;
  double phi = 0.0;
};

/// Which trigonometric factor a harmonic order carries.
enum class HarmonicKind { zonal, cosine, sine };

/// (n, l) with 1 <= l <= 2n + 1. l = 1 is zonal, l = 2j carries cos(j phi),
/// l = 2j + 1 (j >= 1) carries sin(j phi).
class HarmonicIndex {
 public:
  HarmonicIndex(int n, int l);

  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  int order() const noexcept { return l_ / 2; }
  HarmonicKind kind() const noexcept;
  /// Position in the degree-major packing n*n + (l - 1).
  int flat() const noexcept { return n_ * n_ + l_ - 1; }

  friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;

 private:
  int n_;
  int l_;
};

/// Harmonic order l for (order j, kind).
int harmonic_order(int j, HarmonicKind kind);

/// Normalisation C_{n,j} of the non-zonal harmonics, 1 <= j <= n.
double harmonic_constant(int n, int j);

/// The theta-dependent factor of Y: sqrt((2n+1)/(4 pi)) P_n(cos theta) for
/// j = 0 and C_{n,j} sin^j(theta) P_{n-j}^{j,j}(cos theta) for j >= 1.
double harmonic_polar_factor(int n, int j, double cos_theta, double sin_theta);

/// Real orthonormal spherical harmonic Y_l^n at p.
double eval_harmonic(const HarmonicIndex& idx, const SphericalPoint& p);

/// Tensor grid on the sphere: Gauss-Legendre in cos(theta), uniform in phi.
/// Sample arrays on the grid are laid out theta-major: s[i * phi_count + m].
class AngularGrid {
 public:
  AngularGrid(int l_theta, int l_phi);

  int theta_count() const noexcept { return static_cast<int>(cos_theta_.size()); }
  int phi_count() const noexcept { return phi_count_; }
  std::size_t size() const noexcept {
    return cos_theta_.size() * static_cast<std::size_t>(phi_count_);
  }

  std::span<const double> cos_theta() const noexcept { return cos_theta_; }
  std::span<const double> sin_theta() const noexcept { return sin_theta_; }
  std::span<const double> theta_weights() const noexcept { return theta_weights_; }
  double phi(int m) const noexcept;
  double phi_weight() const noexcept;
  double weight(int i, int /*m*/) const noexcept { return theta_weights_[i] * phi_weight(); }

  /// Largest total degree of spherical polynomials integrated exactly.
  int exact_degree() const noexcept;

 private:
  std::vector<double> cos_theta_;
  std::vector<double> sin_theta_;
  std::vector<double> theta_weights_;
  int phi_count_;
};

AngularGrid build_angular_grid(int l_theta, int l_phi);

/// Coefficients c_{n,l} for 0 <= n <= n_max, packed as HarmonicIndex::flat().
class HarmonicCoefficients {
 public:
  explicit HarmonicCoefficients(int n_max);

  int n_max() const noexcept { return n_max_; }
  double operator[](const HarmonicIndex& idx) const { return values_.at(idx.flat()); }
  double& operator[](const HarmonicIndex& idx) { return values_.at(idx.flat()); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

 private:
  int n_max_;
  std::vector<double> values_;
};

/// Cached analysis/synthesis tables for one angular grid and degree bound.
/// Analysis and synthesis factor into an azimuthal sum per theta ring followed
/// by a polar sum per (n, j), always in ascending index order.
class AngularTransform {
 public:
  AngularTransform(const AngularGrid& grid, int n_max);

  int n_max() const noexcept { return n_max_; }
  const AngularGrid& grid() const noexcept { return grid_; }

  /// coeffs[flat(n, l)] = quadrature of samples * Y_l^n. Throws
  /// GridTooCoarse unless the grid resolves degree 2 * n_max.
  void analyze(std::span<const double> samples, std::span<double> coeffs) const;

  /// samples = sum over (n, l) of coeffs[flat(n, l)] * Y_l^n on the grid.
  void synthesize(std::span<const double> coeffs, std::span<double> samples) const;

  /// Throws GridTooCoarse unless products of two degree-n_max harmonics
  /// integrate exactly on the grid.
  void require_exact() const;

  double polar(int i, int n, int j) const noexcept {
    return polar_[static_cast<std::size_t>(i) * stride_ + n * (n + 1) / 2 + j];
  }

 private:
  AngularGrid grid_;
  int n_max_;
  std::size_t stride_;
  std::vector<double> polar_;  // [theta node][n(n+1)/2 + j]
  std::vector<double> cos_;    // [j][m] cos(j phi_m)
  std::vector<double> sin_;    // [j][m] sin(j phi_m)
};

/// Quadrature coefficients of a sampled function against every Y_l^n with
/// n <= n_max. Throws GridTooCoarse if the grid does not resolve 2 * n_max.
HarmonicCoefficients angular_analyze(const AngularGrid& grid,
                                     std::span<const double> samples, int n_max);

}  // namespace sgball
