#include "sgball/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sgball/errors.hpp"
#include "sgball/jacobi.hpp"

namespace sgball {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double zonal_constant(int n) { return std::sqrt((2.0 * n + 1.0) / (4.0 * std::numbers::pi)); }

std::size_t packed_count(int n_max) {
  return static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_max + 2) / 2;
}

}  // namespace

HarmonicIndex::HarmonicIndex(int n, int l) : n_(n), l_(l) {
  if (n < 0 || l < 1 || l > 2 * n + 1) {
    std::ostringstream msg;
    msg << "harmonic index (n = " << n << ", l = " << l << ") outside 1 <= l <= 2n+1";
    throw InvalidArgument(msg.str());
  }
}

HarmonicKind HarmonicIndex::kind() const noexcept {
  if (l_ == 1) return HarmonicKind::zonal;
  return (l_ % 2 == 0) ? HarmonicKind::cosine : HarmonicKind::sine;
}

int harmonic_order(int j, HarmonicKind kind) {
  switch (kind) {
    case HarmonicKind::zonal:
      return 1;
    case HarmonicKind::cosine:
      return 2 * j;
    case HarmonicKind::sine:
      return 2 * j + 1;
  }
  return 1;
}

double harmonic_constant(int n, int j) {
  if (j < 1 || j > n) throw InvalidArgument("harmonic_constant needs 1 <= j <= n");
  const double log_c = 0.5 * (std::log(2.0 * n + 1.0) + std::lgamma(n - j + 1.0) +
                              std::lgamma(n + j + 1.0) - std::log(kTwoPi) -
                              2.0 * std::lgamma(n + 1.0)) -
                       j * std::numbers::ln2;
  return std::exp(log_c);
}

double harmonic_polar_factor(int n, int j, double cos_theta, double sin_theta) {
  if (j == 0) {
    return zonal_constant(n) *
           eval_jacobi(n, JacobiParams(0.0, 0.0), cos_theta, DomainPolicy::clamp);
  }
  const double jd = static_cast<double>(j);
  return harmonic_constant(n, j) * std::pow(sin_theta, j) *
         eval_jacobi(n - j, JacobiParams(jd, jd), cos_theta, DomainPolicy::clamp);
}

double eval_harmonic(const HarmonicIndex& idx, const SphericalPoint& p) {
  if (!(p.theta >= 0.0 && p.theta <= std::numbers::pi) || !std::isfinite(p.phi)) {
    throw DomainError("spherical point outside theta in [0, pi] or with non-finite phi");
  }
  const int j = idx.order();
  const double polar = harmonic_polar_factor(idx.n(), j, std::cos(p.theta), std::sin(p.theta));
  switch (idx.kind()) {
    case HarmonicKind::zonal:
      return polar;
    case HarmonicKind::cosine:
      return polar * std::cos(j * p.phi);
    case HarmonicKind::sine:
      return polar * std::sin(j * p.phi);
  }
  return 0.0;
}

AngularGrid::AngularGrid(int l_theta, int l_phi) : phi_count_(l_phi) {
  if (l_theta < 1 || l_phi < 1) throw InvalidArgument("angular grid sizes must be positive");
  QuadratureRule1D rule = gauss_jacobi_rule(l_theta, JacobiParams(0.0, 0.0));
  cos_theta_ = std::move(rule.nodes);
  theta_weights_ = std::move(rule.weights);
  sin_theta_.resize(cos_theta_.size());
  for (std::size_t i = 0; i < cos_theta_.size(); ++i) {
    const double c = cos_theta_[i];
    sin_theta_[i] = std::sqrt((1.0 - c) * (1.0 + c));
  }
}

double AngularGrid::phi(int m) const noexcept { return kTwoPi * m / phi_count_; }

double AngularGrid::phi_weight() const noexcept { return kTwoPi / phi_count_; }

int AngularGrid::exact_degree() const noexcept {
  return std::min(2 * theta_count() - 1, phi_count_ - 1);
}

AngularGrid build_angular_grid(int l_theta, int l_phi) { return AngularGrid(l_theta, l_phi); }

HarmonicCoefficients::HarmonicCoefficients(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw InvalidArgument("n_max must be nonnegative");
  values_.assign(static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_max + 1), 0.0);
}

AngularTransform::AngularTransform(const AngularGrid& grid, int n_max)
    : grid_(grid), n_max_(n_max), stride_(packed_count(n_max)) {
  if (n_max < 0) throw InvalidArgument("n_max must be nonnegative");
  const int n_theta = grid_.theta_count();
  const int n_phi = grid_.phi_count();

  // C_{n,j} once per (n, j).
  std::vector<double> constants(stride_);
  for (int n = 0; n <= n_max; ++n) {
    constants[n * (n + 1) / 2] = zonal_constant(n);
    for (int j = 1; j <= n; ++j) constants[n * (n + 1) / 2 + j] = harmonic_constant(n, j);
  }

  polar_.assign(static_cast<std::size_t>(n_theta) * stride_, 0.0);
  std::vector<double> p(static_cast<std::size_t>(n_max + 1));
  for (int i = 0; i < n_theta; ++i) {
    const double c = grid_.cos_theta()[i];
    const double s = grid_.sin_theta()[i];
    double s_pow = 1.0;
    for (int j = 0; j <= n_max; ++j) {
      const double jd = static_cast<double>(j);
      std::span<double> seq(p.data(), static_cast<std::size_t>(n_max - j + 1));
      eval_jacobi_all(JacobiParams(jd, jd), c, seq);
      for (int n = j; n <= n_max; ++n) {
        const std::size_t key = static_cast<std::size_t>(n * (n + 1) / 2 + j);
        polar_[static_cast<std::size_t>(i) * stride_ + key] = constants[key] * s_pow * seq[n - j];
      }
      s_pow *= s;
    }
  }

  cos_.resize(static_cast<std::size_t>(n_max + 1) * n_phi);
  sin_.resize(cos_.size());
  for (int j = 0; j <= n_max; ++j) {
    for (int m = 0; m < n_phi; ++m) {
      const double angle = j * grid_.phi(m);
      cos_[static_cast<std::size_t>(j) * n_phi + m] = std::cos(angle);
      sin_[static_cast<std::size_t>(j) * n_phi + m] = std::sin(angle);
    }
  }
}

void AngularTransform::require_exact() const {
  if (2 * n_max_ > grid_.exact_degree()) {
    std::ostringstream msg;
    msg << "angular grid (" << grid_.theta_count() << " x " << grid_.phi_count()
        << ") integrates degree " << grid_.exact_degree()
        << " exactly; analysis up to n = " << n_max_ << " needs degree " << 2 * n_max_;
    throw GridTooCoarse(msg.str());
  }
}

void AngularTransform::analyze(std::span<const double> samples, std::span<double> coeffs) const {
  require_exact();
  const int n_theta = grid_.theta_count();
  const int n_phi = grid_.phi_count();
  if (samples.size() != grid_.size()) throw InvalidArgument("sample count does not match grid");
  if (coeffs.size() != static_cast<std::size_t>((n_max_ + 1) * (n_max_ + 1))) {
    throw InvalidArgument("coefficient buffer has the wrong size");
  }
  std::fill(coeffs.begin(), coeffs.end(), 0.0);

  const double w_phi = grid_.phi_weight();
  std::vector<double> ring_cos(static_cast<std::size_t>(n_max_ + 1));
  std::vector<double> ring_sin(static_cast<std::size_t>(n_max_ + 1));
  for (int i = 0; i < n_theta; ++i) {
    const double* ring = samples.data() + static_cast<std::size_t>(i) * n_phi;
    for (int j = 0; j <= n_max_; ++j) {
      const double* cj = cos_.data() + static_cast<std::size_t>(j) * n_phi;
      const double* sj = sin_.data() + static_cast<std::size_t>(j) * n_phi;
      double ac = 0.0;
      double as = 0.0;
      for (int m = 0; m < n_phi; ++m) {
        ac += ring[m] * cj[m];
        as += ring[m] * sj[m];
      }
      ring_cos[j] = ac * w_phi;
      ring_sin[j] = as * w_phi;
    }
    const double w = grid_.theta_weights()[i];
    const double* pol = polar_.data() + static_cast<std::size_t>(i) * stride_;
    for (int n = 0; n <= n_max_; ++n) {
      const int base = n * n;
      const double* pn = pol + n * (n + 1) / 2;
      coeffs[base] += w * pn[0] * ring_cos[0];
      for (int j = 1; j <= n; ++j) {
        coeffs[base + 2 * j - 1] += w * pn[j] * ring_cos[j];
        coeffs[base + 2 * j] += w * pn[j] * ring_sin[j];
      }
    }
  }
}

void AngularTransform::synthesize(std::span<const double> coeffs, std::span<double> samples) const {
  const int n_theta = grid_.theta_count();
  const int n_phi = grid_.phi_count();
  if (samples.size() != grid_.size()) throw InvalidArgument("sample count does not match grid");
  if (coeffs.size() != static_cast<std::size_t>((n_max_ + 1) * (n_max_ + 1))) {
    throw InvalidArgument("coefficient buffer has the wrong size");
  }
  std::vector<double> ring_cos(static_cast<std::size_t>(n_max_ + 1));
  std::vector<double> ring_sin(static_cast<std::size_t>(n_max_ + 1));
  for (int i = 0; i < n_theta; ++i) {
    const double* pol = polar_.data() + static_cast<std::size_t>(i) * stride_;
    std::fill(ring_cos.begin(), ring_cos.end(), 0.0);
    std::fill(ring_sin.begin(), ring_sin.end(), 0.0);
    for (int n = 0; n <= n_max_; ++n) {
      const int base = n * n;
      const double* pn = pol + n * (n + 1) / 2;
      ring_cos[0] += coeffs[base] * pn[0];
      for (int j = 1; j <= n; ++j) {
        ring_cos[j] += coeffs[base + 2 * j - 1] * pn[j];
        ring_sin[j] += coeffs[base + 2 * j] * pn[j];
      }
    }
    double* ring = samples.data() + static_cast<std::size_t>(i) * n_phi;
    for (int m = 0; m < n_phi; ++m) {
      double v = ring_cos[0];
      for (int j = 1; j <= n_max_; ++j) {
        v += ring_cos[j] * cos_[static_cast<std::size_t>(j) * n_phi + m] +
             ring_sin[j] * sin_[static_cast<std::size_t>(j) * n_phi + m];
      }
      ring[m] = v;
    }
  }
}

HarmonicCoefficients angular_analyze(const AngularGrid& grid, std::span<const double> samples,
                                     int n_max) {
  AngularTransform transform(grid, n_max);
  HarmonicCoefficients out(n_max);
  transform.analyze(samples, out.values());
  return out;
}

}  // namespace sgball
