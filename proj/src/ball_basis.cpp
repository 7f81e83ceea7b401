#include "sgball/ball_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sgball/errors.hpp"
#include "sgball/jacobi.hpp"

namespace sgball {

namespace {

double log_pochhammer(double a, int k) { return std::lgamma(a + k) - std::lgamma(a); }

JacobiParams radial_params(double alpha, int n) { return JacobiParams(alpha, n + 0.5); }

// r^n Y_l^n(x/r) for |x| = r; zero at the origin unless n = 0.
double solid_harmonic(const HarmonicIndex& h, const PolarPoint& p) {
  if (p.r == 0.0) {
    return h.n() == 0 ? harmonic_polar_factor(0, 0, 1.0, 0.0) : 0.0;
  }
  const int j = h.order();
  double v = harmonic_polar_factor(h.n(), j, p.cos_theta, p.sin_theta) * std::pow(p.r, h.n());
  switch (h.kind()) {
    case HarmonicKind::zonal:
      break;
    case HarmonicKind::cosine:
      v *= std::cos(j * p.phi);
      break;
    case HarmonicKind::sine:
      v *= std::sin(j * p.phi);
      break;
  }
  return v;
}

void check_alpha(double alpha) {
  if (alpha != -1.0 && alpha != 0.0 && alpha != 1.0) {
    std::ostringstream msg;
    msg << "ball polynomials support alpha in {-1, 0, 1}, got " << alpha;
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

PolarPoint to_polar(const Point3& x) {
  const double rho2 = x[0] * x[0] + x[1] * x[1];
  const double r = std::sqrt(rho2 + x[2] * x[2]);
  if (!(r <= 1.0 + kBallTolerance)) {
    std::ostringstream msg;
    msg << "point (" << x[0] << ", " << x[1] << ", " << x[2] << ") lies outside the unit ball";
    throw DomainError(msg.str());
  }
  PolarPoint p;
  p.r = r;
  if (r == 0.0) return p;
  p.cos_theta = x[2] / r;
  p.sin_theta = std::sqrt(rho2) / r;
  p.phi = std::atan2(x[1], x[0]);
  if (p.phi < 0.0) p.phi += 2.0 * std::numbers::pi;
  return p;
}

BasisIndex::BasisIndex(int k, int n, int l) : k_(k), n_(n), l_(l) {
  if (k < 1 || n < 0 || l < 1 || l > 2 * n + 1) {
    std::ostringstream msg;
    msg << "basis index (k = " << k << ", n = " << n << ", l = " << l
        << ") needs k >= 1 and 1 <= l <= 2n+1";
    throw InvalidArgument(msg.str());
  }
}

double ball_prefactor(double alpha, int k, int n) {
  if (alpha == 0.0 || k == 0) return 1.0;
  const double a = n + k + 1.5;
  return std::exp(log_pochhammer(a, k) - log_pochhammer(a + alpha, k));
}

double ball_norm(double alpha, int k, int n) {
  if (!(alpha > -1.0)) throw DomainError("ball_norm needs alpha > -1");
  if (k < 0 || n < 0) throw InvalidArgument("ball_norm needs k, n >= 0");
  const double kd = k;
  const double nd = n;
  const double log_h = std::lgamma(kd + alpha + 1.0) + std::lgamma(nd + 2.0 * kd + 1.5) +
                       log_pochhammer(nd + kd + 1.5, k) - std::log(2.0) - std::lgamma(kd + 1.0) -
                       std::lgamma(nd + 2.0 * kd + alpha + 2.5) -
                       log_pochhammer(nd + kd + alpha + 1.5, k);
  return std::exp(log_h);
}

double eval_ball(const BallPolySpec& spec, const Point3& x) {
  check_alpha(spec.alpha);
  if (spec.k < 0) throw InvalidArgument("ball polynomial radial degree must be nonnegative");
  const HarmonicIndex h(spec.n, spec.l);
  if (spec.alpha == -1.0) {
    if (spec.k == 0) return eval_ball(BallPolySpec{0.0, 0, spec.n, spec.l}, x);
    return eval_generalized(BasisIndex(spec.k, spec.n, spec.l), x);
  }
  const PolarPoint p = to_polar(x);
  const double t = 2.0 * p.r * p.r - 1.0;
  const double radial =
      eval_jacobi(spec.k, radial_params(spec.alpha, spec.n), t, DomainPolicy::clamp);
  return ball_prefactor(spec.alpha, spec.k, spec.n) * radial * solid_harmonic(h, p);
}

double eval_generalized(const BasisIndex& idx, const Point3& x) {
  const PolarPoint p = to_polar(x);
  const double t = 2.0 * p.r * p.r - 1.0;
  const JacobiParams params = radial_params(0.0, idx.n());
  const double radial = eval_jacobi(idx.k(), params, t, DomainPolicy::clamp) -
                        eval_jacobi(idx.k() - 1, params, t, DomainPolicy::clamp);
  return radial * solid_harmonic(idx.harmonic(), p);
}

void generalized_radial(int n, double r, std::span<double> out) {
  if (out.empty()) return;
  const double t = 2.0 * r * r - 1.0;
  std::vector<double> p(out.size() + 1);
  eval_jacobi_all(radial_params(0.0, n), t, p, DomainPolicy::clamp);
  const double rn = std::pow(r, n);
  for (std::size_t k = 1; k <= out.size(); ++k) out[k - 1] = rn * (p[k] - p[k - 1]);
}

double stiffness_lambda(int k, int n) {
  if (k < 1 || n < 0) throw InvalidArgument("stiffness_lambda needs k >= 1, n >= 0");
  return 2.0 * n + 4.0 * k + 1.0;
}

double RadialMass::operator()(int k, int kp) const {
  if (k < 1 || kp < 1 || k > size() || kp > size()) {
    throw InvalidArgument("radial mass index out of range");
  }
  if (k == kp) return diag[k - 1];
  if (k - kp == 1 || kp - k == 1) return off[std::min(k, kp) - 1];
  return 0.0;
}

RadialMass mass_tridiagonal(int n, int k_max) {
  if (n < 0 || k_max < 1) throw InvalidArgument("mass_tridiagonal needs n >= 0, k_max >= 1");
  auto h = [n](int k) { return 1.0 / (2.0 * n + 4.0 * k + 3.0); };
  RadialMass m;
  m.n = n;
  m.diag.resize(static_cast<std::size_t>(k_max));
  m.off.resize(static_cast<std::size_t>(k_max - 1));
  for (int k = 1; k <= k_max; ++k) {
    m.diag[k - 1] = h(k) + h(k - 1);
    if (k < k_max) m.off[k - 1] = -h(k);
  }
  return m;
}

ModeOperator mode_operator(int n, int k_max) {
  ModeOperator op;
  op.n = n;
  op.mass = mass_tridiagonal(n, k_max);
  op.stiffness.resize(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) op.stiffness[k - 1] = stiffness_lambda(k, n);
  return op;
}

std::vector<BasisIndex> index_set(int degree) {
  if (degree < 2) {
    std::ostringstream msg;
    msg << "V_N needs N >= 2, got " << degree;
    throw InvalidArgument(msg.str());
  }
  std::vector<BasisIndex> out;
  out.reserve(space_dimension(degree));
  for (int n = 0; n <= degree - 2; ++n) {
    const int k_max = (degree - n) / 2;
    for (int l = 1; l <= 2 * n + 1; ++l) {
      for (int k = 1; k <= k_max; ++k) out.emplace_back(k, n, l);
    }
  }
  return out;
}

std::size_t space_dimension(int degree) {
  if (degree < 2) return 0;
  std::size_t total = 0;
  for (int n = 0; n <= degree - 2; ++n) {
    total += static_cast<std::size_t>(2 * n + 1) * static_cast<std::size_t>((degree - n) / 2);
  }
  return total;
}

BasisLayout::BasisLayout(int degree) : degree_(degree), indices_(index_set(degree)) {
  degree_offsets_.resize(static_cast<std::size_t>(degree));
  std::size_t offset = 0;
  for (int n = 0; n <= degree - 2; ++n) {
    degree_offsets_[n] = offset;
    offset += static_cast<std::size_t>(2 * n + 1) * static_cast<std::size_t>(radial_count(n));
  }
  degree_offsets_[degree - 1] = offset;
}

int BasisLayout::radial_count(int n) const noexcept {
  if (n < 0 || n > degree_ - 2) return 0;
  return (degree_ - n) / 2;
}

std::size_t BasisLayout::block_offset(int n, int l) const {
  if (n < 0 || n > degree_ - 2 || l < 1 || l > 2 * n + 1) {
    throw InvalidArgument("harmonic block not present in V_N");
  }
  return degree_offsets_[n] + static_cast<std::size_t>(l - 1) * radial_count(n);
}

bool BasisLayout::contains(int k, int n, int l) const noexcept {
  return n >= 0 && l >= 1 && l <= 2 * n + 1 && k >= 1 && 2 * k + n <= degree_;
}

std::size_t BasisLayout::position(int k, int n, int l) const {
  if (!contains(k, n, l)) {
    std::ostringstream msg;
    msg << "(k = " << k << ", n = " << n << ", l = " << l << ") is not in V_" << degree_;
    throw InvalidArgument(msg.str());
  }
  return block_offset(n, l) + static_cast<std::size_t>(k - 1);
}

}  // namespace sgball
