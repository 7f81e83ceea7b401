#include "sgball/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "sgball/errors.hpp"

namespace sgball {

namespace {

double checked_argument(double t, DomainPolicy policy) {
  if (t >= -1.0 && t <= 1.0) return t;
  if (policy == DomainPolicy::clamp && std::abs(t) <= 1.0 + kClampTolerance) {
    return std::clamp(t, -1.0, 1.0);
  }
  std::ostringstream msg;
  msg << "Jacobi argument t = " << t << " outside [-1, 1]";
  throw DomainError(msg.str());
}

// Ascending recurrence without argument checking; out.size() >= 1.
void recurrence(double a, double b, double t, std::span<double> out) {
  const std::size_t count = out.size();
  if (count == 0) return;
  out[0] = 1.0;
  if (count == 1) return;
  out[1] = 0.5 * (a + b + 2.0) * t + 0.5 * (a - b);
  const double a2b2 = a * a - b * b;
  for (std::size_t i = 2; i < count; ++i) {
    const double n = static_cast<double>(i);
    const double s = 2.0 * n + a + b;
    const double lead = 2.0 * n * (n + a + b) * (s - 2.0);
    const double mid = (s - 1.0) * (s * (s - 2.0) * t + a2b2);
    const double back = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    out[i] = (mid * out[i - 1] - back * out[i - 2]) / lead;
  }
}

double single(int n, double a, double b, double t) {
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p = 0.5 * (a + b + 2.0) * t + 0.5 * (a - b);
  const double a2b2 = a * a - b * b;
  for (int i = 2; i <= n; ++i) {
    const double m = static_cast<double>(i);
    const double s = 2.0 * m + a + b;
    const double lead = 2.0 * m * (m + a + b) * (s - 2.0);
    const double mid = (s - 1.0) * (s * (s - 2.0) * t + a2b2);
    const double back = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s;
    const double next = (mid * p - back * p_prev) / lead;
    p_prev = p;
    p = next;
  }
  return p;
}

double single_deriv(int n, double a, double b, double t) {
  if (n == 0) return 0.0;
  return 0.5 * (n + a + b + 1.0) * single(n - 1, a + 1.0, b + 1.0, t);
}

}  // namespace

JacobiParams::JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    std::ostringstream msg;
    msg << "Jacobi parameters must exceed -1 (got alpha = " << alpha
        << ", beta = " << beta << ")";
    throw DomainError(msg.str());
  }
}

double eval_jacobi(int n, const JacobiParams& params, double t, DomainPolicy policy) {
  if (n < 0) throw InvalidArgument("Jacobi degree must be nonnegative");
  t = checked_argument(t, policy);
  return single(n, params.alpha(), params.beta(), t);
}

void eval_jacobi_all(const JacobiParams& params, double t, std::span<double> out,
                     DomainPolicy policy) {
  t = checked_argument(t, policy);
  recurrence(params.alpha(), params.beta(), t, out);
}

double eval_jacobi_deriv(int n, const JacobiParams& params, double t,
                         DomainPolicy policy) {
  if (n < 0) throw InvalidArgument("Jacobi degree must be nonnegative");
  t = checked_argument(t, policy);
  return single_deriv(n, params.alpha(), params.beta(), t);
}

double jacobi_weight_mass(const JacobiParams& params) {
  const double a = params.alpha();
  const double b = params.beta();
  return std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
                  std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
}

double jacobi_norm(int n, const JacobiParams& params) {
  if (n < 0) throw InvalidArgument("Jacobi degree must be nonnegative");
  if (n == 0) return jacobi_weight_mass(params);
  const double a = params.alpha();
  const double b = params.beta();
  const double m = static_cast<double>(n);
  const double log_ratio = std::lgamma(m + a + 1.0) + std::lgamma(m + b + 1.0) -
                           std::lgamma(m + 1.0) - std::lgamma(m + a + b + 1.0);
  return std::exp((a + b + 1.0) * std::numbers::ln2 + log_ratio) / (2.0 * m + a + b + 1.0);
}

QuadratureRule1D gauss_jacobi_rule(int m, const JacobiParams& params) {
  if (m < 1) throw InvalidArgument("quadrature rule needs at least one node");
  constexpr int kMaxIterations = 100;
  constexpr double kStepTolerance = 1e-15;

  const double a = params.alpha();
  const double b = params.beta();
  const double dm = static_cast<double>(m);

  std::vector<double> nodes(static_cast<std::size_t>(m));
  std::vector<double> derivs(static_cast<std::size_t>(m));

  // Chebyshev-angle guesses, refined by Newton with deflation.
  for (int i = 1; i <= m; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25 + 0.5 * a) / (dm + 0.5 * (a + b + 1.0)));
    bool converged = false;
    for (int it = 0; it < kMaxIterations; ++it) {
      const double p = single(m, a, b, x);
      const double dp = single_deriv(m, a, b, x);
      // Deflate the roots already found so Newton cannot return to them.
      double deflation = 0.0;
      for (int j = 1; j < i; ++j) deflation += 1.0 / (x - nodes[static_cast<std::size_t>(m - j)]);
      const double denom = dp - p * deflation;
      if (denom == 0.0 || !std::isfinite(denom)) break;
      double step = p / denom;
      double next = x - step;
      // Keep the iterate inside the open interval.
      while (next <= -1.0 || next >= 1.0) {
        step *= 0.5;
        next = x - step;
      }
      x = next;
      if (std::abs(step) <= kStepTolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      std::ostringstream msg;
      msg << "Gauss-Jacobi Newton iteration did not converge for root " << i - 1
          << " of " << m << " (alpha = " << a << ", beta = " << b << ")";
      throw ConvergenceError(msg.str(), i - 1);
    }
    nodes[static_cast<std::size_t>(m - i)] = x;
    derivs[static_cast<std::size_t>(m - i)] = single_deriv(m, a, b, x);
  }

  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return nodes[l] < nodes[r]; });
  {
    std::vector<double> n2(nodes.size());
    std::vector<double> d2(nodes.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      n2[i] = nodes[order[i]];
      d2[i] = derivs[order[i]];
    }
    nodes = std::move(n2);
    derivs = std::move(d2);
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) {
      std::ostringstream msg;
      msg << "Gauss-Jacobi roots " << i - 1 << " and " << i
          << " collapsed onto the same value " << nodes[i];
      throw ConvergenceError(msg.str(), static_cast<int>(i));
    }
  }

  const double log_const = (a + b + 1.0) * std::numbers::ln2 + std::lgamma(dm + a + 1.0) +
                           std::lgamma(dm + b + 1.0) - std::lgamma(dm + a + b + 1.0) -
                           std::lgamma(dm + 1.0);
  const double scale = std::exp(log_const);
  std::vector<double> weights(nodes.size());
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double x = nodes[i];
    weights[i] = scale / ((1.0 - x) * (1.0 + x) * derivs[i] * derivs[i]);
    total += weights[i];
  }
  const double rescale = jacobi_weight_mass(params) / total;
  for (double& w : weights) w *= rescale;

  return QuadratureRule1D{std::move(nodes), std::move(weights), params};
}

}  // namespace sgball
