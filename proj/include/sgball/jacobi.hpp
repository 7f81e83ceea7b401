#pragma once

#include <span>
#include <vector>

namespace sgball {

/// Parameters (alpha, beta) of the Jacobi weight (1 - t)^alpha (1 + t)^beta.
/// Both must exceed -1; construction throws DomainError otherwise.
class JacobiParams {
 public:
  JacobiParams(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;

 private:
  double alpha_;
  double beta_;
};

/// What to do with an argument slightly outside [-1, 1].
enum class DomainPolicy {
  strict,  ///< anything outside [-1, 1] is a DomainError
  clamp,   ///< values within kClampTolerance of the interval are clamped
};

inline constexpr double kClampTolerance = 1e-12;

/// P_n^{alpha,beta}(t) by the ascending three-term recurrence.
double eval_jacobi(int n, const JacobiParams& params, double t,
                   DomainPolicy policy = DomainPolicy::strict);

/// Fills out[i] = P_i^{alpha,beta}(t) for i = 0 .. out.size() - 1.
void eval_jacobi_all(const JacobiParams& params, double t, std::span<double> out,
                     DomainPolicy policy = DomainPolicy::strict);

/// d/dt P_n^{alpha,beta}(t) = (n + alpha + beta + 1) / 2 * P_{n-1}^{alpha+1,beta+1}(t).
double eval_jacobi_deriv(int n, const JacobiParams& params, double t,
                         DomainPolicy policy = DomainPolicy::strict);

/// Squared weighted L2 norm of P_n^{alpha,beta} on (-1, 1).
double jacobi_norm(int n, const JacobiParams& params);

/// Integral of the weight over (-1, 1); equals jacobi_norm(0, params).
double jacobi_weight_mass(const JacobiParams& params);

struct QuadratureRule1D {
  std::vector<double> nodes;    ///< strictly increasing, inside (-1, 1)
  std::vector<double> weights;  ///< positive, summing to jacobi_weight_mass
  JacobiParams params;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// m-point Gauss-Jacobi rule, exact for polynomials of degree <= 2m - 1.
/// Throws ConvergenceError carrying the failing root index.
QuadratureRule1D gauss_jacobi_rule(int m, const JacobiParams& params);

}  // namespace sgball
