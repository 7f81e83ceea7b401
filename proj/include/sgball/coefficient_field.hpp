#pragma once

#include <memory>
#include <span>
#include <vector>

#include <json.hpp>

#include "sgball/ball_basis.hpp"

namespace sgball {

/// Shared, immutable layout of V_N (cached per degree).
std::shared_ptr<const BasisLayout> shared_layout(int degree);

/// Real coefficients over the generalized basis of V_N, stored in the
/// n-major order of index_set(N).
class CoefficientField {
 public:
  explicit CoefficientField(int degree);
  CoefficientField(int degree, std::vector<double> values);

  int degree() const noexcept { return layout_->degree(); }
  const BasisLayout& layout() const noexcept { return *layout_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](const BasisIndex& idx) const { return values_[layout_->position(idx)]; }
  double& operator[](const BasisIndex& idx) { return values_[layout_->position(idx)]; }
  double at(int k, int n, int l) const { return values_[layout_->position(k, n, l)]; }
  double& at(int k, int n, int l) { return values_[layout_->position(k, n, l)]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  /// Radial block of one (n, l): coefficients for k = 1 .. radial_count(n).
  std::span<const double> block(int n, int l) const;
  std::span<double> block(int n, int l);

  double max_abs() const noexcept;

 private:
  std::shared_ptr<const BasisLayout> layout_;
  std::vector<double> values_;
};

/// Copy into V_M (M >= N); new entries are zero.
CoefficientField embed(const CoefficientField& field, int degree);

/// Blockwise tridiagonal product M c, i.e. the L2 inner products of the
/// synthesized function against every basis function.
CoefficientField apply_mass(const CoefficientField& field);

/// {"degree": N, "ordering": "n-major", "entries": [[k, n, l, value], ...]}
nlohmann::json to_json(const CoefficientField& field);

/// Inverse of to_json. Every index of V_N must appear exactly once.
CoefficientField coefficient_field_from_json(const nlohmann::json& j);

}  // namespace sgball
