#include "sgball/coefficient_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "sgball/errors.hpp"

namespace sgball {

std::shared_ptr<const BasisLayout> shared_layout(int degree) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const BasisLayout>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;
  auto layout = std::make_shared<const BasisLayout>(degree);
  cache.emplace(degree, layout);
  return layout;
}

CoefficientField::CoefficientField(int degree)
    : layout_(shared_layout(degree)), values_(layout_->size(), 0.0) {}

CoefficientField::CoefficientField(int degree, std::vector<double> values)
    : layout_(shared_layout(degree)), values_(std::move(values)) {
  if (values_.size() != layout_->size()) {
    std::ostringstream msg;
    msg << "V_" << degree << " has " << layout_->size() << " basis functions, got "
        << values_.size() << " coefficients";
    throw InvalidArgument(msg.str());
  }
}

std::span<const double> CoefficientField::block(int n, int l) const {
  return std::span<const double>(values_).subspan(layout_->block_offset(n, l),
                                                  layout_->radial_count(n));
}

std::span<double> CoefficientField::block(int n, int l) {
  return std::span<double>(values_).subspan(layout_->block_offset(n, l),
                                            layout_->radial_count(n));
}

double CoefficientField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

CoefficientField embed(const CoefficientField& field, int degree) {
  if (degree < field.degree()) throw InvalidArgument("embed only lifts to a larger space");
  CoefficientField out(degree);
  for (std::size_t i = 0; i < field.size(); ++i) {
    out[field.layout().indices()[i]] = field.values()[i];
  }
  return out;
}

CoefficientField apply_mass(const CoefficientField& field) {
  const BasisLayout& layout = field.layout();
  CoefficientField out(field.degree());
  for (int n = 0; n <= layout.max_harmonic_degree(); ++n) {
    const int count = layout.radial_count(n);
    const RadialMass mass = mass_tridiagonal(n, count);
    for (int l = 1; l <= 2 * n + 1; ++l) {
      const auto c = field.block(n, l);
      auto m = out.block(n, l);
      for (int i = 0; i < count; ++i) {
        double v = mass.diag[i] * c[i];
        if (i > 0) v += mass.off[i - 1] * c[i - 1];
        if (i + 1 < count) v += mass.off[i] * c[i + 1];
        m[i] = v;
      }
    }
  }
  return out;
}

nlohmann::json to_json(const CoefficientField& field) {
  nlohmann::json entries = nlohmann::json::array();
  const auto indices = field.layout().indices();
  for (std::size_t i = 0; i < field.size(); ++i) {
    const BasisIndex& idx = indices[i];
    entries.push_back({idx.k(), idx.n(), idx.l(), field.values()[i]});
  }
  return {{"degree", field.degree()}, {"ordering", "n-major"}, {"entries", std::move(entries)}};
}

CoefficientField coefficient_field_from_json(const nlohmann::json& j) {
  try {
    if (j.at("ordering").get<std::string>() != "n-major") {
      throw InvalidArgument("coefficient field ordering must be \"n-major\"");
    }
    const int degree = j.at("degree").get<int>();
    CoefficientField field(degree);
    std::vector<bool> seen(field.size(), false);
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 4) {
        throw InvalidArgument("coefficient entries must be [k, n, l, value]");
      }
      const int k = e[0].get<int>();
      const int n = e[1].get<int>();
      const int l = e[2].get<int>();
      const std::size_t pos = field.layout().position(k, n, l);
      if (seen[pos]) {
        std::ostringstream msg;
        msg << "duplicate coefficient entry (" << k << ", " << n << ", " << l << ")";
        throw InvalidArgument(msg.str());
      }
      seen[pos] = true;
      field.values()[pos] = e[3].get<double>();
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) {
        const BasisIndex& idx = field.layout().indices()[i];
        std::ostringstream msg;
        msg << "missing coefficient entry (" << idx.k() << ", " << idx.n() << ", " << idx.l()
            << ")";
        throw InvalidArgument(msg.str());
      }
    }
    return field;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed coefficient field JSON: ") + e.what());
  }
}

}  // namespace sgball
