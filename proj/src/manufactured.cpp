#include "sgball/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "sgball/errors.hpp"

namespace sgball {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

// sin(pi r) / r with the series pi (1 - (pi r)^2/6 + (pi r)^4/120) near 0.
double sinc_pi(double r) {
  if (std::abs(r) < 1e-4) {
    const double z2 = kPi * kPi * r * r;
    return kPi * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
  }
  return std::sin(kPi * r) / r;
}

}  // namespace

CaseId parse_case(std::string_view text) {
  if (text == "1" || text == "case1") return CaseId::case1;
  if (text == "2" || text == "case2") return CaseId::case2;
  throw InvalidArgument("unknown case '" + std::string(text) + "' (expected 1 or 2)");
}

std::string case_name(CaseId id) { return id == CaseId::case1 ? "case1" : "case2"; }

ManufacturedCase manufactured_case(CaseId id) {
  switch (id) {
    case CaseId::case1:
      return ManufacturedCase{
          id, "u = sin(pi r) / r",
          [](double r) { return sinc_pi(r); },
          [](double r) { return kPi * kPi * sinc_pi(r); },
          [](double r) { return kPi * kPi * kPi * kPi * sinc_pi(r); }};
    case CaseId::case2:
      return ManufacturedCase{
          id, "u = exp(r^2) - (5e/3) r^2 + 2e/3",
          [](double r) {
            const double r2 = r * r;
            return std::exp(r2) - 5.0 * kE / 3.0 * r2 + 2.0 * kE / 3.0;
          },
          [](double r) {
            const double r2 = r * r;
            return 10.0 * kE - (6.0 + 4.0 * r2) * std::exp(r2);
          },
          [](double r) {
            const double r2 = r * r;
            return (60.0 + 80.0 * r2 + 16.0 * r2 * r2) * std::exp(r2);
          }};
  }
  throw InvalidArgument("unknown case");
}

ScalarField radial_field(RadialFunction g) {
  return [g = std::move(g)](const Point3& x) {
    return g(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  };
}

}  // namespace sgball
