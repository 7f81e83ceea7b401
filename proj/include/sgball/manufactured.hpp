#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "sgball/transform.hpp"

namespace sgball {

enum class CaseId { case1, case2 };

/// Accepts "1", "2", "case1", "case2". Throws InvalidArgument("unknown case ...").
CaseId parse_case(std::string_view text);
std::string case_name(CaseId id);

using RadialFunction = std::function<double(double)>;

/// Radially symmetric exact solution of the simply supported problem:
/// sigma = -laplacian(u), f = laplacian^2(u), and u = sigma = 0 at r = 1.
struct ManufacturedCase {
  CaseId id;
  std::string description;
  RadialFunction u;
  RadialFunction sigma;
  RadialFunction f;
};

/// case1: u = sin(pi r) / r (pi at the origin), sigma = pi^2 u, f = pi^4 u.
/// case2: u = e^{r^2} - (5e/3) r^2 + 2e/3, sigma = 10e - (6 + 4r^2) e^{r^2},
///        f = (60 + 80 r^2 + 16 r^4) e^{r^2}.
ManufacturedCase manufactured_case(CaseId id);

/// x -> g(|x|).
ScalarField radial_field(RadialFunction g);

}  // namespace sgball
