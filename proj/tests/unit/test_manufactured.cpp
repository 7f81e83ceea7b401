#include <doctest.h>

#include <cmath>
#include <numbers>

#include "finite_difference.hpp"
#include "sgball/errors.hpp"
#include "sgball/manufactured.hpp"

using namespace sgball;

namespace {

// u in long double, written independently of the library.
long double u_exact(CaseId id, long double r) {
  const long double pi = std::numbers::pi_v<long double>;
  const long double e = std::numbers::e_v<long double>;
  if (id == CaseId::case1) return std::sin(pi * r) / r;
  return std::exp(r * r) - (5.0L * e / 3.0L) * r * r + 2.0L * e / 3.0L;
}

}  // namespace

TEST_CASE("parse_case") {
  CHECK(parse_case("1") == CaseId::case1);
  CHECK(parse_case("case2") == CaseId::case2);
  CHECK(case_name(CaseId::case2) == "case2");
  try {
    parse_case("3");
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("unknown case") != std::string::npos);
  }
}

TEST_CASE("case 1 closed forms") {
  const double pi = std::numbers::pi;
  const auto c = manufactured_case(CaseId::case1);
  CHECK(c.u(0.0) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(c.u(1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  for (double r : {0.0, 1e-6, 5e-5, 9.99e-5, 1e-4, 0.3, 0.77}) {
    const double expected = r < 1e-8 ? pi : std::sin(pi * r) / r;
    CHECK(c.u(r) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(c.sigma(r) == doctest::Approx(pi * pi * c.u(r)).epsilon(1e-15));
    CHECK(c.f(r) == doctest::Approx(pi * pi * pi * pi * c.u(r)).epsilon(1e-15));
  }
}

TEST_CASE("case 2 closed forms satisfy the boundary conditions") {
  const double e = std::numbers::e;
  const auto c = manufactured_case(CaseId::case2);
  CHECK(std::abs(c.u(1.0)) <= 1e-14);
  CHECK(std::abs(c.sigma(1.0)) <= 1e-13);
  CHECK(c.f(0.5) == doctest::Approx((60 + 20 + 1) * std::exp(0.25)).epsilon(1e-15));
  CHECK(c.u(0.0) == doctest::Approx(1.0 + 2 * e / 3).epsilon(1e-15));
}

TEST_CASE("closed forms agree with finite differences of the radial operator") {
  // For radial g, lap g = (r g)'' / r and lap^2 g = (r g)'''' / r.
  for (CaseId id : {CaseId::case1, CaseId::case2}) {
    const auto c = manufactured_case(id);
    for (int i = 0; i < 50; ++i) {
      const long double r = 0.1L + 0.85L * i / 49.0L;
      auto ru = [id](long double s) { return s * u_exact(id, s); };
      CHECK(static_cast<double>(u_exact(id, r)) == doctest::Approx(c.u(static_cast<double>(r))).epsilon(1e-14));
      const long double sigma = -oracle::central_derivative(ru, r, 0.01L, 2, 5) / r;
      const long double f = oracle::central_derivative(ru, r, 0.01L, 4, 6) / r;
      CHECK(std::abs(static_cast<double>(sigma) - c.sigma(static_cast<double>(r))) <= 1e-7 * std::abs(c.sigma(static_cast<double>(r))));
      CHECK(std::abs(static_cast<double>(f) - c.f(static_cast<double>(r))) <= 1e-7 * std::abs(c.f(static_cast<double>(r))));
    }
  }
}
