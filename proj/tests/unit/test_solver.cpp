#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ball_oracle.hpp"
#include "dense_galerkin.hpp"
#include "sgball/errors.hpp"
#include "sgball/solver.hpp"

using namespace sgball;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// u = 7 - 10 r^2 + 3 r^4 has sigma = -lap u = 60 (1 - r^2) and f = 360; both
// u and sigma lie in V_4.
ManufacturedCase polynomial_case() {
  ManufacturedCase c;
  c.id = CaseId::case1;
  c.description = "polynomial";
  c.u = [](double r) { return 7.0 - 10.0 * r * r + 3.0 * r * r * r * r; };
  c.sigma = [](double r) { return 60.0 * (1.0 - r * r); };
  c.f = [](double) { return 360.0; };
  return c;
}

Point3 sphere_point(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Point3 x{normal(rng), normal(rng), normal(rng)};
  const double s = std::hypot(x[0], x[1], x[2]);
  for (double& v : x) v /= s;
  return x;
}

}  // namespace

TEST_CASE("zero load gives zero solution") {
  const auto r = solve_biharmonic([](const Point3&) { return 0.0; }, 6);
  for (double v : r.sigma_hat.values()) CHECK(v == 0.0);
  for (double v : r.u_hat.values()) CHECK(v == 0.0);
  CHECK(r.degree == 6);
  CHECK(r.grid == GridConfig::for_degree(6));
}

TEST_CASE("degree validation") {
  CHECK_THROWS_AS(solve_biharmonic([](const Point3&) { return 1.0; }, 1), InvalidArgument);
  CHECK_THROWS_AS(MixedAlgebra(1), InvalidArgument);
  const MixedAlgebra alg(4);
  std::vector<double> a(alg.size()), b(alg.size() + 1);
  CHECK_THROWS_AS(alg.solve_sigma(a, b), InvalidArgument);
  CHECK_THROWS_AS(alg.solve_u(b, a), InvalidArgument);
}

TEST_CASE("polynomial solution is reproduced exactly") {
  const auto mc = polynomial_case();
  const auto r = solve_biharmonic(radial_field(mc.f), 4);
  const auto row = compute_errors(mc, r);
  // sigma peaks at 60, so its rounding floor is larger.
  CHECK(row.l2_u <= 1e-13);
  CHECK(row.h1_u <= 1e-13);
  CHECK(row.l2_sigma <= 1e-12);
  CHECK(row.h1_sigma <= 1e-12);
}

TEST_CASE("discrete residuals vanish to rounding") {
  for (CaseId id : {CaseId::case1, CaseId::case2}) {
    const auto mc = manufactured_case(id);
    for (int degree : {4, 9, 16}) {
      const auto r = solve_biharmonic(radial_field(mc.f), degree);
      const auto idx = r.load.layout().indices();
      const auto ms = apply_mass(r.sigma_hat);
      for (std::size_t j = 0; j < idx.size(); ++j) {
        const double lam = stiffness_lambda(idx[j].k(), idx[j].n());
        CHECK(std::abs(lam * r.sigma_hat.values()[j] - r.load.values()[j]) <= 2 * kEps * std::abs(r.load.values()[j]));
        CHECK(std::abs(lam * r.u_hat.values()[j] - ms.values()[j]) <= 2 * kEps * std::abs(ms.values()[j]));
      }
    }
  }
}

TEST_CASE("solve_from_load repeats the algebra") {
  const auto mc = manufactured_case(CaseId::case2);
  const auto r = solve_biharmonic(radial_field(mc.f), 8);
  const auto s = solve_from_load(r.load);
  for (std::size_t j = 0; j < r.u_hat.size(); ++j) {
    CHECK(s.u_hat.values()[j] == r.u_hat.values()[j]);
    CHECK(s.sigma_hat.values()[j] == r.sigma_hat.values()[j]);
  }
}

TEST_CASE("dense Galerkin cross-check at N = 4 for a single basis load") {
  const int degree = 4;
  const BallGrid grid(GridConfig::for_degree(degree));
  auto f = [](const Point3& x) { return 5.0 * eval_generalized(BasisIndex(1, 0, 1), x); };
  const auto r = solve_biharmonic(f, degree);
  const auto dense = oracle::dense_solve(oracle::assemble_dense(f, degree, grid));
  double scale = 0.0;
  for (double v : r.u_hat.values()) scale = std::max(scale, std::abs(v));
  for (std::size_t j = 0; j < r.u_hat.size(); ++j) {
    CHECK(std::abs(r.sigma_hat.values()[j] - dense.sigma[j]) <= 1e-9 * r.sigma_hat.max_abs());
    CHECK(std::abs(r.u_hat.values()[j] - dense.u[j]) <= 1e-9 * scale);
  }
  // sigma_hat = 5 M e_1 / lambda
  CHECK(r.sigma_hat.at(1, 0, 1) == doctest::Approx(5.0 * (10.0 / 21.0) / 5.0).epsilon(1e-14));
  CHECK(r.sigma_hat.at(2, 0, 1) == doctest::Approx(5.0 * (-1.0 / 7.0) / 9.0).epsilon(1e-14));
}

TEST_CASE("radial data gives radial solutions") {
  for (CaseId id : {CaseId::case1, CaseId::case2}) {
    const auto mc = manufactured_case(id);
    const auto r = solve_biharmonic(radial_field(mc.f), 16);
    for (const auto* field : {&r.u_hat, &r.sigma_hat}) {
      const double top = field->max_abs();
      for (const auto& idx : field->layout().indices()) {
        if (idx.n() >= 1) CHECK(std::abs((*field)[idx]) <= 1e-10 * top);
      }
    }
  }
}

TEST_CASE("boundary conditions hold for the numerical solution") {
  std::mt19937_64 rng(99);
  std::vector<Point3> pts;
  for (int s = 0; s < 50; ++s) pts.push_back(sphere_point(rng));
  for (CaseId id : {CaseId::case1, CaseId::case2}) {
    const auto mc = manufactured_case(id);
    const auto r = solve_biharmonic(radial_field(mc.f), 12);
    for (const auto* field : {&r.u_hat, &r.sigma_hat}) {
      for (double v : synthesize(*field, pts)) CHECK(std::abs(v) <= 1e-10 * field->max_abs());
    }
  }
}

TEST_CASE("errors decrease monotonically with the degree") {
  const int degrees[] = {4, 8, 12, 16};
  for (CaseId id : {CaseId::case1, CaseId::case2}) {
    const auto report = run_convergence_study(id, degrees);
    REQUIRE(report.rows.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) {
      CHECK(report.rows[i].h1_sigma < report.rows[i - 1].h1_sigma);
      CHECK(report.rows[i].h1_u < report.rows[i - 1].h1_u);
      CHECK(report.rows[i].l2_sigma < report.rows[i - 1].l2_sigma);
      CHECK(report.rows[i].l2_u < report.rows[i - 1].l2_u);
    }
    CHECK_FALSE(report.rows[0].rate_u.has_value());
    CHECK(report.rows[1].rate_u.has_value());
    CHECK(report.rate_source == "L2");
  }
}

TEST_CASE("case 1 at N = 8 matches the published sigma error") {
  const auto mc = manufactured_case(CaseId::case1);
  const auto row = compute_errors(mc, solve_biharmonic(radial_field(mc.f), 8));
  CHECK(row.l2_sigma == doctest::Approx(1.884392e-4).epsilon(1e-5));
}

TEST_CASE("study validation") {
  const std::vector<int> empty;
  CHECK_THROWS_AS(run_convergence_study(CaseId::case1, empty), InvalidArgument);
  const std::vector<int> descending{8, 4};
  CHECK_THROWS_AS(run_convergence_study(CaseId::case1, descending), InvalidArgument);
  const std::vector<int> small{1, 4};
  CHECK_THROWS_AS(run_convergence_study(CaseId::case1, small), InvalidArgument);
  const std::vector<int> single{6};
  const auto r = run_convergence_study(CaseId::case2, single);
  REQUIRE(r.rows.size() == 1);
  CHECK_FALSE(r.rows[0].rate_sigma.has_value());
  CHECK_FALSE(r.rows[0].rate_u.has_value());
}

TEST_CASE("error grid must be finer than the solve grid") {
  const auto mc = manufactured_case(CaseId::case1);
  const auto r = solve_biharmonic(radial_field(mc.f), 6);
  ErrorOptions same;
  same.fine = r.grid;
  CHECK_THROWS_AS(compute_errors(mc, r, same), InvalidArgument);
}

TEST_CASE("ritz projection reproduces members of V_N") {
  // v = sum c_j B_j at N' = 5 with -lap v from autodiff Hessians of the oracle basis.
  const int small = 5;
  const int degree = 7;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  CoefficientField c(small);
  for (double& v : c.values()) v = normal(rng);
  const auto idx = c.layout().indices();
  auto neg_lap = [&](const Point3& p) {
    double total = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const auto h = oracle::hessian(
          [&](const auto& x, const auto& y, const auto& z) {
            return oracle::generalized(idx[j].k(), idx[j].n(), idx[j].l(), x, y, z);
          },
          {p[0], p[1], p[2]});
      total -= c.values()[j] * (h[0][0] + h[1][1] + h[2][2]);
    }
    return total;
  };
  const auto proj = ritz_project(neg_lap, degree, BallGrid(GridConfig::for_degree(degree)));
  const auto lifted = embed(c, degree);
  for (std::size_t j = 0; j < proj.size(); ++j) {
    CHECK(std::abs(proj.values()[j] - lifted.values()[j]) <= 1e-10 * c.max_abs());
  }
  const auto zero = ritz_project([](const Point3&) { return 0.0; }, degree, BallGrid(GridConfig::for_degree(degree)));
  for (double v : zero.values()) CHECK(v == 0.0);
}

TEST_CASE("ritz projection of case 1 converges spectrally") {
  const auto mc = manufactured_case(CaseId::case1);
  double previous = std::numeric_limits<double>::infinity();
  for (int degree : {4, 8, 12, 16}) {
    SolveResult r{CoefficientField(degree), CoefficientField(degree), CoefficientField(degree), degree,
                  GridConfig::for_degree(degree), {}};
    const BallGrid g(r.grid);
    r.u_hat = ritz_project(radial_field(mc.sigma), degree, g);
    r.sigma_hat = ritz_project(radial_field(mc.f), degree, g);
    const auto row = compute_errors(mc, r);
    CHECK(row.h1_u < previous * 1e-2);
    previous = row.h1_u;
  }
}

TEST_CASE("H1 seminorm from coefficients matches gradient quadrature at N = 6") {
  const int degree = 6;
  const auto mc = manufactured_case(CaseId::case1);
  SolveResult r{CoefficientField(degree), CoefficientField(degree), CoefficientField(degree), degree,
                GridConfig::for_degree(degree), {}};
  const BallGrid solve_grid(r.grid);
  r.u_hat = ritz_project(radial_field(mc.sigma), degree, solve_grid);
  r.sigma_hat = ritz_project(radial_field(mc.f), degree, solve_grid);
  const auto row = compute_errors(mc, r);
  const double semi_u = std::sqrt(row.h1_u * row.h1_u - row.l2_u * row.l2_u);

  // Direct quadrature of |grad(u - u_N)|^2 with autodiff gradients.
  const double pi = std::numbers::pi;
  auto du = [pi](double s) { return (pi * s * std::cos(pi * s) - std::sin(pi * s)) / (s * s); };
  const auto idx = r.u_hat.layout().indices();
  const BallGrid fine(30, 30, 60);
  double total = 0.0;
  for (int q = 0; q < fine.radial_count(); ++q) {
    for (int i = 0; i < fine.angular().theta_count(); ++i) {
      for (int m = 0; m < fine.angular().phi_count(); ++m) {
        const auto p = fine.point(q, i, m);
        const double s = std::hypot(p[0], p[1], p[2]);
        oracle::Vec3 g{du(s) * p[0] / s, du(s) * p[1] / s, du(s) * p[2] / s};
        for (std::size_t j = 0; j < idx.size(); ++j) {
          if (r.u_hat.values()[j] == 0.0) continue;
          const auto gb = oracle::gradient(
              [&](const auto& x, const auto& y, const auto& z) {
                return oracle::generalized(idx[j].k(), idx[j].n(), idx[j].l(), x, y, z);
              },
              {p[0], p[1], p[2]});
          for (int c = 0; c < 3; ++c) g[c] -= r.u_hat.values()[j] * gb[c];
        }
        total += fine.weight(q, i, m) * (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
      }
    }
  }
  CHECK(semi_u == doctest::Approx(std::sqrt(total)).epsilon(1e-9));
}
