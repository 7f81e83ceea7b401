#include "sgball/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "sgball/ball_basis.hpp"
#include "sgball/errors.hpp"
#include "sgball/jacobi.hpp"
#include "sgball/transform.hpp"

namespace sgball {

namespace {

constexpr int kMaxCheckDegree = 12;
constexpr double kStiffnessTolerance = 1e-10;
constexpr double kMassTolerance = 1e-12;
constexpr double kBoundaryTolerance = 1e-12;

// R_k(r) = r^n (P_k - P_{k-1})(2r^2 - 1) and its r-derivative, k = 1..count.
void radial_with_derivative(int n, int count, double r, std::vector<double>& value,
                            std::vector<double>& deriv) {
  const JacobiParams params(0.0, n + 0.5);
  const double t = 2.0 * r * r - 1.0;
  const double rn = std::pow(r, n);
  const double rn1 = n == 0 ? 0.0 : std::pow(r, n - 1);
  value.assign(static_cast<std::size_t>(count), 0.0);
  deriv.assign(static_cast<std::size_t>(count), 0.0);
  for (int k = 1; k <= count; ++k) {
    const double q = eval_jacobi(k, params, t) - eval_jacobi(k - 1, params, t);
    const double dq = eval_jacobi_deriv(k, params, t) - eval_jacobi_deriv(k - 1, params, t);
    value[k - 1] = rn * q;
    deriv[k - 1] = n * rn1 * q + rn * 4.0 * r * dq;
  }
}

void stiffness_check(int degree, const BasisCheckOptions& options, BasisCheckReport& report) {
  const BallGrid grid(degree + 4, 1, 1);
  for (int n = 0; n <= degree - 2; ++n) {
    const int count = (degree - n) / 2;
    std::vector<double> gram(static_cast<std::size_t>(count * count), 0.0);
    std::vector<double> value;
    std::vector<double> deriv;
    for (int q = 0; q < grid.radial_count(); ++q) {
      const double r = grid.radial_r()[q];
      const double w = grid.radial_weights()[q];
      radial_with_derivative(n, count, r, value, deriv);
      const double centrifugal = n * (n + 1.0) / (r * r);
      for (int a = 0; a < count; ++a) {
        for (int b = 0; b < count; ++b) {
          gram[a * count + b] += w * (deriv[a] * deriv[b] + centrifugal * value[a] * value[b]);
        }
      }
    }
    for (int a = 0; a < count; ++a) {
      const double expected = stiffness_lambda(a + 1, n) * (1.0 + options.lambda_perturbation);
      const double diag = gram[a * count + a];
      report.max_stiffness_diagonal = std::max(report.max_stiffness_diagonal, std::abs(diag));
      report.max_stiffness_diagonal_error =
          std::max(report.max_stiffness_diagonal_error, std::abs(diag - expected) / expected);
      for (int b = 0; b < count; ++b) {
        if (a != b) {
          report.max_stiffness_off_diagonal =
              std::max(report.max_stiffness_off_diagonal, std::abs(gram[a * count + b]));
        }
      }
    }
  }
}

void mass_check(int degree, BasisCheckReport& report) {
  // Exact for products of two members of V_N.
  const BallGrid grid(degree / 2 + 2, degree + 2, 2 * degree + 2);
  const BasisEvaluator evaluator(degree);
  const std::size_t dim = evaluator.size();
  std::vector<double> gram(dim * dim, 0.0);
  std::vector<double> phi(dim);
  for (int q = 0; q < grid.radial_count(); ++q) {
    for (int i = 0; i < grid.angular().theta_count(); ++i) {
      for (int m = 0; m < grid.angular().phi_count(); ++m) {
        evaluator.evaluate(grid.point(q, i, m), phi);
        const double w = grid.weight(q, i, m);
        for (std::size_t a = 0; a < dim; ++a) {
          const double wa = w * phi[a];
          double* row = gram.data() + a * dim;
          for (std::size_t b = a; b < dim; ++b) row[b] += wa * phi[b];
        }
      }
    }
  }
  const auto indices = evaluator.layout().indices();
  std::vector<RadialMass> blocks;
  for (int n = 0; n <= degree - 2; ++n) blocks.push_back(mass_tridiagonal(n, (degree - n) / 2));
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a; b < dim; ++b) {
      const BasisIndex& ia = indices[a];
      const BasisIndex& ib = indices[b];
      double expected = 0.0;
      if (ia.n() == ib.n() && ia.l() == ib.l()) expected = blocks[ia.n()](ia.k(), ib.k());
      report.max_mass_deviation =
          std::max(report.max_mass_deviation, std::abs(gram[a * dim + b] - expected));
    }
  }
}

void boundary_check(int degree, const BasisCheckOptions& options, BasisCheckReport& report) {
  const BasisEvaluator evaluator(degree);
  std::vector<double> phi(evaluator.size());
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  for (int s = 0; s < options.boundary_points; ++s) {
    Point3 x{normal(rng), normal(rng), normal(rng)};
    const double norm = std::hypot(x[0], x[1], x[2]);
    for (double& c : x) c /= norm;
    evaluator.evaluate(x, phi);
    for (double v : phi) report.max_boundary_value = std::max(report.max_boundary_value, std::abs(v));
  }
}

}  // namespace

bool BasisCheckReport::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed(); });
}

std::vector<std::string> BasisCheckReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed()) out.push_back(c.name);
  }
  return out;
}

BasisCheckReport run_basis_check(int degree, const BasisCheckOptions& options) {
  if (degree < 2 || degree > kMaxCheckDegree) {
    std::ostringstream msg;
    msg << "basis-check needs 2 <= degree <= " << kMaxCheckDegree << ", got " << degree;
    throw InvalidArgument(msg.str());
  }
  BasisCheckReport report;
  report.degree = degree;
  report.dimension = space_dimension(degree);
  stiffness_check(degree, options, report);
  mass_check(degree, report);
  boundary_check(degree, options, report);
  report.checks = {
      {"stiffness off-diagonal", report.max_stiffness_off_diagonal,
       kStiffnessTolerance * report.max_stiffness_diagonal},
      {"stiffness diagonal mismatch", report.max_stiffness_diagonal_error, kStiffnessTolerance},
      {"mass oracle deviation", report.max_mass_deviation, kMassTolerance},
      {"boundary value", report.max_boundary_value, kBoundaryTolerance},
  };
  return report;
}

nlohmann::json to_json(const BasisCheckReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance},
                      {"passed", c.passed()}});
  }
  return {{"degree", report.degree},
          {"dimension", report.dimension},
          {"max_stiffness_diagonal", report.max_stiffness_diagonal},
          {"max_stiffness_off_diagonal", report.max_stiffness_off_diagonal},
          {"max_stiffness_diagonal_error", report.max_stiffness_diagonal_error},
          {"max_mass_deviation", report.max_mass_deviation},
          {"max_boundary_value", report.max_boundary_value},
          {"checks", std::move(checks)},
          {"ok", report.ok()}};
}

std::string to_text(const BasisCheckReport& report) {
  std::ostringstream out;
  out << "basis-check degree " << report.degree << " (" << report.dimension << " functions)\n";
  char line[160];
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "  %-28s %.3e  (tol %.1e)  %s\n", c.name.c_str(), c.value,
                  c.tolerance, c.passed() ? "ok" : "FAIL");
    out << line;
  }
  return out.str();
}

}  // namespace sgball
