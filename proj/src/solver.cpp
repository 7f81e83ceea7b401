#include "sgball/solver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "sgball/errors.hpp"

namespace sgball {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool is_default(const GridConfig& c) { return c.radial == 0 && c.theta == 0 && c.phi == 0; }

CoefficientField divide_by_stiffness(const CoefficientField& field) {
  CoefficientField out(field.degree());
  const auto indices = field.layout().indices();
  for (std::size_t j = 0; j < field.size(); ++j) {
    out.values()[j] = field.values()[j] / stiffness_lambda(indices[j].k(), indices[j].n());
  }
  return out;
}

// sum_j lambda_j (a_j - b_j)^2 with b taken as zero outside its space.
double energy_distance(const CoefficientField& ritz, const CoefficientField& numeric) {
  const CoefficientField lifted = embed(numeric, ritz.degree());
  const auto indices = ritz.layout().indices();
  double total = 0.0;
  for (std::size_t j = 0; j < ritz.size(); ++j) {
    const double d = ritz.values()[j] - lifted.values()[j];
    total += stiffness_lambda(indices[j].k(), indices[j].n()) * d * d;
  }
  return total;
}

}  // namespace

MixedAlgebra::MixedAlgebra(int degree) : layout_(shared_layout(degree)) {
  for (int n = 0; n <= layout_->max_harmonic_degree(); ++n) {
    modes_.push_back(mode_operator(n, layout_->radial_count(n)));
  }
}

void MixedAlgebra::solve_sigma(std::span<const double> load, std::span<double> sigma) const {
  if (load.size() != size() || sigma.size() != size()) {
    throw InvalidArgument("coefficient vector size does not match V_N");
  }
  std::size_t pos = 0;
  for (const ModeOperator& mode : modes_) {
    const std::size_t count = mode.stiffness.size();
    for (int l = 0; l < 2 * mode.n + 1; ++l) {
      for (std::size_t k = 0; k < count; ++k, ++pos) sigma[pos] = load[pos] / mode.stiffness[k];
    }
  }
}

void MixedAlgebra::solve_u(std::span<const double> sigma, std::span<double> u) const {
  if (sigma.size() != size() || u.size() != size()) {
    throw InvalidArgument("coefficient vector size does not match V_N");
  }
  std::size_t pos = 0;
  for (const ModeOperator& mode : modes_) {
    const std::size_t count = mode.stiffness.size();
    const double* diag = mode.mass.diag.data();
    const double* off = mode.mass.off.data();
    const double* lambda = mode.stiffness.data();
    for (int l = 0; l < 2 * mode.n + 1; ++l, pos += count) {
      const double* s = sigma.data() + pos;
      double* out = u.data() + pos;
      for (std::size_t k = 0; k < count; ++k) {
        double m = diag[k] * s[k];
        if (k > 0) m += off[k - 1] * s[k - 1];
        if (k + 1 < count) m += off[k] * s[k + 1];
        out[k] = m / lambda[k];
      }
    }
  }
}

GridConfig resolve_grid(const GridConfig& requested, int degree) {
  if (is_default(requested)) return GridConfig::for_degree(degree);
  if (requested.radial < 1 || requested.theta < 1 || requested.phi < 1) {
    throw InvalidArgument("quadrature node counts must be positive");
  }
  return requested;
}

SolveResult solve_from_load(const CoefficientField& load) {
  const auto start = Clock::now();
  MixedAlgebra algebra(load.degree());
  CoefficientField sigma(load.degree());
  CoefficientField u(load.degree());
  algebra.solve_sigma(load.values(), sigma.values());
  algebra.solve_u(sigma.values(), u.values());
  SolveResult result{std::move(sigma), std::move(u), load, load.degree(), {}, {}};
  result.timings.algebra_seconds = seconds_since(start);
  return result;
}

SolveResult solve_biharmonic(const ScalarField& f, int degree, const SolveOptions& options) {
  if (degree < 2) {
    std::ostringstream msg;
    msg << "V_N needs N >= 2, got " << degree;
    throw InvalidArgument(msg.str());
  }
  const GridConfig config = resolve_grid(options.grid, degree);
  const auto start = Clock::now();
  const BallGrid grid(config);
  CoefficientField load = analyze(f, degree, grid, options.threads);
  const double analysis = seconds_since(start);

  SolveResult result = solve_from_load(load);
  result.grid = config;
  result.timings.analysis_seconds = analysis;
  return result;
}

CoefficientField ritz_project(const ScalarField& neg_laplacian, int degree, const BallGrid& grid,
                              int threads) {
  return divide_by_stiffness(analyze(neg_laplacian, degree, grid, threads));
}

ErrorRow compute_errors(const ManufacturedCase& mcase, const SolveResult& result,
                        const ErrorOptions& options, StageTimings* timings) {
  const auto start = Clock::now();
  const int degree = result.degree;
  const GridConfig solve_grid = resolve_grid(result.grid, degree);
  const GridConfig fine_config =
      is_default(options.fine) ? solve_grid.refined() : resolve_grid(options.fine, degree);
  const bool no_coarser = fine_config.radial >= solve_grid.radial &&
                          fine_config.theta >= solve_grid.theta && fine_config.phi >= solve_grid.phi;
  if (!no_coarser || fine_config == solve_grid) {
    throw InvalidArgument("error quadrature grid must be strictly finer than the solve grid");
  }
  const int tail = options.tail_degree == 0 ? degree + 16 : options.tail_degree;
  if (tail < degree) throw InvalidArgument("tail degree must be at least the solve degree");

  const BallGrid fine(fine_config);
  const auto u_exact = sample_on_grid(radial_field(mcase.u), fine, options.threads);
  const auto sigma_exact = sample_on_grid(radial_field(mcase.sigma), fine, options.threads);
  const auto f_exact = sample_on_grid(radial_field(mcase.f), fine, options.threads);

  const BallTransform solve_space(fine, degree, options.threads);
  const auto u_num = solve_space.synthesize(result.u_hat);
  const auto sigma_num = solve_space.synthesize(result.sigma_hat);

  std::vector<double> sq(fine.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = (u_exact[i] - u_num[i]) * (u_exact[i] - u_num[i]);
  const double l2_u = std::sqrt(integrate(fine, sq));
  for (std::size_t i = 0; i < sq.size(); ++i) {
    sq[i] = (sigma_exact[i] - sigma_num[i]) * (sigma_exact[i] - sigma_num[i]);
  }
  const double l2_sigma = std::sqrt(integrate(fine, sq));

  const BallTransform tail_space(fine, tail, options.threads);
  const CoefficientField ritz_u = divide_by_stiffness(tail_space.analyze(sigma_exact));
  const CoefficientField ritz_sigma = divide_by_stiffness(tail_space.analyze(f_exact));
  const double semi_u2 = energy_distance(ritz_u, result.u_hat);
  const double semi_sigma2 = energy_distance(ritz_sigma, result.sigma_hat);

  ErrorRow row;
  row.degree = degree;
  row.l2_u = l2_u;
  row.l2_sigma = l2_sigma;
  row.h1_u = std::sqrt(l2_u * l2_u + semi_u2);
  row.h1_sigma = std::sqrt(l2_sigma * l2_sigma + semi_sigma2);
  if (timings != nullptr) timings->error_seconds = seconds_since(start);
  return row;
}

ErrorReport run_convergence_study(CaseId id, std::span<const int> degrees,
                                  const StudyOptions& options) {
  if (degrees.empty()) throw InvalidArgument("convergence study needs at least one degree");
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 2) throw InvalidArgument("every degree must be at least 2");
    if (i > 0 && degrees[i] <= degrees[i - 1]) {
      throw InvalidArgument("degrees must be strictly ascending");
    }
  }
  const ManufacturedCase mcase = manufactured_case(id);
  ErrorReport report;
  report.case_name = case_name(id);
  for (int degree : degrees) {
    const SolveResult result =
        solve_biharmonic(radial_field(mcase.f), degree, SolveOptions{options.grid, options.threads});
    ErrorOptions eopts;
    eopts.threads = options.threads;
    StageTimings t = result.timings;
    report.rows.push_back(compute_errors(mcase, result, eopts, &t));
    if (options.timings) options.timings->push_back(t);
  }
  report.compute_rates();
  return report;
}

}  // namespace sgball
