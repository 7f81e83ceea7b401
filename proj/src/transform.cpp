#include "sgball/transform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sgball/errors.hpp"
#include "sgball/jacobi.hpp"
#include "sgball/parallel.hpp"

namespace sgball {

namespace {

void require_degree(int degree) {
  if (degree < 2) {
    std::ostringstream msg;
    msg << "V_N needs N >= 2, got " << degree;
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

BasisEvaluator::BasisEvaluator(int degree) : layout_(shared_layout(degree)), n_max_(degree - 2) {
  constants_.resize(static_cast<std::size_t>((n_max_ + 1) * (n_max_ + 2) / 2));
  for (int n = 0; n <= n_max_; ++n) {
    constants_[key(n, 0)] = std::sqrt((2.0 * n + 1.0) / (4.0 * std::numbers::pi));
    for (int j = 1; j <= n; ++j) constants_[key(n, j)] = harmonic_constant(n, j);
  }
}

void BasisEvaluator::evaluate(const Point3& x, std::span<double> out) const {
  if (out.size() != size()) throw InvalidArgument("basis value buffer has the wrong size");
  const PolarPoint p = to_polar(x);
  std::vector<double> polar(constants_.size(), 0.0);
  std::vector<double> seq(static_cast<std::size_t>(n_max_ + 1));
  double s_pow = 1.0;
  for (int j = 0; j <= n_max_; ++j) {
    const double jd = j;
    std::span<double> s(seq.data(), static_cast<std::size_t>(n_max_ - j + 1));
    eval_jacobi_all(JacobiParams(jd, jd), p.cos_theta, s, DomainPolicy::clamp);
    for (int n = j; n <= n_max_; ++n) polar[key(n, j)] = constants_[key(n, j)] * s_pow * s[n - j];
    s_pow *= p.sin_theta;
  }
  std::vector<double> radial(static_cast<std::size_t>(layout_->radial_count(0)));
  std::size_t pos = 0;
  for (int n = 0; n <= n_max_; ++n) {
    const int count = layout_->radial_count(n);
    std::span<double> rad(radial.data(), static_cast<std::size_t>(count));
    generalized_radial(n, p.r, rad);
    for (int l = 1; l <= 2 * n + 1; ++l) {
      const HarmonicIndex h(n, l);
      const int j = h.order();
      double angular = polar[key(n, j)];
      if (h.kind() == HarmonicKind::cosine) angular *= std::cos(j * p.phi);
      if (h.kind() == HarmonicKind::sine) angular *= std::sin(j * p.phi);
      for (int k = 0; k < count; ++k) out[pos++] = rad[k] * angular;
    }
  }
}

GridConfig GridConfig::for_degree(int degree) {
  return {degree + 8, degree + 8, 2 * degree + 16};
}

BallGrid::BallGrid(int radial, int theta, int phi) : angular_(theta, phi) {
  if (radial < 1) throw InvalidArgument("ball grid needs at least one radial node");
  QuadratureRule1D rule = gauss_jacobi_rule(radial, JacobiParams(0.0, 0.5));
  t_ = std::move(rule.nodes);
  w_ = std::move(rule.weights);
  r_.resize(t_.size());
  const double scale = 1.0 / (4.0 * std::numbers::sqrt2);
  for (std::size_t q = 0; q < t_.size(); ++q) {
    r_[q] = std::sqrt(0.5 * (1.0 + t_[q]));
    w_[q] *= scale;
  }
}

GridConfig BallGrid::config() const noexcept {
  return {radial_count(), angular_.theta_count(), angular_.phi_count()};
}

Point3 BallGrid::point(int q, int i, int m) const noexcept {
  const double r = r_[q];
  const double s = angular_.sin_theta()[i];
  const double phi = angular_.phi(m);
  return {r * s * std::cos(phi), r * s * std::sin(phi), r * angular_.cos_theta()[i]};
}

double BallGrid::weight(int q, int i, int m) const noexcept {
  return w_[q] * angular_.weight(i, m);
}

int BallGrid::exact_degree() const noexcept {
  return std::min(4 * radial_count() - 2, angular_.exact_degree());
}

BallGrid build_ball_grid(int radial, int theta, int phi) { return BallGrid(radial, theta, phi); }

std::vector<double> sample_on_grid(const ScalarField& f, const BallGrid& grid, int threads) {
  std::vector<double> samples(grid.size());
  const int n_theta = grid.angular().theta_count();
  const int n_phi = grid.angular().phi_count();
  parallel_for(static_cast<std::size_t>(grid.radial_count()), threads, [&](std::size_t q) {
    double* shell = samples.data() + q * grid.shell_size();
    for (int i = 0; i < n_theta; ++i) {
      for (int m = 0; m < n_phi; ++m) {
        const Point3 x = grid.point(static_cast<int>(q), i, m);
        const double v = f(x);
        if (!std::isfinite(v)) {
          std::ostringstream msg;
          msg.precision(17);
          msg << "non-finite sample " << v << " at grid point (" << x[0] << ", " << x[1] << ", "
              << x[2] << ") [radial " << q << ", theta " << i << ", phi " << m << "]";
          throw NonFiniteSample(msg.str());
        }
        shell[static_cast<std::size_t>(i) * n_phi + m] = v;
      }
    }
  });
  return samples;
}

double integrate(const BallGrid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) throw InvalidArgument("sample count does not match grid");
  const int n_theta = grid.angular().theta_count();
  const int n_phi = grid.angular().phi_count();
  double total = 0.0;
  std::size_t idx = 0;
  for (int q = 0; q < grid.radial_count(); ++q) {
    double shell = 0.0;
    for (int i = 0; i < n_theta; ++i) {
      double ring = 0.0;
      for (int m = 0; m < n_phi; ++m) ring += samples[idx++];
      shell += grid.angular().theta_weights()[i] * ring;
    }
    total += grid.radial_weights()[q] * shell;
  }
  return total * grid.angular().phi_weight();
}

BallTransform::BallTransform(const BallGrid& grid, int degree, int threads)
    : grid_(grid), degree_(degree), threads_(threads),
      angular_(grid.angular(), std::max(degree - 2, 0)) {
  require_degree(degree);
  if (grid_.exact_degree() < 2 * degree) {
    const GridConfig c = grid_.config();
    std::ostringstream msg;
    msg << "ball grid (" << c.radial << ", " << c.theta << ", " << c.phi
        << ") integrates degree " << grid_.exact_degree() << " exactly; V_" << degree
        << " needs degree " << 2 * degree;
    throw GridTooCoarse(msg.str());
  }
  const int n_max = degree - 2;
  radial_offset_.resize(static_cast<std::size_t>(n_max + 1));
  std::size_t stride = 0;
  for (int n = 0; n <= n_max; ++n) {
    radial_offset_[n] = stride;
    stride += static_cast<std::size_t>((degree - n) / 2);
  }
  radial_stride_ = stride;
  radial_.resize(radial_stride_ * static_cast<std::size_t>(grid_.radial_count()));
  for (int q = 0; q < grid_.radial_count(); ++q) {
    for (int n = 0; n <= n_max; ++n) {
      std::span<double> row(radial_.data() + q * radial_stride_ + radial_offset_[n],
                            static_cast<std::size_t>((degree - n) / 2));
      generalized_radial(n, grid_.radial_r()[q], row);
    }
  }
}

CoefficientField BallTransform::analyze(std::span<const double> samples) const {
  if (samples.size() != grid_.size()) throw InvalidArgument("sample count does not match grid");
  const int n_max = degree_ - 2;
  const std::size_t n_harm = static_cast<std::size_t>((n_max + 1) * (n_max + 1));
  const int n_shells = grid_.radial_count();

  // Stage one: harmonic coefficients of every shell.
  std::vector<double> shells(n_harm * static_cast<std::size_t>(n_shells));
  parallel_for(static_cast<std::size_t>(n_shells), threads_, [&](std::size_t q) {
    angular_.analyze(samples.subspan(q * grid_.shell_size(), grid_.shell_size()),
                     std::span<double>(shells.data() + q * n_harm, n_harm));
  });

  // Stage two: radial quadrature per (n, l) block.
  CoefficientField out(degree_);
  const auto weights = grid_.radial_weights();
  parallel_for(static_cast<std::size_t>(n_max + 1), threads_, [&](std::size_t nn) {
    const int n = static_cast<int>(nn);
    const int count = (degree_ - n) / 2;
    for (int l = 1; l <= 2 * n + 1; ++l) {
      const std::size_t h = static_cast<std::size_t>(n * n + l - 1);
      auto block = out.block(n, l);
      for (int k = 1; k <= count; ++k) {
        double acc = 0.0;
        for (int q = 0; q < n_shells; ++q) {
          acc += weights[q] * radial_value(q, n, k) * shells[static_cast<std::size_t>(q) * n_harm + h];
        }
        block[k - 1] = acc;
      }
    }
  });
  return out;
}

std::vector<double> BallTransform::synthesize(const CoefficientField& field) const {
  if (field.degree() != degree_) throw InvalidArgument("field degree does not match transform");
  const int n_max = degree_ - 2;
  const std::size_t n_harm = static_cast<std::size_t>((n_max + 1) * (n_max + 1));
  std::vector<double> samples(grid_.size());
  parallel_for(static_cast<std::size_t>(grid_.radial_count()), threads_, [&](std::size_t qq) {
    const int q = static_cast<int>(qq);
    std::vector<double> harm(n_harm, 0.0);
    for (int n = 0; n <= n_max; ++n) {
      const int count = (degree_ - n) / 2;
      for (int l = 1; l <= 2 * n + 1; ++l) {
        const auto block = field.block(n, l);
        double v = 0.0;
        for (int k = 1; k <= count; ++k) v += block[k - 1] * radial_value(q, n, k);
        harm[static_cast<std::size_t>(n * n + l - 1)] = v;
      }
    }
    angular_.synthesize(harm, std::span<double>(samples.data() + qq * grid_.shell_size(),
                                                grid_.shell_size()));
  });
  return samples;
}

CoefficientField analyze(const ScalarField& f, int degree, const BallGrid& grid, int threads) {
  BallTransform transform(grid, degree, threads);
  return transform.analyze(sample_on_grid(f, grid, threads));
}

CoefficientField analyze_direct(const ScalarField& f, int degree, const BallGrid& grid) {
  require_degree(degree);
  const auto samples = sample_on_grid(f, grid, 1);
  CoefficientField out(degree);
  const auto indices = out.layout().indices();
  const int n_theta = grid.angular().theta_count();
  const int n_phi = grid.angular().phi_count();
  for (std::size_t j = 0; j < indices.size(); ++j) {
    double acc = 0.0;
    std::size_t idx = 0;
    for (int q = 0; q < grid.radial_count(); ++q) {
      for (int i = 0; i < n_theta; ++i) {
        for (int m = 0; m < n_phi; ++m) {
          acc += grid.weight(q, i, m) * samples[idx++] * eval_generalized(indices[j], grid.point(q, i, m));
        }
      }
    }
    out.values()[j] = acc;
  }
  return out;
}

std::vector<double> synthesize(const CoefficientField& field, std::span<const Point3> points) {
  const BasisEvaluator evaluator(field.degree());
  std::vector<double> basis(evaluator.size());
  std::vector<double> out;
  out.reserve(points.size());
  for (const Point3& x : points) {
    evaluator.evaluate(x, basis);
    double v = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j) v += field.values()[j] * basis[j];
    out.push_back(v);
  }
  return out;
}

std::vector<double> synthesize_on_grid(const CoefficientField& field, const BallGrid& grid,
                                       int threads) {
  return BallTransform(grid, field.degree(), threads).synthesize(field);
}

}  // namespace sgball
