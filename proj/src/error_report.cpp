#include "sgball/error_report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sgball/errors.hpp"

namespace sgball {

std::vector<double> convergence_rates(std::span<const DegreeError> errors) {
  std::vector<double> rates;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i].error > 0.0)) {
      std::ostringstream msg;
      msg << "convergence rate needs positive errors (degree " << errors[i].degree << " has "
          << errors[i].error << ")";
      throw InvalidArgument(msg.str());
    }
    if (i == 0) continue;
    if (errors[i].degree <= errors[i - 1].degree) {
      throw InvalidArgument("convergence rate needs strictly increasing degrees");
    }
    rates.push_back(std::log(errors[i - 1].error / errors[i].error) /
                    (errors[i].degree - errors[i - 1].degree));
  }
  return rates;
}

void ErrorReport::compute_rates() {
  std::vector<DegreeError> sigma;
  std::vector<DegreeError> u;
  for (const ErrorRow& row : rows) {
    sigma.push_back({row.degree, row.l2_sigma});
    u.push_back({row.degree, row.l2_u});
  }
  const auto rs = convergence_rates(sigma);
  const auto ru = convergence_rates(u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].rate_sigma = i == 0 ? std::nullopt : std::optional<double>(rs[i - 1]);
    rows[i].rate_u = i == 0 ? std::nullopt : std::optional<double>(ru[i - 1]);
  }
}

std::string format_error(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6e", value);
  return buf;
}

std::string format_rate(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

std::string ErrorReport::to_csv() const {
  std::ostringstream out;
  out << "# case: " << case_name << "\n";
  out << "# rate_source: " << rate_source << "\n";
  out << "# config: " << config.dump() << "\n";
  out << "N,h1_sigma,h1_u,l2_sigma,l2_u,rate_sigma,rate_u\n";
  for (const ErrorRow& row : rows) {
    out << row.degree << ',' << format_error(row.h1_sigma) << ',' << format_error(row.h1_u) << ','
        << format_error(row.l2_sigma) << ',' << format_error(row.l2_u) << ','
        << (row.rate_sigma ? format_rate(*row.rate_sigma) : "") << ','
        << (row.rate_u ? format_rate(*row.rate_u) : "") << "\n";
  }
  return out.str();
}

nlohmann::json ErrorReport::to_json() const {
  nlohmann::json jrows = nlohmann::json::array();
  for (const ErrorRow& row : rows) {
    jrows.push_back({{"N", row.degree},
                     {"h1_sigma", row.h1_sigma},
                     {"h1_u", row.h1_u},
                     {"l2_sigma", row.l2_sigma},
                     {"l2_u", row.l2_u},
                     {"rate_sigma", row.rate_sigma ? nlohmann::json(*row.rate_sigma) : nullptr},
                     {"rate_u", row.rate_u ? nlohmann::json(*row.rate_u) : nullptr}});
  }
  return {{"case", case_name}, {"rate_source", rate_source}, {"config", config}, {"rows", jrows}};
}

std::string ErrorReport::to_markdown() const {
  std::ostringstream out;
  out << "<!-- case: " << case_name << "; rate_source: " << rate_source
      << "; config: " << config.dump() << " -->\n";
  out << "| N | ‖σ − σ_N‖_H¹ | ‖u − u_N‖_H¹ | ‖σ − σ_N‖ | ‖u − u_N‖ | Rate_σ | Rate_u |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const ErrorRow& row : rows) {
    out << "| " << row.degree << " | " << format_error(row.h1_sigma) << " | "
        << format_error(row.h1_u) << " | " << format_error(row.l2_sigma) << " | "
        << format_error(row.l2_u) << " | "
        << (row.rate_sigma ? format_rate(*row.rate_sigma) : "--") << " | "
        << (row.rate_u ? format_rate(*row.rate_u) : "--") << " |\n";
  }
  return out.str();
}

}  // namespace sgball
