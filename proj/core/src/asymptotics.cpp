#include "netfail/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "netfail/special.hpp"

namespace netfail {

RateHeader ld_rate(const NetworkSpec& spec) {
  const int d = spec.dimension();
  if (d == 0) throw std::invalid_argument("empty network");
  RateHeader header;
  header.ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) {
    const double ratio = spec.supply_shape(i) / std::sqrt(spec.demand_cov(i, i));
    if (ratio < header.ratio) {
      header.ratio = ratio;
      header.critical_node = i;
    }
  }
  header.rate = 0.5 * header.ratio * header.ratio;
  return header;
}

ProbabilityBounds probability_sandwich(const GaussianModel& model,
                                       const ScaledInstance& instance) {
  ProbabilityBounds bounds;
  double upper = 0.0;
  for (int i = 0; i < instance.dimension(); ++i) {
    const double sd = model.marginal_sd(i);
    const double gap = instance.supply(i) - model.mean(i);
    bounds.lower =
        std::max(bounds.lower, normal_sf((gap + instance.threshold) / sd));
    upper += normal_sf(gap / sd);
  }
  bounds.upper = std::min(1.0, upper);
  return bounds;
}

RateReport rate_sweep(const NetworkSpec& spec, std::span<const double> n_values,
                      const ThresholdRule& rule, const EstimatorConfig& config) {
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (!(n_values[i] > n_values[i - 1])) {
      throw std::invalid_argument("rate sweep needs increasing n values");
    }
  }
  RateReport report;
  report.header = ld_rate(spec);
  report.exponent = spec.supply_exponent;
  const GaussianModel model = GaussianModel::from_network(spec);
  for (double n : n_values) {
    const ScaledInstance instance = scale_instance(spec, n, rule);
    RateRow row;
    row.n = n;
    row.k = instance.threshold;
    row.stats = run_estimator(model, instance, config);
    row.estimable = !row.stats.degenerate;
    if (row.estimable) {
      const double scale = std::pow(n, -2.0 * spec.supply_exponent);
      row.scaled_log = scale * std::log(row.stats.mean);
      row.scaled_log_se = scale * row.stats.rse;
      row.discrepancy = std::abs(row.scaled_log + report.header.rate);
    }
    report.rows.push_back(row);
  }
  return report;
}

void write_rate_csv(std::ostream& out, const RateReport& report) {
  auto fmt = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  out << "n,alpha_hat,scaled_log,neg_rate\n";
  for (const auto& row : report.rows) {
    out << fmt(row.n) << ',' << fmt(row.stats.mean) << ','
        << (row.estimable ? fmt(row.scaled_log) : std::string("NaN")) << ','
        << fmt(-report.header.rate) << '\n';
  }
}

}  // namespace netfail
