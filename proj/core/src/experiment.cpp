#include "netfail/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "netfail/gaussian.hpp"

namespace netfail {

namespace {

NetworkSpec make_network(IncidenceMatrix incidence, Vector gamma, Vector mu,
                         Matrix sigma, double beta) {
  NetworkSpec spec;
  spec.routing = default_routing(incidence);
  spec.incidence = std::move(incidence);
  spec.supply_shape = std::move(gamma);
  spec.demand_mean = std::move(mu);
  spec.demand_cov = std::move(sigma);
  spec.supply_exponent = beta;
  return spec;
}

ExperimentConfig example1() {
  IncidenceMatrix h(3, 3);
  h << 0, 1, 0,
       1, 0, 1,
       0, 1, 0;
  Vector gamma(3), mu(3);
  gamma << 3, 1, 13;
  mu << 1, 1, 2;
  Matrix sigma(3, 3);
  sigma << 1.0, 0.5, 0.1,
           0.5, 1.0, 0.5,
           0.1, 0.5, 1.0;
  ExperimentConfig config;
  config.name = "example1";
  config.network = make_network(h, gamma, mu, sigma, 1.0);
  config.n_values = {1.5, 2.5, 3.2, 3.9, 4.5, 4.9};
  config.threshold = ThresholdRule::constant(1.0);
  return config;
}

ExperimentConfig example2() {
  IncidenceMatrix h = IncidenceMatrix::Zero(10, 10);
  const int edges[][2] = {{1, 2}, {1, 3}, {2, 1}, {3, 4}, {3, 8},
                          {4, 5}, {4, 7}, {5, 6}, {6, 7}, {7, 8},
                          {8, 9}, {9, 10}, {10, 1}};
  for (const auto& e : edges) h(e[0] - 1, e[1] - 1) = 1;
  Vector gamma(10), mu(10);
  gamma << 3, 5, 3, 3, 3, 3, 3, 3, 3, 15;
  mu << 1, 5, 1, 1, 1, 1, 1, 1, 1, 1;
  Matrix sigma(10, 10);
  sigma << 0.5, 0.3, 0.3, 0.25, 0.2, 0.15, 0.2, 0.25, 0.2, 0.15,
           0.3, 0.5, 0.25, 0.2, 0.15, 0.1, 0.15, 0.2, 0.15, 0.1,
           0.3, 0.25, 0.5, 0.3, 0.25, 0.2, 0.25, 0.3, 0.25, 0.2,
           0.25, 0.2, 0.3, 0.5, 0.3, 0.25, 0.3, 0.25, 0.2, 0.15,
           0.2, 0.15, 0.25, 0.3, 0.5, 0.3, 0.25, 0.2, 0.15, 0.1,
           0.15, 0.1, 0.2, 0.25, 0.3, 0.5, 0.3, 0.25, 0.2, 0.15,
           0.2, 0.15, 0.25, 0.3, 0.25, 0.3, 0.5, 0.3, 0.25, 0.2,
           0.25, 0.2, 0.3, 0.25, 0.2, 0.25, 0.3, 0.5, 0.3, 0.25,
           0.2, 0.15, 0.25, 0.2, 0.15, 0.2, 0.25, 0.3, 0.5, 0.3,
           0.15, 0.1, 0.2, 0.15, 0.1, 0.15, 0.2, 0.25, 0.3, 0.5;
  ExperimentConfig config;
  config.name = "example2";
  config.network = make_network(h, gamma, mu, sigma, 1.0);
  config.n_values = {1.0, 1.3, 1.5, 1.6, 1.7, 1.8};
  config.threshold = ThresholdRule::constant(2.0);
  return config;
}

ExperimentConfig example3() {
  constexpr int d = 30;
  IncidenceMatrix h = IncidenceMatrix::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) h(i, i + 1) = 1;
  h(d - 1, 0) = 1;
  Matrix sigma = Matrix::Constant(d, d, 0.4);
  sigma.diagonal().setOnes();
  ExperimentConfig config;
  config.name = "example3";
  config.network = make_network(h, Vector::Constant(d, 2.0),
                                Vector::Constant(d, 1.0), sigma, 1.0);
  config.n_values = {1.20, 1.50, 1.70, 1.95, 2.05, 2.16};
  config.threshold = ThresholdRule::power(20.0, 0.5);
  return config;
}

std::string format_csv_free(double x) {
  if (std::isnan(x)) return "NaN";
  std::ostringstream out;
  out << x;
  return out.str();
}

}  // namespace

void ExperimentConfig::check() const {
  const ValidationReport report = validate_network(network);
  if (!report.ok()) {
    throw std::invalid_argument("invalid network: " + report.summary());
  }
  if (n_values.empty()) throw std::invalid_argument("no n values given");
  for (double n : n_values) {
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw std::invalid_argument("n values must be positive");
    }
  }
  if (methods.empty()) throw std::invalid_argument("no methods given");
  if (threshold.coefficient < 0.0 || threshold.exponent < 0.0) {
    throw std::invalid_argument("threshold rule needs c >= 0 and p >= 0");
  }
  estimator(methods.front()).check();
}

EstimatorConfig ExperimentConfig::estimator(Method method) const {
  EstimatorConfig config;
  config.method = method;
  config.replications = replications;
  config.seed = seed;
  config.confidence = confidence;
  config.threads = threads;
  return config;
}

std::vector<std::string> preset_names() {
  return {"example1", "example2", "example3"};
}

ExperimentConfig preset(std::string_view name) {
  ExperimentConfig config;
  if (name == "example1") {
    config = example1();
  } else if (name == "example2") {
    config = example2();
  } else if (name == "example3") {
    config = example3();
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (expected example1, example2, example3)");
  }
  config.methods = {Method::Naive, Method::ImportanceSampling,
                    Method::ConditionalMC};
  config.replications = 100000;
  return config;
}

std::vector<ComparisonRow> run_experiment(const ExperimentConfig& config,
                                          const ProgressCallback& progress) {
  config.check();
  const GaussianModel model = GaussianModel::from_network(config.network);
  std::vector<ComparisonRow> rows;
  for (double n : config.n_values) {
    const ScaledInstance instance =
        scale_instance(config.network, n, config.threshold);
    for (Method method : config.methods) {
      const RunStats stats =
          run_estimator(model, instance, config.estimator(method));
      rows.push_back({method, n, instance.threshold, stats});
      if (progress) progress(rows.back());
    }
  }
  return rows;
}

std::string format_significant(double value, int digits) {
  if (std::isnan(value)) return "NaN";
  if (value == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
  return buf;
}

void write_results(std::ostream& out, const std::vector<ComparisonRow>& rows,
                   OutputFormat format, bool timing) {
  if (format == OutputFormat::Csv) {
    write_csv_header(out);
    for (const auto& row : rows) write_csv_row(out, row, timing);
    return;
  }
  out << std::left << std::setw(7) << "method" << std::setw(8) << "n"
      << std::setw(10) << "k" << std::setw(11) << "alpha" << std::setw(11)
      << "RSE" << std::setw(11) << "CI+-" << std::setw(11) << "CT(s)"
      << std::setw(11) << "RSE2xCT" << "hits\n";
  for (const auto& row : rows) {
    const auto& s = row.stats;
    out << std::left << std::setw(7) << method_name(row.method) << std::setw(8)
        << format_csv_free(row.n) << std::setw(10)
        << format_significant(row.k, 4) << std::setw(11)
        << format_significant(s.mean) << std::setw(11)
        << format_significant(s.rse) << std::setw(11)
        << format_significant(s.ci_halfwidth) << std::setw(11)
        << (timing ? format_significant(s.ct_seconds) : std::string("NA"))
        << std::setw(11)
        << (timing ? format_significant(s.rse2ct) : std::string("NA"))
        << s.hits << '\n';
  }
}

}  // namespace netfail
