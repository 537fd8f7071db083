#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "netfail/harness.hpp"
#include "netfail/network.hpp"

namespace netfail {

enum class OutputFormat { Table, Csv };

// One experiment grid: every (n, method) pair is estimated on `network`.
struct ExperimentConfig {
  std::string name;
  NetworkSpec network;
  std::vector<double> n_values;
  ThresholdRule threshold;
  std::vector<Method> methods;
  std::size_t replications = 100000;
  std::uint64_t seed = 42;
  double confidence = 0.95;
  unsigned threads = 0;
  OutputFormat format = OutputFormat::Table;
  std::string output_path;  // empty: standard output
  bool timing = true;

  // Throws std::invalid_argument describing the first problem found,
  // including network validation failures.
  void check() const;
  EstimatorConfig estimator(Method method) const;
};

std::vector<std::string> preset_names();

// The three reference networks (3, 10 and 30 nodes) with their n grids.
// Throws std::invalid_argument for an unknown name.
ExperimentConfig preset(std::string_view name);

using ProgressCallback = std::function<void(const ComparisonRow&)>;

// Rows ordered by n, then by the configured method order.
std::vector<ComparisonRow> run_experiment(const ExperimentConfig& config,
                                          const ProgressCallback& progress = {});

void write_results(std::ostream& out, const std::vector<ComparisonRow>& rows,
                   OutputFormat format, bool timing);

// Three significant digits by default; 0 prints as "0".
std::string format_significant(double value, int digits = 3);

}  // namespace netfail
