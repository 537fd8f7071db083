#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "netfail/harness.hpp"
#include "netfail/network.hpp"

namespace netfail {

// Large-deviations decay: log P{L > k_n} ~ -rate * n^(2 beta), driven by the
// node with the smallest supply-shape to demand-sd ratio.
struct RateHeader {
  int critical_node = 0;  // zero-based; ties go to the lowest index
  double ratio = 0.0;     // gamma / sigma at the critical node
  double rate = 0.0;      // ratio^2 / 2
};

RateHeader ld_rate(const NetworkSpec& spec);

struct ProbabilityBounds {
  double lower = 0.0;  // max_i P{D_i - s_i > k}
  double upper = 0.0;  // min(1, sum_i P{D_i - s_i > 0})
};

ProbabilityBounds probability_sandwich(const GaussianModel& model,
                                       const ScaledInstance& instance);

struct RateRow {
  double n = 0.0;
  double k = 0.0;
  RunStats stats;
  bool estimable = false;     // alpha-hat > 0
  double scaled_log = 0.0;    // n^(-2 beta) log alpha-hat
  double scaled_log_se = 0.0; // RSE * n^(-2 beta), delta method
  double discrepancy = 0.0;   // |scaled_log + rate|
};

struct RateReport {
  RateHeader header;
  double exponent = 1.0;  // beta
  std::vector<RateRow> rows;
};

// Estimates alpha at each n (increasing) with `config` and records the
// scaled log-probability next to -rate. Rows with alpha-hat == 0 are kept
// and flagged as not estimable.
RateReport rate_sweep(const NetworkSpec& spec, std::span<const double> n_values,
                      const ThresholdRule& rule, const EstimatorConfig& config);

// n,alpha_hat,scaled_log,neg_rate
void write_rate_csv(std::ostream& out, const RateReport& report);

}  // namespace netfail
