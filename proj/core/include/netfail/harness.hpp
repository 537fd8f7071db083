#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "netfail/estimators.hpp"

namespace netfail {

struct RunStats {
  std::size_t replications = 0;
  double mean = 0.0;      // alpha-hat
  double variance = 0.0;  // unbiased sample variance S^2
  double standard_error = 0.0;
  double rse = 0.0;       // S / (sqrt(N) * alpha-hat); NaN when degenerate
  double ci_halfwidth = 0.0;
  double ct_seconds = 0.0;
  double rse2ct = 0.0;    // NaN when degenerate
  std::size_t hits = 0;   // replications with a nonzero value
  bool degenerate = false;  // alpha-hat == 0

  double ci_lower() const { return mean - ci_halfwidth; }
  double ci_upper() const { return mean + ci_halfwidth; }
};

// Statistics of a finished set of replication values, reduced in index
// order with compensated summation.
RunStats summarize(std::span<const double> values, double confidence,
                   double ct_seconds = 0.0);

// Splits [0, count) into chunks and calls body(worker_slot, begin, end) on
// `threads` workers (0 = hardware concurrency).
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(unsigned, std::size_t, std::size_t)>&
                      body);

// N independent replications; replication i draws from stream
// stream_id(space, i), so results do not depend on the thread count.
RunStats run_estimator(const GaussianModel& model,
                       const ScaledInstance& instance,
                       const EstimatorConfig& config);

// Replication values themselves, in index order.
std::vector<double> run_replications(const GaussianModel& model,
                                     const ScaledInstance& instance,
                                     const EstimatorConfig& config,
                                     double* ct_seconds = nullptr);

struct ComparisonRow {
  Method method;
  double n = 0.0;
  double k = 0.0;
  RunStats stats;
};

std::vector<ComparisonRow> compare_methods(
    const GaussianModel& model, const ScaledInstance& instance,
    std::span<const EstimatorConfig> configs);

// method,n,k,N,alpha_hat,rse,ci_halfwidth,ct_seconds,rse2ct,hits
void write_csv_header(std::ostream& out);
// With `timing` false the ct_seconds and rse2ct fields are written as NA,
// making the output reproducible byte for byte.
void write_csv_row(std::ostream& out, const ComparisonRow& row,
                   bool timing = true);

}  // namespace netfail
