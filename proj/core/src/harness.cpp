#include "netfail/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "netfail/special.hpp"

namespace netfail {

namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

std::string format_double(double x) {
  if (std::isnan(x)) return "NaN";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

RunStats summarize(std::span<const double> values, double confidence,
                   double ct_seconds) {
  RunStats stats;
  stats.replications = values.size();
  stats.ct_seconds = ct_seconds;
  if (values.size() < 2) throw std::invalid_argument("need at least 2 values");
  CompensatedSum sum;
  for (double v : values) {
    sum.add(v);
    if (v != 0.0) ++stats.hits;
  }
  const double n = static_cast<double>(values.size());
  stats.mean = sum.value() / n;
  CompensatedSum squares;
  for (double v : values) {
    const double dev = v - stats.mean;
    squares.add(dev * dev);
  }
  stats.variance = std::max(0.0, squares.value() / (n - 1.0));
  stats.standard_error = std::sqrt(stats.variance / n);
  stats.ci_halfwidth =
      normal_quantile(1.0 - 0.5 * (1.0 - confidence)) * stats.standard_error;
  stats.degenerate = stats.mean == 0.0;
  if (stats.degenerate) {
    stats.rse = std::numeric_limits<double>::quiet_NaN();
    stats.rse2ct = std::numeric_limits<double>::quiet_NaN();
  } else {
    stats.rse = stats.standard_error / stats.mean;
    stats.rse2ct = stats.rse * stats.rse * ct_seconds;
  }
  return stats;
}

void parallel_for(
    std::size_t count, unsigned threads,
    const std::function<void(unsigned, std::size_t, std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    body(0, 0, count);
    return;
  }
  constexpr std::size_t kChunk = 512;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (;;) {
          const std::size_t begin = next.fetch_add(kChunk);
          if (begin >= count) break;
          body(t, begin, std::min(count, begin + kChunk));
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> run_replications(const GaussianModel& model,
                                     const ScaledInstance& instance,
                                     const EstimatorConfig& config,
                                     double* ct_seconds) {
  config.check();
  const std::uint64_t space = config.effective_stream_space();
  std::vector<double> values(config.replications, 0.0);
  unsigned threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, config.replications));

  // Kernels are built before the clock starts.
  std::vector<std::unique_ptr<ReplicationKernel>> kernels;
  kernels.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    kernels.push_back(
        std::make_unique<ReplicationKernel>(model, instance, config));
  }
  if (config.method == Method::ImportanceSampling) (void)kernels[0]->weights();

  const auto start = std::chrono::steady_clock::now();
  parallel_for(config.replications, threads,
               [&](unsigned slot, std::size_t begin, std::size_t end) {
                 ReplicationKernel& kernel = *kernels[slot];
                 for (std::size_t i = begin; i < end; ++i) {
                   RngStream rng(config.seed, stream_id(space, i));
                   values[i] = kernel.run(config.method, rng);
                 }
               });
  const auto stop = std::chrono::steady_clock::now();
  if (ct_seconds) {
    *ct_seconds = std::chrono::duration<double>(stop - start).count();
  }
  return values;
}

RunStats run_estimator(const GaussianModel& model,
                       const ScaledInstance& instance,
                       const EstimatorConfig& config) {
  double ct = 0.0;
  const auto values = run_replications(model, instance, config, &ct);
  return summarize(values, config.confidence, ct);
}

std::vector<ComparisonRow> compare_methods(
    const GaussianModel& model, const ScaledInstance& instance,
    std::span<const EstimatorConfig> configs) {
  if (configs.empty()) throw std::invalid_argument("no methods to compare");
  std::vector<ComparisonRow> rows;
  rows.reserve(configs.size());
  for (const auto& config : configs) {
    rows.push_back({config.method, instance.rarity, instance.threshold,
                    run_estimator(model, instance, config)});
  }
  return rows;
}

void write_csv_header(std::ostream& out) {
  out << "method,n,k,N,alpha_hat,rse,ci_halfwidth,ct_seconds,rse2ct,hits\n";
}

void write_csv_row(std::ostream& out, const ComparisonRow& row, bool timing) {
  const auto& s = row.stats;
  out << method_name(row.method) << ',' << format_double(row.n) << ','
      << format_double(row.k) << ',' << s.replications << ','
      << format_double(s.mean) << ',' << format_double(s.rse) << ','
      << format_double(s.ci_halfwidth) << ','
      << (timing ? format_double(s.ct_seconds) : "NA") << ','
      << (timing ? format_double(s.rse2ct) : "NA") << ',' << s.hits << '\n';
}

}  // namespace netfail
