#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "netfail/asymptotics.hpp"
#include "netfail/experiment.hpp"
#include "oracles.hpp"

namespace netfail {
namespace {

NetworkSpec permuted(const NetworkSpec& spec, const std::vector<int>& perm) {
  const int d = spec.dimension();
  NetworkSpec out = spec;
  for (int i = 0; i < d; ++i) {
    out.supply_shape[i] = spec.supply_shape[perm[i]];
    out.demand_mean[i] = spec.demand_mean[perm[i]];
    for (int j = 0; j < d; ++j) {
      out.incidence(i, j) = spec.incidence(perm[i], perm[j]);
      out.routing(i, j) = spec.routing(perm[i], perm[j]);
      out.demand_cov(i, j) = spec.demand_cov(perm[i], perm[j]);
    }
  }
  return out;
}

TEST(LdRate, ExampleOne) {
  RateHeader h = ld_rate(preset("example1").network);
  EXPECT_EQ(h.critical_node, 1);
  EXPECT_DOUBLE_EQ(h.ratio, 1.0);
  EXPECT_DOUBLE_EQ(h.rate, 0.5);
}

TEST(LdRate, ExampleThreeTiesGoToFirstNode) {
  RateHeader h = ld_rate(preset("example3").network);
  EXPECT_EQ(h.critical_node, 0);
  EXPECT_DOUBLE_EQ(h.rate, 2.0);
}

TEST(LdRate, ExampleTwoUsesMarginalSd) {
  RateHeader h = ld_rate(preset("example2").network);
  EXPECT_EQ(h.critical_node, 0);
  EXPECT_NEAR(h.ratio, 3.0 / std::sqrt(0.5), 1e-14);
  EXPECT_NEAR(h.rate, 9.0, 1e-12);
}

TEST(LdRate, QuadraticInSupplyShape) {
  NetworkSpec spec = preset("example1").network;
  double base = ld_rate(spec).rate;
  for (double c : {0.5, 2.0, 3.7}) {
    NetworkSpec scaled = spec;
    scaled.supply_shape *= c;
    EXPECT_NEAR(ld_rate(scaled).rate, c * c * base, 1e-12);
  }
}

TEST(LdRate, PermutationInvariant) {
  NetworkSpec spec = preset("example1").network;
  std::vector<int> perm = {2, 0, 1};  // new node i is old node perm[i]
  RateHeader a = ld_rate(spec), b = ld_rate(permuted(spec, perm));
  EXPECT_DOUBLE_EQ(a.rate, b.rate);
  EXPECT_EQ(perm[b.critical_node], a.critical_node);
}

TEST(Sandwich, ExampleOneAtOnePointFive) {
  ExperimentConfig c = preset("example1");
  GaussianModel m = GaussianModel::from_network(c.network);
  ProbabilityBounds b =
      probability_sandwich(m, scale_instance(c.network, 1.5, c.threshold));
  EXPECT_NEAR(b.lower, static_cast<double>(testing::normal_sf_oracle(1.5L)),
              1e-15);
  EXPECT_NEAR(b.lower, 0.0668, 1e-4);
  EXPECT_NEAR(b.upper, 0.308770, 1e-6);
}

TEST(Sandwich, ZeroThresholdAndLimits) {
  ExperimentConfig c = preset("example2");
  GaussianModel m = GaussianModel::from_network(c.network);
  ProbabilityBounds b = probability_sandwich(
      m, scale_instance(c.network, 1.3, ThresholdRule::constant(0.0)));
  EXPECT_LE(b.lower, b.upper);
  ProbabilityBounds far = probability_sandwich(
      m, scale_instance(c.network, 100.0, c.threshold));
  EXPECT_EQ(far.lower, 0.0);
  EXPECT_EQ(far.upper, 0.0);
  // The upper bound is capped at 1 when mean demand exceeds supply.
  ProbabilityBounds low = probability_sandwich(
      m, scale_instance(c.network, 0.1, c.threshold));
  EXPECT_EQ(low.upper, 1.0);
}

TEST(Sandwich, OrderedAndDecreasingAlongGrid) {
  for (const auto& name : preset_names()) {
    ExperimentConfig c = preset(name);
    GaussianModel m = GaussianModel::from_network(c.network);
    ProbabilityBounds prev{1.0, 1.0};
    for (double n : c.n_values) {
      ProbabilityBounds b =
          probability_sandwich(m, scale_instance(c.network, n, c.threshold));
      EXPECT_LE(b.lower, b.upper) << name << " n=" << n;
      EXPECT_LE(b.lower, prev.lower) << name << " n=" << n;
      EXPECT_LE(b.upper, prev.upper) << name << " n=" << n;
      prev = b;
    }
  }
}

TEST(RateSweep, TableOneArithmetic) {
  // The reference IS column itself shows the discrepancy shrinking.
  const double n[] = {1.5, 2.5, 3.2, 3.9, 4.5, 4.9};
  const double alpha[] = {6.76e-2, 6.19e-3, 6.92e-4, 4.82e-5, 3.39e-6, 4.80e-7};
  double prev = 1e9;
  for (int i = 0; i < 6; ++i) {
    double gap = std::abs(std::log(alpha[i]) / (n[i] * n[i]) + 0.5);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_NEAR(std::log(4.80e-7) / (4.9 * 4.9), -0.605, 1e-3);
}

TEST(RateSweep, RowsAndScaledLog) {
  ExperimentConfig c = preset("example1");
  EstimatorConfig est;
  est.method = Method::ConditionalMC;
  est.replications = 5000;
  est.threads = 1;
  std::vector<double> grid = {1.5, 3.2, 4.9};
  RateReport r = rate_sweep(c.network, grid, c.threshold, est);
  EXPECT_DOUBLE_EQ(r.header.rate, 0.5);
  EXPECT_EQ(r.exponent, 1.0);
  ASSERT_EQ(r.rows.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const RateRow& row = r.rows[i];
    EXPECT_EQ(row.n, grid[i]);
    EXPECT_EQ(row.k, 1.0);
    ASSERT_TRUE(row.estimable);
    EXPECT_NEAR(row.scaled_log, std::log(row.stats.mean) / (grid[i] * grid[i]),
                1e-12);
    EXPECT_NEAR(row.scaled_log_se, row.stats.rse / (grid[i] * grid[i]), 1e-12);
    EXPECT_NEAR(row.discrepancy, std::abs(row.scaled_log + 0.5), 1e-12);
  }
}

TEST(RateSweep, FlagsZeroEstimates) {
  ExperimentConfig c = preset("example1");
  EstimatorConfig est;
  est.method = Method::Naive;
  est.replications = 1000;
  est.threads = 1;
  std::vector<double> grid = {4.9};
  RateReport r = rate_sweep(c.network, grid, c.threshold, est);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_FALSE(r.rows[0].estimable);
  std::ostringstream out;
  write_rate_csv(out, r);
  EXPECT_EQ(out.str(), "n,alpha_hat,scaled_log,neg_rate\n4.9000000000000004,0,NaN,-0.5\n");
}

TEST(RateSweep, AcceptsGrowingThreshold) {
  ExperimentConfig c = preset("example3");
  EstimatorConfig est;
  est.method = Method::ImportanceSampling;
  est.replications = 2000;
  est.threads = 1;
  std::vector<double> grid = {1.2, 1.5};
  RateReport r = rate_sweep(c.network, grid, c.threshold, est);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_NEAR(r.rows[1].k, 20.0 * std::sqrt(1.5), 1e-12);
  EXPECT_TRUE(r.rows[0].estimable);
}

TEST(RateSweep, RejectsDecreasingGrid) {
  ExperimentConfig c = preset("example1");
  EstimatorConfig est;
  est.replications = 100;
  std::vector<double> grid = {2.0, 1.5};
  EXPECT_THROW(rate_sweep(c.network, grid, c.threshold, est),
               std::invalid_argument);
}

}  // namespace
}  // namespace netfail
