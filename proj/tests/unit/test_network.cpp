#include <gtest/gtest.h>

#include <random>

#include "netfail/experiment.hpp"
#include "netfail/network.hpp"
#include "oracles.hpp"

namespace netfail {
namespace {

NetworkSpec example1_by_hand() {
  NetworkSpec spec;
  spec.incidence.resize(3, 3);
  spec.incidence << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  spec.routing = default_routing(spec.incidence);
  spec.supply_shape = Vector{{3.0, 1.0, 13.0}};
  spec.demand_mean = Vector{{1.0, 1.0, 2.0}};
  spec.demand_cov.resize(3, 3);
  spec.demand_cov << 1, 0.5, 0.1, 0.5, 1, 0.5, 0.1, 0.5, 1;
  spec.supply_exponent = 1.0;
  return spec;
}

NetworkSpec two_node(const Matrix& cov) {
  NetworkSpec spec;
  spec.incidence.resize(2, 2);
  spec.incidence << 0, 1, 1, 0;
  spec.routing = default_routing(spec.incidence);
  spec.supply_shape = Vector::Ones(2);
  spec.demand_mean = Vector::Zero(2);
  spec.demand_cov = cov;
  return spec;
}

TEST(ValidateNetwork, ExampleOneIsValid) {
  ValidationReport report = validate_network(example1_by_hand());
  EXPECT_TRUE(report.ok()) << report.summary();
}

TEST(ValidateNetwork, EmptyGraphIsNotIrreducible) {
  NetworkSpec spec = example1_by_hand();
  spec.incidence.setZero();
  spec.routing.setZero();
  ValidationReport report = validate_network(spec);
  EXPECT_TRUE(report.has(ViolationKind::NotIrreducible));
  EXPECT_NE(report.summary().find("not irreducible"), std::string::npos);
}

TEST(ValidateNetwork, IndefiniteCovarianceRejected) {
  Matrix cov(2, 2);
  cov << 1, 1.5, 1.5, 1;
  ValidationReport report = validate_network(two_node(cov));
  EXPECT_TRUE(report.has(ViolationKind::CovarianceNotPositiveDefinite));
  EXPECT_NE(report.summary().find("not positive definite"), std::string::npos);
}

TEST(ValidateNetwork, AsymmetricCovarianceRejected) {
  Matrix cov(2, 2);
  cov << 1, 0.2, 0.3, 1;
  EXPECT_TRUE(validate_network(two_node(cov))
                  .has(ViolationKind::CovarianceNotSymmetric));
}

TEST(ValidateNetwork, DimensionMismatch) {
  NetworkSpec spec = example1_by_hand();
  spec.demand_mean = Vector::Zero(2);
  EXPECT_TRUE(validate_network(spec).has(ViolationKind::DimensionMismatch));
}

TEST(ValidateNetwork, RoutingRowSumChecked) {
  NetworkSpec spec = example1_by_hand();
  spec.routing(1, 0) = 0.6;  // row 1 now sums to 1.1
  EXPECT_TRUE(validate_network(spec).has(ViolationKind::RoutingRowSum));
}

TEST(ValidateNetwork, RoutingSupportMustMatchIncidence) {
  NetworkSpec spec = example1_by_hand();
  spec.routing(0, 2) = 0.5;
  spec.routing(0, 1) = 0.5;
  EXPECT_TRUE(validate_network(spec).has(ViolationKind::RoutingSupport));
}

TEST(ValidateNetwork, SelfLoopRejected) {
  NetworkSpec spec = example1_by_hand();
  spec.incidence(0, 0) = 1;
  EXPECT_TRUE(validate_network(spec).has(ViolationKind::SelfLoop));
}

TEST(ValidateNetwork, NonPositiveShapeAndExponent) {
  NetworkSpec spec = example1_by_hand();
  spec.supply_shape[1] = 0.0;
  spec.supply_exponent = 0.0;
  ValidationReport report = validate_network(spec);
  EXPECT_TRUE(report.has(ViolationKind::NonPositiveSupplyShape));
  EXPECT_TRUE(report.has(ViolationKind::NonPositiveExponent));
}

TEST(ValidateNetwork, NonFiniteRejected) {
  NetworkSpec spec = example1_by_hand();
  spec.demand_mean[0] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_TRUE(validate_network(spec).has(ViolationKind::NonFinite));
}

TEST(ValidateNetwork, OneWayPathIsReducible) {
  IncidenceMatrix h(3, 3);
  h << 0, 1, 0, 0, 0, 1, 0, 0, 0;
  EXPECT_FALSE(is_irreducible(h));
  h(2, 0) = 1;
  EXPECT_TRUE(is_irreducible(h));
}

TEST(ValidateNetwork, DeterministicAndPure) {
  NetworkSpec spec = example1_by_hand();
  spec.incidence.setZero();
  NetworkSpec copy = spec;
  std::string first = validate_network(spec).summary();
  EXPECT_EQ(first, validate_network(spec).summary());
  EXPECT_EQ(spec.incidence, copy.incidence);
}

TEST(DefaultRouting, EqualSplit) {
  IncidenceMatrix h(3, 3);
  h << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  Matrix a = default_routing(h);
  EXPECT_DOUBLE_EQ(a(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(a(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(a(1, 2), 0.5);
  EXPECT_DOUBLE_EQ(a(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(a(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(a(0, 2), 0.0);
}

TEST(DefaultRouting, RingOfThirty) {
  const int d = 30;
  IncidenceMatrix h = IncidenceMatrix::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) h(i, i + 1) = 1;
  h(d - 1, 0) = 1;
  Matrix a = default_routing(h);
  for (int i = 0; i + 1 < d; ++i) EXPECT_EQ(a(i, i + 1), 1.0);
  EXPECT_EQ(a(d - 1, 0), 1.0);
  EXPECT_EQ(a.sum(), static_cast<double>(d));
}

TEST(DefaultRouting, ZeroRowThrows) {
  IncidenceMatrix h = IncidenceMatrix::Zero(2, 2);
  h(0, 1) = 1;
  EXPECT_THROW(default_routing(h), std::invalid_argument);
}

TEST(DefaultRouting, PassesValidationOnRandomGraphs) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    NetworkSpec spec = testing::random_network(2 + trial % 6, gen);
    spec.routing = default_routing(spec.incidence);
    ValidationReport report = validate_network(spec);
    EXPECT_FALSE(report.has(ViolationKind::RoutingRowSum));
    EXPECT_FALSE(report.has(ViolationKind::RoutingSupport));
  }
}

TEST(ScaleInstance, ExampleOneSupplies) {
  ScaledInstance inst =
      scale_instance(example1_by_hand(), 1.5, ThresholdRule::constant(1.0));
  EXPECT_DOUBLE_EQ(inst.supply[0], 4.5);
  EXPECT_DOUBLE_EQ(inst.supply[1], 1.5);
  EXPECT_DOUBLE_EQ(inst.supply[2], 19.5);
  EXPECT_EQ(inst.threshold, 1.0);
  EXPECT_TRUE(inst.warnings.empty());
}

TEST(ScaleInstance, PowerRule) {
  ScaledInstance inst = scale_instance(example1_by_hand(), 4.0,
                                       ThresholdRule::power(20.0, 0.5));
  EXPECT_DOUBLE_EQ(inst.threshold, 40.0);
}

TEST(ScaleInstance, ZeroExponentKeepsShape) {
  NetworkSpec spec = example1_by_hand();
  spec.supply_exponent = 0.0;
  for (double n : {0.5, 2.0, 17.0}) {
    ScaledInstance inst = scale_instance(spec, n, ThresholdRule::constant(1.0));
    EXPECT_EQ(inst.supply, spec.supply_shape);
  }
}

TEST(ScaleInstance, WarnsWhenMeanExceedsSupply) {
  ScaledInstance inst =
      scale_instance(example1_by_hand(), 0.5, ThresholdRule::constant(1.0));
  EXPECT_FALSE(inst.warnings.empty());  // s_2 = 0.5 < mu_2 = 1
}

TEST(ScaleInstance, RejectsBadArguments) {
  NetworkSpec spec = example1_by_hand();
  EXPECT_THROW(scale_instance(spec, 0.0, ThresholdRule::constant(1.0)),
               std::invalid_argument);
  EXPECT_THROW(scale_instance(spec, -1.0, ThresholdRule::constant(1.0)),
               std::invalid_argument);
  EXPECT_THROW(scale_instance(spec, 2.0, ThresholdRule::constant(-1.0)),
               std::invalid_argument);
}

TEST(ScaleInstance, MonotoneInN) {
  NetworkSpec spec = example1_by_hand();
  Vector prev = scale_instance(spec, 0.1, ThresholdRule::constant(1.0)).supply;
  for (double n = 0.2; n < 6.0; n += 0.1) {
    Vector s = scale_instance(spec, n, ThresholdRule::constant(1.0)).supply;
    EXPECT_TRUE((s.array() > prev.array()).all());
    prev = s;
  }
}

TEST(Presets, ExampleOneMatchesReferenceParameters) {
  ExperimentConfig c = preset("example1");
  NetworkSpec ref = example1_by_hand();
  EXPECT_EQ(c.network.incidence, ref.incidence);
  EXPECT_EQ(c.network.supply_shape, ref.supply_shape);
  EXPECT_EQ(c.network.demand_mean, ref.demand_mean);
  EXPECT_EQ(c.network.demand_cov, ref.demand_cov);
  EXPECT_EQ(c.threshold(2.0), 1.0);
  EXPECT_EQ(c.n_values, (std::vector<double>{1.5, 2.5, 3.2, 3.9, 4.5, 4.9}));
  EXPECT_EQ(c.replications, 100000u);
}

TEST(Presets, ExampleTwoShape) {
  ExperimentConfig c = preset("example2");
  EXPECT_EQ(c.network.dimension(), 10);
  EXPECT_EQ(c.network.incidence.sum(), 13);
  EXPECT_EQ(c.threshold(1.7), 2.0);
  EXPECT_TRUE(validate_network(c.network).ok());
}

TEST(Presets, ExampleThreeRule) {
  ExperimentConfig c = preset("example3");
  EXPECT_EQ(c.network.dimension(), 30);
  EXPECT_DOUBLE_EQ(c.threshold(4.0), 40.0);
  EXPECT_DOUBLE_EQ(c.network.demand_cov(0, 1), 0.4);
  EXPECT_DOUBLE_EQ(c.network.demand_cov(5, 5), 1.0);
  EXPECT_TRUE(validate_network(c.network).ok());
}

TEST(Presets, UnknownNameThrows) {
  EXPECT_THROW(preset("example4"), std::invalid_argument);
}

}  // namespace
}  // namespace netfail
