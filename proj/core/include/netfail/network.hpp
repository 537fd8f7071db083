#pragma once

#include <string>
#include <vector>

#include "netfail/types.hpp"

namespace netfail {

// Static description of a distribution network: who may push unserved demand
// to whom, in what proportions, how supply scales with the rarity parameter,
// and the Gaussian law of the demands.
struct NetworkSpec {
  IncidenceMatrix incidence;  // H, 0/1 with zero diagonal
  Matrix routing;             // A, row-stochastic, support(A) == support(H)
  Vector supply_shape;        // gamma, supplies are n^beta * gamma
  Vector demand_mean;         // mu
  Matrix demand_cov;          // Sigma
  double supply_exponent = 1.0;  // beta

  int dimension() const { return static_cast<int>(supply_shape.size()); }
};

enum class ViolationKind {
  DimensionMismatch,
  SelfLoop,
  NotIrreducible,
  RoutingSupport,
  RoutingRowSum,
  CovarianceNotSymmetric,
  CovarianceNotPositiveDefinite,
  NonPositiveSupplyShape,
  NonPositiveExponent,
  NonFinite,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string summary() const;
};

inline constexpr double kRoutingRowSumTolerance = 1e-12;

ValidationReport validate_network(const NetworkSpec& spec);

// Every node reaches every other node along directed edges of `incidence`.
bool is_irreducible(const IncidenceMatrix& incidence);

// Equal split of unserved demand among out-neighbours. Throws
// std::invalid_argument when a row of `incidence` has no edge.
Matrix default_routing(const IncidenceMatrix& incidence);

// k_n = coefficient * n^exponent. A constant threshold has exponent 0.
struct ThresholdRule {
  double coefficient = 0.0;
  double exponent = 0.0;

  static ThresholdRule constant(double k) { return {k, 0.0}; }
  static ThresholdRule power(double c, double p) { return {c, p}; }

  double operator()(double n) const;
  bool is_constant() const { return exponent == 0.0; }
};

// A network bound to a rarity parameter n: supplies s = n^beta * gamma and
// failure threshold k = k_rule(n).
struct ScaledInstance {
  NetworkSpec spec;
  double rarity = 1.0;
  Vector supply;
  double threshold = 0.0;
  // Advisory only, e.g. a mean demand above its supply.
  std::vector<std::string> warnings;

  int dimension() const { return spec.dimension(); }
};

// Throws std::invalid_argument for n <= 0 or a negative resulting threshold.
ScaledInstance scale_instance(const NetworkSpec& spec, double n,
                              const ThresholdRule& rule);

}  // namespace netfail
