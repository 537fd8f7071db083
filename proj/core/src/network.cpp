#include "netfail/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "netfail/gaussian.hpp"

namespace netfail {

namespace {

void add(ValidationReport& report, ViolationKind kind, std::string message) {
  report.violations.push_back({kind, std::move(message)});
}

bool square_of(const auto& m, Eigen::Index d) {
  return m.rows() == d && m.cols() == d;
}

}  // namespace

bool ValidationReport::has(ViolationKind kind) const {
  for (const auto& v : violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i].message;
  }
  return out.str();
}

bool is_irreducible(const IncidenceMatrix& incidence) {
  const auto d = incidence.rows();
  if (d == 0 || incidence.cols() != d) return false;
  // Strongly connected iff node 0 reaches all nodes in the graph and in its
  // transpose.
  auto reaches_all = [&](bool transposed) {
    std::vector<char> seen(static_cast<std::size_t>(d), 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    Eigen::Index count = 1;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (Eigen::Index v = 0; v < d; ++v) {
        const int edge = transposed ? incidence(v, u) : incidence(u, v);
        if (edge != 0 && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == d;
  };
  return reaches_all(false) && reaches_all(true);
}

Matrix default_routing(const IncidenceMatrix& incidence) {
  const auto d = incidence.rows();
  if (incidence.cols() != d) {
    throw std::invalid_argument("incidence matrix must be square");
  }
  Matrix routing = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    int degree = 0;
    for (Eigen::Index j = 0; j < d; ++j) degree += incidence(i, j) != 0 ? 1 : 0;
    if (degree == 0) {
      throw std::invalid_argument("node " + std::to_string(i + 1) +
                                  " has no outgoing edge");
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      if (incidence(i, j) != 0) routing(i, j) = 1.0 / degree;
    }
  }
  return routing;
}

ValidationReport validate_network(const NetworkSpec& spec) {
  ValidationReport report;
  const Eigen::Index d = spec.supply_shape.size();

  if (d < 2) {
    add(report, ViolationKind::DimensionMismatch,
        "network needs at least 2 nodes");
    return report;
  }
  if (!square_of(spec.incidence, d) || !square_of(spec.routing, d) ||
      !square_of(spec.demand_cov, d) || spec.demand_mean.size() != d) {
    add(report, ViolationKind::DimensionMismatch,
        "dimension mismatch: expected " + std::to_string(d) + " nodes");
    return report;
  }

  if (!spec.supply_shape.allFinite() || !spec.demand_mean.allFinite() ||
      !spec.routing.allFinite() || !spec.demand_cov.allFinite() ||
      !std::isfinite(spec.supply_exponent)) {
    add(report, ViolationKind::NonFinite, "non-finite parameter");
    return report;
  }

  for (Eigen::Index i = 0; i < d; ++i) {
    if (spec.incidence(i, i) != 0) {
      add(report, ViolationKind::SelfLoop,
          "H(" + std::to_string(i + 1) + "," + std::to_string(i + 1) +
              ") must be 0");
      break;
    }
  }
  if (!is_irreducible(spec.incidence)) {
    add(report, ViolationKind::NotIrreducible, "incidence H is not irreducible");
  }

  bool support_ok = true;
  for (Eigen::Index i = 0; i < d && support_ok; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double a = spec.routing(i, j);
      const bool edge = spec.incidence(i, j) != 0 && i != j;
      if (a < 0.0 || a > 1.0 || (a > 0.0) != edge) {
        add(report, ViolationKind::RoutingSupport,
            "routing A(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                ") inconsistent with H");
        support_ok = false;
        break;
      }
    }
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    if (std::abs(spec.routing.row(i).sum() - 1.0) > kRoutingRowSumTolerance) {
      add(report, ViolationKind::RoutingRowSum,
          "routing row " + std::to_string(i + 1) + " does not sum to 1");
      break;
    }
  }

  const double asymmetry =
      (spec.demand_cov - spec.demand_cov.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-12 * std::max(1.0, spec.demand_cov.cwiseAbs().maxCoeff())) {
    add(report, ViolationKind::CovarianceNotSymmetric,
        "covariance is not symmetric");
  } else {
    try {
      (void)factorize(spec.demand_cov);
    } catch (const NotPositiveDefinite&) {
      add(report, ViolationKind::CovarianceNotPositiveDefinite,
          "covariance is not positive definite");
    }
  }

  if ((spec.supply_shape.array() <= 0.0).any()) {
    add(report, ViolationKind::NonPositiveSupplyShape,
        "supply shape gamma must be strictly positive");
  }
  if (!(spec.supply_exponent > 0.0)) {
    add(report, ViolationKind::NonPositiveExponent,
        "supply exponent beta must be positive");
  }
  return report;
}

double ThresholdRule::operator()(double n) const {
  if (exponent == 0.0) return coefficient;
  return coefficient * std::pow(n, exponent);
}

ScaledInstance scale_instance(const NetworkSpec& spec, double n,
                              const ThresholdRule& rule) {
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("rarity parameter n must be positive");
  }
  if (rule.exponent < 0.0) {
    throw std::invalid_argument("threshold exponent must be nonnegative");
  }
  ScaledInstance instance;
  instance.spec = spec;
  instance.rarity = n;
  const double scale = std::pow(n, spec.supply_exponent);
  instance.supply = scale * spec.supply_shape;
  instance.threshold = rule(n);
  if (!(instance.threshold >= 0.0)) {
    throw std::invalid_argument("threshold k must be nonnegative");
  }
  for (Eigen::Index i = 0; i < instance.supply.size(); ++i) {
    if (i < spec.demand_mean.size() && spec.demand_mean(i) > instance.supply(i)) {
      std::ostringstream msg;
      msg << "mean demand exceeds supply at node " << i + 1 << " ("
          << spec.demand_mean(i) << " > " << instance.supply(i) << ")";
      instance.warnings.push_back(msg.str());
    }
  }
  return instance;
}

}  // namespace netfail
