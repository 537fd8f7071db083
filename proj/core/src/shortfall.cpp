#include "netfail/shortfall.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netfail {

namespace {

void check_demand(const ScaledInstance& instance, const Vector& demand) {
  if (demand.size() != instance.dimension()) {
    throw std::invalid_argument("demand vector has wrong dimension");
  }
}

Matrix dual_constraints(const NetworkSpec& spec) {
  const auto d = spec.dimension();
  return Matrix::Identity(d, d) - spec.routing;
}

double infeasibility_tolerance(const Vector& supply) {
  return 1e-12 * std::max(1.0, std::abs(supply.sum()));
}

}  // namespace

LpProblem build_primal(const ScaledInstance& instance, const Vector& demand) {
  return build_primal(instance, demand,
                      Vector::Ones(instance.dimension()));
}

LpProblem build_primal(const ScaledInstance& instance, const Vector& demand,
                       const Vector& weights) {
  check_demand(instance, demand);
  const int d = instance.dimension();
  if (weights.size() != d) throw std::invalid_argument("weights dimension");
  LpProblem lp;
  lp.sense = Objective::Minimize;
  lp.cost = Vector::Zero(2 * d);
  lp.cost.head(d) = weights;
  lp.constraints.resize(d, 2 * d);
  lp.constraints.leftCols(d) =
      instance.spec.routing.transpose() - Matrix::Identity(d, d);
  lp.constraints.rightCols(d) = Matrix::Identity(d, d);
  lp.row_senses.assign(static_cast<std::size_t>(d), RowSense::Equal);
  lp.rhs = instance.supply - demand;
  return lp;
}

LpProblem build_dual(const ScaledInstance& instance, const Vector& demand) {
  check_demand(instance, demand);
  const int d = instance.dimension();
  LpProblem lp;
  lp.sense = Objective::Maximize;
  lp.cost = demand - instance.supply;
  lp.constraints = dual_constraints(instance.spec);
  lp.row_senses.assign(static_cast<std::size_t>(d), RowSense::LessEqual);
  lp.rhs = Vector::Ones(d);
  return lp;
}

bool primal_infeasible(const ScaledInstance& instance, const Vector& demand) {
  check_demand(instance, demand);
  return demand.sum() - instance.supply.sum() >
         infeasibility_tolerance(instance.supply);
}

ShortfallEvaluator::ShortfallEvaluator(const ScaledInstance& instance,
                                       SimplexOptions options)
    : instance_(&instance),
      supply_total_(instance.supply.sum()),
      infeasibility_tol_(infeasibility_tolerance(instance.supply)),
      dual_(build_dual(instance, instance.supply)),
      solver_([&] {
        options.compute_duals = false;
        return options;
      }()),
      vertex_(Vector::Zero(instance.dimension())) {}

Shortfall ShortfallEvaluator::evaluate(const Vector& demand) {
  check_demand(*instance_, demand);
  if (demand.sum() - supply_total_ > infeasibility_tol_) {
    return Shortfall::infeasible_primal();
  }
  dual_.cost = demand - instance_->supply;
  if ((dual_.cost.array() <= 0.0).all()) {
    // y = 0 is optimal when no node is short.
    vertex_.setZero();
    return Shortfall::finite(0.0);
  }
  ++lp_solves_;
  const LpSolution solution = solver_.solve(dual_);
  if (solution.status == LpStatus::Unbounded) {
    // Only reachable when 0 < sum(D - s) <= tolerance.
    return Shortfall::infeasible_primal();
  }
  if (solution.status != LpStatus::Optimal) {
    throw LpNumericalError("dual LP reported infeasible; y = 0 is feasible");
  }
  vertex_ = solution.x;
  return Shortfall::finite(std::max(solution.objective, 0.0));
}

Shortfall shortfall_cost(const ScaledInstance& instance, const Vector& demand) {
  ShortfallEvaluator evaluator(instance);
  return evaluator.evaluate(demand);
}

Allocation equilibrium_allocation(const ScaledInstance& instance,
                                  const Vector& demand,
                                  const SimplexOptions& options) {
  if (primal_infeasible(instance, demand)) {
    throw std::domain_error("total demand exceeds total supply");
  }
  SimplexOptions opts = options;
  opts.compute_duals = true;
  const LpProblem dual = build_dual(instance, demand);
  const LpSolution solution = solve_lp(dual, opts);
  if (solution.status != LpStatus::Optimal) {
    throw LpNumericalError("dual LP not optimal for a feasible primal");
  }
  Allocation allocation;
  allocation.shed = solution.duals.cwiseMax(0.0);
  allocation.unused =
      (dual.constraints.transpose() * allocation.shed - dual.cost).cwiseMax(0.0);
  allocation.cost = solution.objective;
  return allocation;
}

std::vector<Vector> enumerate_dual_vertices(const ScaledInstance& instance) {
  const int d = instance.dimension();
  if (d > kMaxVertexEnumerationDimension) {
    throw std::invalid_argument("vertex enumeration limited to d <= " +
                                std::to_string(kMaxVertexEnumerationDimension));
  }
  // Rows 0..d-1: (I - A) y <= 1; rows d..2d-1: -y <= 0.
  Matrix rows(2 * d, d);
  rows.topRows(d) = dual_constraints(instance.spec);
  rows.bottomRows(d) = -Matrix::Identity(d, d);
  Vector bounds(2 * d);
  bounds.head(d).setOnes();
  bounds.tail(d).setZero();

  std::vector<Vector> vertices;
  std::vector<int> active(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) active[static_cast<std::size_t>(i)] = i;
  Matrix system(d, d);
  Vector rhs(d);
  for (;;) {
    for (int r = 0; r < d; ++r) {
      system.row(r) = rows.row(active[static_cast<std::size_t>(r)]);
      rhs(r) = bounds(active[static_cast<std::size_t>(r)]);
    }
    Eigen::FullPivLU<Matrix> lu(system);
    if (lu.rank() == d) {
      const Vector y = lu.solve(rhs);
      const bool feasible = (rows * y - bounds).maxCoeff() <= 1e-9;
      if (feasible) {
        const bool seen = std::any_of(vertices.begin(), vertices.end(),
                                      [&](const Vector& v) {
                                        return (v - y).cwiseAbs().maxCoeff() <=
                                               1e-9;
                                      });
        if (!seen) vertices.push_back(y.cwiseMax(0.0));
      }
    }
    // Next d-subset of {0, ..., 2d-1} in lexicographic order.
    int pos = d - 1;
    while (pos >= 0 && active[static_cast<std::size_t>(pos)] == d + pos) --pos;
    if (pos < 0) break;
    ++active[static_cast<std::size_t>(pos)];
    for (int r = pos + 1; r < d; ++r) {
      active[static_cast<std::size_t>(r)] =
          active[static_cast<std::size_t>(r - 1)] + 1;
    }
  }
  return vertices;
}

}  // namespace netfail
