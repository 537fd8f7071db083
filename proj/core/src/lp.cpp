#include "netfail/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace netfail {

void LpProblem::check() const {
  const auto n = cost.size();
  const auto m = rhs.size();
  if (constraints.rows() != m || constraints.cols() != n ||
      static_cast<Eigen::Index>(row_senses.size()) != m) {
    throw std::invalid_argument("LP dimensions are inconsistent");
  }
  if (n == 0) throw std::invalid_argument("LP has no variables");
  if (!cost.allFinite() || !rhs.allFinite() || !constraints.allFinite()) {
    throw std::invalid_argument("LP has non-finite entries");
  }
}

void SimplexSolver::pivot(int row, int col) {
  const auto last = tableau_.rows();
  const double p = tableau_(row, col);
  tableau_.row(row) /= p;
  for (Eigen::Index i = 0; i < last; ++i) {
    if (i == row) continue;
    const double f = tableau_(i, col);
    if (f != 0.0) tableau_.row(i) -= f * tableau_.row(row);
  }
  basis_[static_cast<std::size_t>(row)] = col;
}

void SimplexSolver::price_out(const Vector& column_costs) {
  const auto m = static_cast<Eigen::Index>(basis_.size());
  const auto cols = column_costs.size();
  auto objective = tableau_.row(m);
  objective.head(cols) = column_costs.transpose();
  objective(cols) = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double cb = column_costs(basis_[static_cast<std::size_t>(i)]);
    if (cb != 0.0) objective -= cb * tableau_.row(i);
  }
}

SimplexSolver::IterateResult SimplexSolver::iterate(int allowed_columns,
                                                    int& iterations,
                                                    int& entering) {
  const auto m = static_cast<int>(basis_.size());
  const auto rhs_col = tableau_.cols() - 1;
  const int degenerate_limit = options_.bland_after_degenerate > 0
                                   ? options_.bland_after_degenerate
                                   : 10 * std::max(m, 1);
  const int max_iterations =
      options_.max_iterations > 0
          ? options_.max_iterations
          : 50 * (m + static_cast<int>(rhs_col)) + 1000;
  double cost_scale = 1.0;
  for (int j = 0; j < allowed_columns; ++j) {
    cost_scale = std::max(cost_scale, std::abs(tableau_(m, j)));
  }
  const double optimality_tol = options_.pivot_tolerance * cost_scale;

  bool bland = options_.rule == PivotRule::Bland;
  int degenerate_run = 0;
  for (;;) {
    int e = -1;
    double best = -optimality_tol;
    for (int j = 0; j < allowed_columns; ++j) {
      const double rc = tableau_(m, j);
      if (rc < best) {
        e = j;
        if (bland) break;
        best = rc;
      }
    }
    if (e < 0) return IterateResult::Optimal;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double a = tableau_(i, e);
      if (a <= options_.pivot_tolerance) continue;
      const double ratio = std::max(tableau_(i, rhs_col), 0.0) / a;
      if (leave < 0 || ratio < best_ratio - 1e-12 * (1.0 + best_ratio)) {
        leave = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + 1e-12 * (1.0 + best_ratio)) {
        const bool prefer =
            bland ? basis_[static_cast<std::size_t>(i)] <
                        basis_[static_cast<std::size_t>(leave)]
                  : a > tableau_(leave, e);
        if (prefer) {
          leave = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
    }
    if (leave < 0) {
      entering = e;
      return IterateResult::Unbounded;
    }
    if (++iterations > max_iterations) {
      throw LpNumericalError("simplex iteration limit exceeded (" +
                             std::to_string(max_iterations) + ")");
    }
    if (best_ratio <= 1e-12) {
      if (++degenerate_run > degenerate_limit) bland = true;
    } else {
      degenerate_run = 0;
    }
    pivot(leave, e);
    for (int i = 0; i < m; ++i) {
      double& b = tableau_(i, rhs_col);
      if (b < 0.0 && b > -options_.feasibility_tolerance) b = 0.0;
    }
  }
}

LpSolution SimplexSolver::solve(const LpProblem& problem) {
  problem.check();
  const int n = problem.variables();
  const int m = problem.rows();
  const double objective_sign =
      problem.sense == Objective::Maximize ? -1.0 : 1.0;

  int slacks = 0;
  int artificials = 0;
  row_sign_.assign(static_cast<std::size_t>(m), 1.0);
  for (int i = 0; i < m; ++i) {
    const bool le = problem.row_senses[static_cast<std::size_t>(i)] ==
                    RowSense::LessEqual;
    if (problem.rhs(i) < 0.0) row_sign_[static_cast<std::size_t>(i)] = -1.0;
    if (le) ++slacks;
    if (!le || problem.rhs(i) < 0.0) ++artificials;
  }
  const int structural = n + slacks;
  const int cols = structural + artificials;

  tableau_.setZero(m + 1, cols + 1);
  basis_.assign(static_cast<std::size_t>(m), -1);
  row_origin_.assign(static_cast<std::size_t>(m), -1);
  aux_row_.assign(static_cast<std::size_t>(cols - n), 0);
  aux_coef_.assign(static_cast<std::size_t>(cols - n), 0.0);
  int next_slack = n;
  int next_art = structural;
  for (int i = 0; i < m; ++i) {
    const double sign = row_sign_[static_cast<std::size_t>(i)];
    tableau_.row(i).head(n) = sign * problem.constraints.row(i);
    tableau_(i, cols) = sign * problem.rhs(i);
    int origin;
    if (problem.row_senses[static_cast<std::size_t>(i)] == RowSense::LessEqual) {
      const int slack = next_slack++;
      tableau_(i, slack) = sign;
      aux_row_[static_cast<std::size_t>(slack - n)] = i;
      aux_coef_[static_cast<std::size_t>(slack - n)] = 1.0;
      if (sign > 0.0) {
        origin = slack;
      } else {
        origin = next_art++;
        tableau_(i, origin) = 1.0;
      }
    } else {
      origin = next_art++;
      tableau_(i, origin) = 1.0;
    }
    if (origin >= structural) {
      // In the unflipped row the artificial carries the row's sign.
      aux_row_[static_cast<std::size_t>(origin - n)] = i;
      aux_coef_[static_cast<std::size_t>(origin - n)] = sign;
    }
    basis_[static_cast<std::size_t>(i)] = origin;
    row_origin_[static_cast<std::size_t>(i)] = origin;
  }

  LpSolution solution;
  int iterations = 0;
  int entering = -1;

  auto row_multipliers = [&](const Vector& column_costs, double sense_sign) {
    Vector y(m);
    for (int i = 0; i < m; ++i) {
      const int origin = row_origin_[static_cast<std::size_t>(i)];
      const double transformed = column_costs(origin) - tableau_(m, origin);
      y(i) = sense_sign * row_sign_[static_cast<std::size_t>(i)] * transformed;
    }
    return y;
  };

  if (artificials > 0) {
    Vector phase1 = Vector::Zero(cols);
    phase1.tail(artificials).setOnes();
    price_out(phase1);
    iterate(cols, iterations, entering);
    const double infeasibility = -tableau_(m, cols);
    const double scale = std::max(1.0, problem.rhs.cwiseAbs().maxCoeff());
    if (infeasibility > options_.feasibility_tolerance * scale) {
      solution.status = LpStatus::Infeasible;
      solution.infeasibility = infeasibility;
      solution.farkas = row_multipliers(phase1, 1.0);
      solution.iterations = iterations;
      solution.basis = basis_;
      return solution;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < structural) continue;
      int best = -1;
      double magnitude = options_.pivot_tolerance;
      for (int j = 0; j < structural; ++j) {
        if (std::abs(tableau_(i, j)) > magnitude) {
          magnitude = std::abs(tableau_(i, j));
          best = j;
        }
      }
      if (best >= 0) pivot(i, best);
    }
  }

  Vector phase2 = Vector::Zero(cols);
  phase2.head(n) = objective_sign * problem.cost;
  price_out(phase2);
  const auto result = iterate(structural, iterations, entering);
  solution.iterations = iterations;
  solution.basis = basis_;

  if (result == IterateResult::Unbounded) {
    solution.status = LpStatus::Unbounded;
    solution.ray = Vector::Zero(n);
    if (entering < n) solution.ray(entering) = 1.0;
    for (int i = 0; i < m; ++i) {
      const int b = basis_[static_cast<std::size_t>(i)];
      if (b < n) solution.ray(b) = -tableau_(i, entering);
    }
    return solution;
  }

  auto extract = [&](const Vector& basic_values) {
    Vector x = Vector::Zero(n);
    for (int i = 0; i < m; ++i) {
      const int b = basis_[static_cast<std::size_t>(i)];
      if (b < n) x(b) = basic_values(i);
    }
    return x;
  };
  auto max_violation = [&](const Vector& x) {
    double worst = 0.0;
    const Vector lhs = problem.constraints * x;
    for (int i = 0; i < m; ++i) {
      const double slack = lhs(i) - problem.rhs(i);
      const double tol = std::max(1.0, std::abs(problem.rhs(i)));
      const double v =
          problem.row_senses[static_cast<std::size_t>(i)] == RowSense::Equal
              ? std::abs(slack)
              : std::max(slack, 0.0);
      worst = std::max(worst, v / tol);
    }
    return worst;
  };

  Vector x = extract(tableau_.col(cols).head(m));
  if (max_violation(x) > options_.feasibility_tolerance ||
      x.minCoeff() < -1e-10) {
    // Recompute the basic solution from the original columns.
    Matrix basis_matrix = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      const int b = basis_[static_cast<std::size_t>(i)];
      if (b < n) {
        basis_matrix.col(i) = problem.constraints.col(b);
      } else {
        const auto k = static_cast<std::size_t>(b - n);
        basis_matrix(aux_row_[k], i) = aux_coef_[k];
      }
    }
    const Vector basic = basis_matrix.partialPivLu().solve(problem.rhs);
    x = extract(basic);
    if (max_violation(x) > options_.feasibility_tolerance ||
        x.minCoeff() < -1e-10 || !x.allFinite()) {
      throw LpNumericalError("simplex solution failed feasibility check");
    }
  }
  x = x.cwiseMax(0.0);

  solution.status = LpStatus::Optimal;
  solution.x = std::move(x);
  solution.objective = problem.cost.dot(solution.x);
  if (options_.compute_duals) {
    solution.duals = row_multipliers(phase2, objective_sign);
  }
  return solution;
}

LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& options) {
  SimplexSolver solver(options);
  return solver.solve(problem);
}

}  // namespace netfail
