#pragma once

#include <stdexcept>
#include <vector>

#include "netfail/types.hpp"

namespace netfail {

enum class Objective { Minimize, Maximize };
enum class RowSense { Equal, LessEqual };

// Dense LP: optimize cost'x subject to rows of `constraints` compared with
// `rhs` under `row_senses`, and x >= 0.
struct LpProblem {
  Objective sense = Objective::Minimize;
  Vector cost;
  Matrix constraints;
  std::vector<RowSense> row_senses;
  Vector rhs;

  int variables() const { return static_cast<int>(cost.size()); }
  int rows() const { return static_cast<int>(rhs.size()); }
  // Throws std::invalid_argument on inconsistent dimensions or non-finite
  // entries.
  void check() const;
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;  // defined when Optimal
  Vector x;                // primal values of the original variables
  // Row multipliers in the sign convention of the original objective sense
  // (for Maximize with <= rows they are nonnegative).
  Vector duals;
  // Improving direction of the original variables when Unbounded.
  Vector ray;
  // Phase-1 optimum (sum of artificials) when Infeasible, with its row
  // multipliers as the certificate.
  double infeasibility = 0.0;
  Vector farkas;
  // Basic column per row; columns >= variables() are slacks/artificials.
  std::vector<int> basis;
  int iterations = 0;
};

enum class PivotRule { Dantzig, Bland };

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-8;
  PivotRule rule = PivotRule::Dantzig;
  // Consecutive degenerate pivots before switching to Bland's rule;
  // 0 means 10 * rows.
  int bland_after_degenerate = 0;
  // 0 means 50 * (rows + columns) + 1000.
  int max_iterations = 0;
  bool compute_duals = true;
};

class LpNumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense two-phase tableau simplex. Holds its tableau as reusable
// workspace: one solver per thread.
class SimplexSolver {
 public:
  explicit SimplexSolver(SimplexOptions options = {}) : options_(options) {}

  LpSolution solve(const LpProblem& problem);

  const SimplexOptions& options() const { return options_; }
  SimplexOptions& options() { return options_; }

 private:
  using Tableau =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  enum class IterateResult { Optimal, Unbounded };

  IterateResult iterate(int allowed_columns, int& iterations, int& entering);
  void pivot(int row, int col);
  void price_out(const Vector& column_costs);

  SimplexOptions options_;
  Tableau tableau_;
  std::vector<int> basis_;
  std::vector<int> row_origin_;  // initial basic column of each row
  std::vector<double> row_sign_;
  // Row and original-scale coefficient of each slack/artificial column.
  std::vector<int> aux_row_;
  std::vector<double> aux_coef_;
};

LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& options = {});

}  // namespace netfail
