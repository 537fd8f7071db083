#pragma once

#include <vector>

#include "netfail/lp.hpp"
#include "netfail/network.hpp"

namespace netfail {

// Primal: minimize 1'x+ subject to (A' - I) x+ + x- = s - D, x+, x- >= 0.
// Variables are ordered (x+_1..x+_d, x-_1..x-_d).
LpProblem build_primal(const ScaledInstance& instance, const Vector& demand);

// Primal with shed-demand costs `weights` (> 0) in place of the unit costs.
LpProblem build_primal(const ScaledInstance& instance, const Vector& demand,
                       const Vector& weights);

// Dual: maximize y'(D - s) subject to (I - A) y <= 1, y >= 0.
LpProblem build_dual(const ScaledInstance& instance, const Vector& demand);

// Equilibrium shortfall cost L(D) on the extended half-line [0, +inf].
// The infinite value is a tag, never an IEEE infinity in arithmetic.
class Shortfall {
 public:
  static Shortfall finite(double value) { return Shortfall(false, value); }
  static Shortfall infeasible_primal() { return Shortfall(true, 0.0); }

  bool is_infinite() const { return infinite_; }
  // Only meaningful when !is_infinite().
  double value() const { return value_; }
  // L(D) > k, with +inf exceeding every finite k.
  bool exceeds(double k) const { return infinite_ || value_ > k; }

 private:
  Shortfall(bool infinite, double value) : infinite_(infinite), value_(value) {}

  bool infinite_;
  double value_;
};

// True when sum(D) exceeds sum(s) beyond 1e-12 * max(1, |sum(s)|), i.e. the
// primal has no feasible allocation.
bool primal_infeasible(const ScaledInstance& instance, const Vector& demand);

// Reusable evaluator for one instance: caches the dual LP and the solver
// workspace. One per thread.
class ShortfallEvaluator {
 public:
  explicit ShortfallEvaluator(const ScaledInstance& instance,
                              SimplexOptions options = {});

  Shortfall evaluate(const Vector& demand);

  // Optimal dual vertex of the last finite evaluation (zero when no node
  // was short of supply).
  const Vector& last_vertex() const { return vertex_; }
  int lp_solves() const { return lp_solves_; }

 private:
  const ScaledInstance* instance_;
  double supply_total_;
  double infeasibility_tol_;
  LpProblem dual_;
  SimplexSolver solver_;
  Vector vertex_;
  int lp_solves_ = 0;
};

Shortfall shortfall_cost(const ScaledInstance& instance, const Vector& demand);

// Equilibrium allocation (x+, x-) read off the dual LP: x+ are the dual
// row multipliers and x- = (I - A') x+ - (D - s).
struct Allocation {
  Vector shed;    // x+
  Vector unused;  // x-
  double cost = 0.0;
};

// Throws std::domain_error when the primal is infeasible.
Allocation equilibrium_allocation(const ScaledInstance& instance,
                                  const Vector& demand,
                                  const SimplexOptions& options = {});

inline constexpr int kMaxVertexEnumerationDimension = 8;

// All extreme points of {y : (I - A) y <= 1, y >= 0}, from every d-subset
// of the 2d constraints taken as active. Includes the origin. Throws
// std::invalid_argument for d > kMaxVertexEnumerationDimension.
std::vector<Vector> enumerate_dual_vertices(const ScaledInstance& instance);

}  // namespace netfail
