#pragma once

#include "netfail/gaussian.hpp"
#include "netfail/shortfall.hpp"

namespace netfail {

struct RadialOptions {
  // Root accuracy: |step| <= tolerance * (1 + r).
  double tolerance = 1e-9;
  // The search stops at the radius whose chi survival drops below this.
  double cap_survival = 1e-300;
  int max_iterations = 200;
};

// Failure set of R along a fixed direction: {R < inner} U {R > outer}.
// Under mean demand <= supply the inner part is empty (inner == 0).
struct RadialFailureSet {
  double inner = 0.0;
  double outer = 0.0;
  bool always_fails = false;

  // P{R in failure set} for R chi-distributed with d degrees of freedom.
  double probability(int d) const;
};

// phi(R) = L(mu + R W psi) is convex and piecewise affine in R (a max of
// affine functions over dual vertices, +inf past the infeasibility point),
// so its sublevel set {phi <= k} is an interval. Boundaries are located with
// Newton steps taken from the failing side, where every supporting line of
// phi stays below phi and the iterate cannot overshoot the root.
class RadialRootFinder {
 public:
  RadialRootFinder(const GaussianModel& model, const ScaledInstance& instance,
                   RadialOptions options = {}, SimplexOptions lp = {});

  RadialFailureSet failure_set(const Vector& psi);

  // Smallest R >= 0 beyond which the network fails along psi; +inf when no
  // failure occurs before the search cap.
  double root(const Vector& psi) { return failure_set(psi).outer; }

  // phi(R) along the current direction (after failure_set/prepare).
  Shortfall phi(double r);
  void prepare(const Vector& psi);

  double cap() const { return cap_; }
  int lp_solves() const { return evaluator_.lp_solves(); }

 private:
  struct Probe {
    bool fails;
    bool infinite;
    double value;
    double slope;  // slope of the active affine piece
  };

  Probe probe(double r);
  double boundary(double failing, double safe);
  double outer_root(double safe);
  bool find_safe_point(double& safe);

  const GaussianModel* model_;
  const ScaledInstance* instance_;
  RadialOptions options_;
  ShortfallEvaluator evaluator_;
  double cap_;
  double threshold_;
  Vector direction_;  // W psi
  Vector demand_;
  double sum_intercept_ = 0.0;  // 1'(mu - s)
  double sum_slope_ = 0.0;      // 1'W psi
  double infeasibility_tol_ = 0.0;
};

}  // namespace netfail
