#include "netfail/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netfail/special.hpp"

namespace netfail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double RadialFailureSet::probability(int d) const {
  if (always_fails) return 1.0;
  const double tail = chi_survival(d, outer);
  const double head = inner > 0.0 ? chi_cdf(d, inner) : 0.0;
  return std::min(1.0, head + tail);
}

RadialRootFinder::RadialRootFinder(const GaussianModel& model,
                                   const ScaledInstance& instance,
                                   RadialOptions options, SimplexOptions lp)
    : model_(&model),
      instance_(&instance),
      options_(options),
      evaluator_(instance, lp),
      cap_(chi_radius_for_survival(instance.dimension(), options.cap_survival)),
      threshold_(instance.threshold),
      direction_(instance.dimension()),
      demand_(instance.dimension()),
      infeasibility_tol_(1e-12 *
                         std::max(1.0, std::abs(instance.supply.sum()))) {
  if (model.dimension() != instance.dimension()) {
    throw std::invalid_argument("model/instance dimension mismatch");
  }
  sum_intercept_ = (model.mean - instance.supply).sum();
}

void RadialRootFinder::prepare(const Vector& psi) {
  if (psi.size() != direction_.size()) {
    throw std::invalid_argument("direction has wrong dimension");
  }
  direction_.noalias() = model_->factor.triangularView<Eigen::Lower>() * psi;
  sum_slope_ = direction_.sum();
}

Shortfall RadialRootFinder::phi(double r) {
  demand_ = model_->mean + r * direction_;
  return evaluator_.evaluate(demand_);
}

RadialRootFinder::Probe RadialRootFinder::probe(double r) {
  const Shortfall value = phi(r);
  if (value.is_infinite()) return {true, true, kInf, 0.0};
  const double slope = evaluator_.last_vertex().dot(direction_);
  return {value.exceeds(threshold_), false, value.value(), slope};
}

// `failing` has phi > k, `safe` has phi <= k; returns the crossing between.
double RadialRootFinder::boundary(double failing, double safe) {
  const double side = failing > safe ? 1.0 : -1.0;
  Probe at = probe(failing);
  if (at.infinite) {
    // Jump onto the edge of the feasible region first; phi is finite there.
    if (sum_slope_ == 0.0) return failing;
    const double edge = (infeasibility_tol_ - sum_intercept_) / sum_slope_;
    if ((edge - safe) * side <= 0.0 || (failing - edge) * side < 0.0) {
      return failing;
    }
    at = probe(edge);
    if (!at.fails) return edge;
    failing = edge;
  }
  for (int it = 0; it < options_.max_iterations; ++it) {
    double next = failing;
    if (at.slope * side > 0.0) {
      next = failing - (at.value - threshold_) / at.slope;
    }
    const bool newton_ok = (next - safe) * side >= 0.0 &&
                           (failing - next) * side > 0.0 && std::isfinite(next);
    if (!newton_ok) next = 0.5 * (failing + safe);
    const double step = std::abs(failing - next);
    const Probe trial = probe(next);
    if (!trial.fails) {
      if (newton_ok) return next;  // supporting line guarantees phi(next) >= k
      safe = next;
    } else {
      failing = next;
      at = trial;
      if (at.infinite) return boundary(failing, safe);
    }
    if (step <= options_.tolerance * (1.0 + std::abs(next))) return failing;
  }
  return failing;
}

double RadialRootFinder::outer_root(double safe) {
  double r = safe > 0.0 ? 2.0 * safe : 1.0;
  for (int it = 0; it < options_.max_iterations; ++it) {
    bool last = false;
    if (r >= cap_) {
      r = cap_;
      last = true;
    }
    const Probe at = probe(r);
    if (at.fails) return boundary(r, safe);
    if (last) return kInf;
    safe = r;
    if (threshold_ - at.value <= 1e-12 * (1.0 + threshold_) && at.slope > 0.0) {
      return r;
    }
    // The active piece bounds phi from below, so it reaching k gives a
    // radius at which phi >= k.
    double next = at.slope > 0.0 ? r + (threshold_ - at.value) / at.slope
                                 : 2.0 * r;
    if (sum_slope_ > 0.0) {
      const double edge = (infeasibility_tol_ - sum_intercept_) / sum_slope_;
      if (edge > r) next = std::min(next, edge * (1.0 + 1e-12) + 1e-300);
    }
    r = std::max(next, r * (1.0 + 1e-12));
  }
  return kInf;
}

// Golden-section minimization of the convex phi over the feasible segment
// of [0, cap]. Returns true with `safe` set when some R has phi <= k.
bool RadialRootFinder::find_safe_point(double& safe) {
  double lo = 0.0;
  double hi = cap_;
  // Feasible R satisfy sum_intercept + R * sum_slope <= tol.
  if (sum_slope_ > 0.0) {
    hi = std::min(hi, (infeasibility_tol_ - sum_intercept_) / sum_slope_);
  } else if (sum_slope_ < 0.0) {
    lo = std::max(lo, (infeasibility_tol_ - sum_intercept_) / sum_slope_);
  } else if (sum_intercept_ > infeasibility_tol_) {
    return false;
  }
  if (lo > hi) return false;
  auto value = [&](double r) {
    const Probe p = probe(r);
    return p.infinite ? kInf : p.value;
  };
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = value(c), fd = value(d);
  for (int it = 0; it < 200 && b - a > 1e-12 * (1.0 + b); ++it) {
    if (fc <= threshold_) {
      safe = c;
      return true;
    }
    if (fd <= threshold_) {
      safe = d;
      return true;
    }
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = value(d);
    }
  }
  for (double r : {lo, hi, 0.5 * (a + b)}) {
    if (value(r) <= threshold_) {
      safe = r;
      return true;
    }
  }
  return false;
}

RadialFailureSet RadialRootFinder::failure_set(const Vector& psi) {
  prepare(psi);
  RadialFailureSet set;
  const Probe origin = probe(0.0);
  if (!origin.fails) {
    set.outer = outer_root(0.0);
    return set;
  }
  // Mean demand already fails: the safe radii form an interval away from 0.
  double safe = 0.0;
  if (!find_safe_point(safe)) {
    set.always_fails = true;
    set.outer = 0.0;
    return set;
  }
  set.inner = boundary(0.0, safe);
  set.outer = outer_root(safe);
  return set;
}

}  // namespace netfail
