#pragma once

#include <vector>

#include "netfail/gaussian.hpp"

namespace netfail {

enum class ConditionalStrategy { Auto, RejectionOnly, GibbsOnly };
enum class SamplePath { Rejection, Gibbs };

struct ConditionalSamplerOptions {
  int batch = 64;
  int max_proposals = 1024;
  int burn_in = 100;
  int thinning = 1;
  ConditionalStrategy strategy = ConditionalStrategy::Auto;
};

// Gibbs chain targeting N(mean, cov) restricted to {x_node > lower}.
// Coordinate `node` is drawn from its truncated full conditional, the rest
// from untruncated full conditionals.
class TruncatedGibbsChain {
 public:
  TruncatedGibbsChain(const GaussianModel& model, int node, double lower,
                      int burn_in, int thinning, RngStream& rng);

  const Vector& state() const { return state_; }
  // Advances `thinning` sweeps and returns the new state.
  const Vector& next(RngStream& rng);

 private:
  void sweep(RngStream& rng);

  const GaussianModel* model_;
  int node_;
  double lower_;
  int thinning_;
  Vector state_;
};

// Draws D ~ N(mu, Sigma) conditioned on D_node > supply_node.
//
// Rejection first: proposals of D_node from its marginal, in batches,
// until one exceeds the supply or the proposal cap is hit; an accepted
// coordinate is completed to a full vector with the exact Gaussian
// conditional of the other coordinates, which is the same law as rejecting
// whole unconditioned vectors. If the cap is hit, a fresh Gibbs chain is
// burned in and its state returned.
class ConditionalDemandSampler {
 public:
  ConditionalDemandSampler(const GaussianModel& model, Vector supply,
                           ConditionalSamplerOptions options = {});

  SamplePath sample(int node, RngStream& rng, Vector& out);

  const ConditionalSamplerOptions& options() const { return options_; }

 private:
  bool try_rejection(int node, RngStream& rng, Vector& out);
  void complete_from_coordinate(int node, double value, RngStream& rng,
                                Vector& out);

  const GaussianModel* model_;
  Vector supply_;
  ConditionalSamplerOptions options_;
  Vector z_;
  Vector draw_;
  std::vector<double> batch_;
};

}  // namespace netfail
