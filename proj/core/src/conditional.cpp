#include "netfail/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netfail {

TruncatedGibbsChain::TruncatedGibbsChain(const GaussianModel& model, int node,
                                         double lower, int burn_in,
                                         int thinning, RngStream& rng)
    : model_(&model), node_(node), lower_(lower), thinning_(thinning) {
  if (node < 0 || node >= model.dimension()) {
    throw std::out_of_range("Gibbs chain node index out of range");
  }
  if (burn_in < 0 || thinning < 1) {
    throw std::invalid_argument("Gibbs chain needs burn_in >= 0, thinning >= 1");
  }
  // Start at the truncated marginal draw with the other coordinates at their
  // regression means.
  const double sd = model.marginal_sd(node);
  const double x = sample_truncated_normal(model.mean(node), sd, lower, rng);
  state_ = model.mean +
           model.cov.col(node) * ((x - model.mean(node)) / (sd * sd));
  state_(node) = x;
  for (int i = 0; i < burn_in; ++i) sweep(rng);
}

void TruncatedGibbsChain::sweep(RngStream& rng) {
  const auto& mean = model_->mean;
  const auto& precision = model_->precision;
  const auto d = mean.size();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double qjj = precision(j, j);
    double shift = 0.0;
    for (Eigen::Index l = 0; l < d; ++l) {
      if (l != j) shift += precision(j, l) * (state_(l) - mean(l));
    }
    const double cond_mean = mean(j) - shift / qjj;
    const double cond_sd = 1.0 / std::sqrt(qjj);
    state_(j) = j == node_
                    ? sample_truncated_normal(cond_mean, cond_sd, lower_, rng)
                    : cond_mean + cond_sd * rng.normal();
  }
}

const Vector& TruncatedGibbsChain::next(RngStream& rng) {
  for (int i = 0; i < thinning_; ++i) sweep(rng);
  return state_;
}

ConditionalDemandSampler::ConditionalDemandSampler(
    const GaussianModel& model, Vector supply, ConditionalSamplerOptions options)
    : model_(&model), supply_(std::move(supply)), options_(options) {
  if (supply_.size() != model.mean.size()) {
    throw std::invalid_argument("supply/model dimension mismatch");
  }
  if (options_.batch < 1 || options_.max_proposals < 1) {
    throw std::invalid_argument("rejection batch and cap must be positive");
  }
  z_.resize(model.mean.size());
  draw_.resize(model.mean.size());
  batch_.resize(static_cast<std::size_t>(options_.batch));
}

void ConditionalDemandSampler::complete_from_coordinate(int node, double value,
                                                        RngStream& rng,
                                                        Vector& out) {
  // Matheron update: Y ~ N(0, Sigma), then
  // D = mu + Y + Sigma(:, node) / Sigma(node, node) * (value - mu_node - Y_node)
  // has law N(mu, Sigma) conditioned on D_node = value.
  const auto& m = *model_;
  fill_standard_normal(rng, z_);
  draw_.noalias() = m.factor.triangularView<Eigen::Lower>() * z_;
  const double var = m.cov(node, node);
  const double gap = value - m.mean(node) - draw_(node);
  out = m.mean + draw_ + m.cov.col(node) * (gap / var);
  out(node) = value;
}

bool ConditionalDemandSampler::try_rejection(int node, RngStream& rng,
                                             Vector& out) {
  const double mean = model_->mean(node);
  const double sd = model_->marginal_sd(node);
  const double bound = supply_(node);
  int proposed = 0;
  while (proposed < options_.max_proposals) {
    const int count = std::min(options_.batch, options_.max_proposals - proposed);
    for (int b = 0; b < count; ++b) batch_[b] = mean + sd * rng.normal();
    proposed += count;
    for (int b = 0; b < count; ++b) {
      if (batch_[b] > bound) {
        complete_from_coordinate(node, batch_[b], rng, out);
        return true;
      }
    }
  }
  return false;
}

SamplePath ConditionalDemandSampler::sample(int node, RngStream& rng,
                                            Vector& out) {
  if (node < 0 || node >= model_->dimension()) {
    throw std::out_of_range("conditional sampler node index out of range");
  }
  if (options_.strategy != ConditionalStrategy::GibbsOnly &&
      try_rejection(node, rng, out)) {
    return SamplePath::Rejection;
  }
  if (options_.strategy == ConditionalStrategy::RejectionOnly) {
    while (!try_rejection(node, rng, out)) {
    }
    return SamplePath::Rejection;
  }
  TruncatedGibbsChain chain(*model_, node, supply_(node), options_.burn_in,
                            options_.thinning, rng);
  out = chain.state();
  return SamplePath::Gibbs;
}

}  // namespace netfail
