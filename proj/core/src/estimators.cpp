#include "netfail/estimators.hpp"

#include <cmath>

#include "netfail/special.hpp"

namespace netfail {

std::string_view method_name(Method method) {
  switch (method) {
    case Method::Naive:
      return "naive";
    case Method::ImportanceSampling:
      return "is";
    case Method::ConditionalMC:
      return "cmc";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "naive") return Method::Naive;
  if (name == "is") return Method::ImportanceSampling;
  if (name == "cmc") return Method::ConditionalMC;
  return std::nullopt;
}

void EstimatorConfig::check() const {
  if (replications < 2) {
    throw std::invalid_argument("need at least 2 replications");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }
}

std::uint64_t EstimatorConfig::effective_stream_space() const {
  if (stream_space != 0) return stream_space;
  return 1 + static_cast<std::uint64_t>(method);
}

MixtureWeights mixture_weights(const GaussianModel& model,
                               const ScaledInstance& instance) {
  const int d = instance.dimension();
  MixtureWeights w;
  w.tails.resize(d);
  for (int i = 0; i < d; ++i) {
    w.tails(i) = normal_sf((instance.supply(i) - model.mean(i)) /
                           model.marginal_sd(i));
  }
  w.total = w.tails.sum();
  if (!(w.total > 0.0)) throw TailUnderflow();
  w.probabilities = w.tails / w.total;
  return w;
}

ReplicationKernel::ReplicationKernel(const GaussianModel& model,
                                     const ScaledInstance& instance,
                                     const EstimatorConfig& config)
    : model_(&model),
      instance_(&instance),
      evaluator_(instance, config.lp),
      sampler_(model, instance.supply, config.sampler),
      radial_(model, instance, config.radial, config.lp),
      demand_(instance.dimension()),
      scratch_(instance.dimension()) {
  try {
    weights_ = mixture_weights(model, instance);
    cumulative_.resize(instance.dimension());
    double acc = 0.0;
    for (int i = 0; i < instance.dimension(); ++i) {
      acc += weights_->probabilities(i);
      cumulative_(i) = acc;
    }
  } catch (const TailUnderflow&) {
    // Only the importance sampler needs the weights.
  }
}

const MixtureWeights& ReplicationKernel::weights() const {
  if (!weights_) throw TailUnderflow();
  return *weights_;
}

int ReplicationKernel::draw_node(RngStream& rng) const {
  const double u = rng.uniform() * cumulative_(cumulative_.size() - 1);
  for (Eigen::Index i = 0; i < cumulative_.size(); ++i) {
    if (u < cumulative_(i) && weights_->probabilities(i) > 0.0) {
      return static_cast<int>(i);
    }
  }
  // Rounding at the top end: last node with positive mass.
  for (Eigen::Index i = cumulative_.size() - 1; i >= 0; --i) {
    if (weights_->probabilities(i) > 0.0) return static_cast<int>(i);
  }
  return 0;
}

double ReplicationKernel::naive(RngStream& rng) {
  sample_demand(*model_, rng, scratch_, demand_);
  return evaluator_.evaluate(demand_).exceeds(instance_->threshold) ? 1.0 : 0.0;
}

double ReplicationKernel::importance_weight(const Vector& demand) {
  const auto& w = weights();
  int exceeding = 0;
  for (Eigen::Index j = 0; j < demand.size(); ++j) {
    if (demand(j) > instance_->supply(j)) ++exceeding;
  }
  if (exceeding == 0) return 0.0;
  if (!evaluator_.evaluate(demand).exceeds(instance_->threshold)) return 0.0;
  return w.total / exceeding;
}

double ReplicationKernel::importance(RngStream& rng) {
  (void)weights();
  const int node = draw_node(rng);
  last_path_ = sampler_.sample(node, rng, demand_);
  return importance_weight(demand_);
}

double ReplicationKernel::conditional(RngStream& rng) {
  sample_angle(rng, scratch_);
  return radial_.failure_set(scratch_).probability(instance_->dimension());
}

double ReplicationKernel::run(Method method, RngStream& rng) {
  switch (method) {
    case Method::Naive:
      return naive(rng);
    case Method::ImportanceSampling:
      return importance(rng);
    case Method::ConditionalMC:
      return conditional(rng);
  }
  return 0.0;
}

double naive_replication(const GaussianModel& model,
                         const ScaledInstance& instance, RngStream& rng) {
  ReplicationKernel kernel(model, instance);
  return kernel.naive(rng);
}

double is_replication(const GaussianModel& model,
                      const ScaledInstance& instance, RngStream& rng) {
  ReplicationKernel kernel(model, instance);
  return kernel.importance(rng);
}

double cmc_replication(const GaussianModel& model,
                       const ScaledInstance& instance, RngStream& rng) {
  ReplicationKernel kernel(model, instance);
  return kernel.conditional(rng);
}

double find_radial_root(const GaussianModel& model,
                        const ScaledInstance& instance, const Vector& psi) {
  RadialRootFinder finder(model, instance);
  return finder.root(psi);
}

}  // namespace netfail
