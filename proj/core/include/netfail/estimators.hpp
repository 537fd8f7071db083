#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "netfail/conditional.hpp"
#include "netfail/gaussian.hpp"
#include "netfail/radial.hpp"
#include "netfail/shortfall.hpp"

namespace netfail {

enum class Method { Naive, ImportanceSampling, ConditionalMC };

std::string_view method_name(Method method);  // "naive", "is", "cmc"
std::optional<Method> parse_method(std::string_view name);

struct EstimatorConfig {
  Method method = Method::Naive;
  std::size_t replications = 100000;
  std::uint64_t seed = 42;
  double confidence = 0.95;
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
  // Stream namespace; 0 derives one from the method.
  std::uint64_t stream_space = 0;
  RadialOptions radial;
  ConditionalSamplerOptions sampler;
  SimplexOptions lp;

  // Throws std::invalid_argument for N < 2 or a level outside (0, 1).
  void check() const;
  std::uint64_t effective_stream_space() const;
};

// The all nodes' tail masses beyond supply underflow to zero.
class TailUnderflow : public std::runtime_error {
 public:
  TailUnderflow()
      : std::runtime_error(
            "event beyond double-precision tail: every node's supply "
            "exceedance probability underflows") {}
};

// Mixture over "node i short of supply" used by the importance sampler:
// tails(i) = P{D_i > s_i}, total = sum of tails, probabilities = tails/total.
struct MixtureWeights {
  Vector tails;
  Vector probabilities;
  double total = 0.0;
};

MixtureWeights mixture_weights(const GaussianModel& model,
                               const ScaledInstance& instance);

// Per-thread replication machinery for one (model, instance) pair.
class ReplicationKernel {
 public:
  ReplicationKernel(const GaussianModel& model, const ScaledInstance& instance,
                    const EstimatorConfig& config = {});

  // I{L(D) > k} with D ~ N(mu, Sigma).
  double naive(RngStream& rng);
  // tau / #{j : D_j > s_j} * I{L(D) > k} with D drawn from the mixture.
  double importance(RngStream& rng);
  // P{L(mu + R W psi) > k | psi} for a uniform angle psi.
  double conditional(RngStream& rng);
  double run(Method method, RngStream& rng);

  // Importance replication on a given demand vector (already drawn from
  // the mixture), exposed for tests.
  double importance_weight(const Vector& demand);

  const MixtureWeights& weights() const;
  RadialRootFinder& radial() { return radial_; }
  ShortfallEvaluator& evaluator() { return evaluator_; }
  SamplePath last_sample_path() const { return last_path_; }

 private:
  int draw_node(RngStream& rng) const;

  const GaussianModel* model_;
  const ScaledInstance* instance_;
  ShortfallEvaluator evaluator_;
  ConditionalDemandSampler sampler_;
  RadialRootFinder radial_;
  std::optional<MixtureWeights> weights_;
  Vector cumulative_;
  Vector demand_;
  Vector scratch_;
  SamplePath last_path_ = SamplePath::Rejection;
};

double naive_replication(const GaussianModel& model,
                         const ScaledInstance& instance, RngStream& rng);
double is_replication(const GaussianModel& model,
                      const ScaledInstance& instance, RngStream& rng);
double cmc_replication(const GaussianModel& model,
                       const ScaledInstance& instance, RngStream& rng);
double find_radial_root(const GaussianModel& model,
                        const ScaledInstance& instance, const Vector& psi);

}  // namespace netfail
