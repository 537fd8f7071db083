#pragma once

#include <stdexcept>

#include "netfail/rng.hpp"
#include "netfail/types.hpp"

namespace netfail {

struct NetworkSpec;

class NotPositiveDefinite : public std::runtime_error {
 public:
  NotPositiveDefinite() : std::runtime_error("matrix is not positive definite") {}
};

// Lower-triangular W with W W' = cov. Throws NotPositiveDefinite when a
// pivot is not strictly positive.
Matrix factorize(const Matrix& cov);

// N(mean, cov) together with the quantities every sampler needs.
struct GaussianModel {
  Vector mean;
  Matrix cov;
  Matrix factor;        // lower-triangular W, W W' = cov
  Vector marginal_sd;   // sqrt(cov(i, i))
  Matrix precision;     // cov^{-1}, for Gibbs full conditionals

  static GaussianModel create(Vector mean, Matrix cov);
  static GaussianModel from_network(const NetworkSpec& spec);

  int dimension() const { return static_cast<int>(mean.size()); }
};

void fill_standard_normal(RngStream& rng, Vector& z);

// D = mean + W z, z i.i.d. standard normal. `z` is caller-owned scratch.
void sample_demand(const GaussianModel& model, RngStream& rng, Vector& z,
                   Vector& out);
Vector sample_demand(const GaussianModel& model, RngStream& rng);

// Uniform point on the unit sphere in R^d, z / |z|.
void sample_angle(RngStream& rng, Vector& out);
Vector sample_angle(int d, RngStream& rng);

// Exact draw from N(mean, sd^2) conditioned on x > lower. `lower` may be
// -infinity. Inverse-CDF when the standardized bound is <= 3, otherwise
// rejection from a shifted exponential proposal.
double sample_truncated_normal(double mean, double sd, double lower,
                               RngStream& rng);

}  // namespace netfail
