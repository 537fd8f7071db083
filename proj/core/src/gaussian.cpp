#include "netfail/gaussian.hpp"

#include <cmath>
#include <limits>

#include "netfail/network.hpp"
#include "netfail/special.hpp"

namespace netfail {

Matrix factorize(const Matrix& cov) {
  const auto d = cov.rows();
  if (cov.cols() != d) throw std::invalid_argument("covariance must be square");
  Matrix w = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double pivot = cov(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= w(j, k) * w(j, k);
    if (!(pivot > 0.0)) throw NotPositiveDefinite();
    const double diag = std::sqrt(pivot);
    w(j, j) = diag;
    for (Eigen::Index i = j + 1; i < d; ++i) {
      double v = cov(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= w(i, k) * w(j, k);
      w(i, j) = v / diag;
    }
  }
  return w;
}

GaussianModel GaussianModel::create(Vector mean, Matrix cov) {
  if (cov.rows() != mean.size() || cov.cols() != mean.size()) {
    throw std::invalid_argument("mean/covariance dimension mismatch");
  }
  GaussianModel model;
  model.factor = factorize(cov);
  model.marginal_sd = cov.diagonal().cwiseSqrt();
  const auto d = mean.size();
  const auto lower = model.factor.triangularView<Eigen::Lower>();
  Matrix inv_factor = lower.solve(Matrix::Identity(d, d));
  model.precision = inv_factor.transpose() * inv_factor;
  model.mean = std::move(mean);
  model.cov = std::move(cov);
  return model;
}

GaussianModel GaussianModel::from_network(const NetworkSpec& spec) {
  return create(spec.demand_mean, spec.demand_cov);
}

void fill_standard_normal(RngStream& rng, Vector& z) {
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
}

void sample_demand(const GaussianModel& model, RngStream& rng, Vector& z,
                   Vector& out) {
  z.resize(model.mean.size());
  fill_standard_normal(rng, z);
  out.noalias() = model.factor.triangularView<Eigen::Lower>() * z;
  out += model.mean;
}

Vector sample_demand(const GaussianModel& model, RngStream& rng) {
  Vector z, out;
  sample_demand(model, rng, z, out);
  return out;
}

void sample_angle(RngStream& rng, Vector& out) {
  double norm = 0.0;
  do {
    fill_standard_normal(rng, out);
    norm = out.norm();
  } while (norm == 0.0);
  out /= norm;
}

Vector sample_angle(int d, RngStream& rng) {
  if (d < 1) throw std::invalid_argument("sample_angle: d must be >= 1");
  Vector out(d);
  sample_angle(rng, out);
  return out;
}

double sample_truncated_normal(double mean, double sd, double lower,
                               RngStream& rng) {
  if (std::isinf(lower) && lower < 0.0) return mean + sd * rng.normal();
  const double a = (lower - mean) / sd;
  if (a <= 3.0) {
    // x = -Phi^{-1}(u * Phi-bar(a)) keeps precision when Phi-bar(a) is small.
    const double tail = normal_sf(a);
    double x;
    do {
      x = -normal_quantile(rng.uniform() * tail);
    } while (!(x > a));
    return mean + sd * x;
  }
  // Robert (1995): proposal a + Exp(lambda), optimal lambda.
  const double lambda = 0.5 * (a + std::sqrt(a * a + 4.0));
  for (;;) {
    const double x = a - std::log(rng.uniform()) / lambda;
    const double diff = x - lambda;
    if (rng.uniform() <= std::exp(-0.5 * diff * diff)) return mean + sd * x;
  }
}

}  // namespace netfail
