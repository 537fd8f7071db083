#pragma once

// Reference implementations used only by tests. They are written
// independently of the library (long double, hand-rolled elimination) so
// agreement is evidence rather than a tautology.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "netfail/network.hpp"
#include "netfail/types.hpp"

namespace netfail::testing {

// Phi-bar(x) for x >= 0: Maclaurin series of Phi near zero, the Laplace
// continued fraction phi(x) / (x + 1/(x + 2/(x + ...))) elsewhere.
long double normal_sf_oracle(long double x);

// Even d only: P{chi_d > r} = exp(-r^2/2) * sum_{j < d/2} (r^2/2)^j / j!.
long double chi_survival_even_oracle(int d, long double r);

// Vertices of {y >= 0 : (I - A) y <= 1} by brute force over active sets.
std::vector<std::vector<long double>> dual_vertices_oracle(const Matrix& routing);

// L(D) as max(0, max_v v'(D - s)), or nullopt (infinite) when sum D > sum s.
std::optional<long double> shortfall_oracle(
    const std::vector<std::vector<long double>>& vertices, const Vector& supply,
    const Vector& demand);

// Smallest R with L(mu + R W psi) > k from the ray structure of the failure
// set: min over the infeasibility ray and every vertex with v'W psi > 0.
// Assumes mu <= s. Returns +inf when no ray crosses.
long double radial_threshold_oracle(
    const std::vector<std::vector<long double>>& vertices, const Vector& mean,
    const Vector& supply, const Matrix& factor, const Vector& psi, double k);

// Random irreducible network: a directed ring plus extra random edges,
// random positive routing on that support, gamma > mu, random SPD Sigma.
NetworkSpec random_network(int d, std::mt19937_64& gen);

// Random SPD matrix with unit-order diagonal.
Matrix random_covariance(int d, std::mt19937_64& gen);

// Kolmogorov-Smirnov statistic sqrt(N) * sup |F_N - F| for a sample.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov tail P{K > lambda}.
double kolmogorov_pvalue(double lambda);

// Standard error of the mean of an autocorrelated series by batch means.
double batch_means_se(std::span<const double> series, int batches = 50);

}  // namespace netfail::testing
