#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netfail::testing {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

// Solves the square system in place by Gaussian elimination with partial
// pivoting. Returns false when the matrix is numerically singular.
bool solve_square(std::vector<std::vector<long double>> m,
                  std::vector<long double> b, std::vector<long double>& x) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
    }
    if (std::fabs(m[p][c]) < 1e-12L) return false;
    std::swap(m[p], m[c]);
    std::swap(b[p], b[c]);
    for (int r = c + 1; r < n; ++r) {
      long double f = m[r][c] / m[c][c];
      if (f == 0.0L) continue;
      for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0L);
  for (int r = n - 1; r >= 0; --r) {
    long double acc = b[r];
    for (int j = r + 1; j < n; ++j) acc -= m[r][j] * x[j];
    x[r] = acc / m[r][r];
  }
  return true;
}

}  // namespace

long double normal_sf_oracle(long double x) {
  if (x < 0.25L) {
    // Phi(x) - 1/2 = phi(x) * sum x^(2j+1) / (1*3*...*(2j+1))
    long double term = x, sum = x;
    for (int j = 1; j < 200; ++j) {
      term *= x * x / (2 * j + 1);
      sum += term;
    }
    long double phi = std::exp(-x * x / 2) / std::sqrt(2 * kPi);
    return 0.5L - phi * sum;
  }
  int terms = 2000 + static_cast<int>(20000.0L / (x * x));
  long double t = x;
  for (int j = terms; j >= 1; --j) t = x + j / t;
  return std::exp(-x * x / 2) / std::sqrt(2 * kPi) / t;
}

long double chi_survival_even_oracle(int d, long double r) {
  long double h = r * r / 2;
  long double term = 1.0L, sum = 1.0L;
  for (int j = 1; j < d / 2; ++j) {
    term *= h / j;
    sum += term;
  }
  return std::exp(-h) * sum;
}

std::vector<std::vector<long double>> dual_vertices_oracle(
    const Matrix& routing) {
  const int d = static_cast<int>(routing.rows());
  // Rows 0..d-1: (I - A) y <= 1. Rows d..2d-1: -y <= 0.
  std::vector<std::vector<long double>> rows(2 * d,
                                             std::vector<long double>(d, 0.0L));
  std::vector<long double> rhs(2 * d, 0.0L);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      rows[i][j] = (i == j ? 1.0L : 0.0L) - routing(i, j);
    }
    rhs[i] = 1.0L;
    rows[d + i][i] = -1.0L;
  }

  std::vector<std::vector<long double>> out;
  std::vector<int> pick(d);
  for (int i = 0; i < d; ++i) pick[i] = i;
  while (true) {
    std::vector<std::vector<long double>> m;
    std::vector<long double> b;
    for (int idx : pick) {
      m.push_back(rows[idx]);
      b.push_back(rhs[idx]);
    }
    std::vector<long double> y;
    if (solve_square(m, b, y)) {
      bool feasible = true;
      for (int r = 0; r < 2 * d && feasible; ++r) {
        long double lhs = 0.0L;
        for (int j = 0; j < d; ++j) lhs += rows[r][j] * y[j];
        feasible = lhs <= rhs[r] + 1e-9L;
      }
      bool seen = false;
      for (const auto& v : out) {
        long double diff = 0.0L;
        for (int j = 0; j < d; ++j) diff = std::max(diff, std::fabs(v[j] - y[j]));
        if (diff < 1e-9L) seen = true;
      }
      if (feasible && !seen) out.push_back(y);
    }
    // Next d-combination of 2d rows in lexicographic order.
    int i = d - 1;
    while (i >= 0 && pick[i] == 2 * d - d + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::optional<long double> shortfall_oracle(
    const std::vector<std::vector<long double>>& vertices, const Vector& supply,
    const Vector& demand) {
  long double sd = 0.0L, ss = 0.0L;
  for (int i = 0; i < supply.size(); ++i) {
    sd += demand[i];
    ss += supply[i];
  }
  if (sd > ss) return std::nullopt;
  long double best = 0.0L;
  for (const auto& v : vertices) {
    long double value = 0.0L;
    for (int i = 0; i < supply.size(); ++i) {
      value += v[i] * (static_cast<long double>(demand[i]) - supply[i]);
    }
    best = std::max(best, value);
  }
  return best;
}

long double radial_threshold_oracle(
    const std::vector<std::vector<long double>>& vertices, const Vector& mean,
    const Vector& supply, const Matrix& factor, const Vector& psi, double k) {
  const int d = static_cast<int>(mean.size());
  std::vector<long double> direction(d, 0.0L);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) direction[i] += factor(i, j) * psi[j];
  }
  long double best = std::numeric_limits<long double>::infinity();
  auto consider = [&](const std::vector<long double>& y, long double kk) {
    long double slope = 0.0L, gap = 0.0L;
    for (int i = 0; i < d; ++i) {
      slope += y[i] * direction[i];
      gap += y[i] * (static_cast<long double>(supply[i]) - mean[i]);
    }
    if (slope > 0.0L) best = std::min(best, (gap + kk) / slope);
  };
  consider(std::vector<long double>(d, 1.0L), 0.0L);
  for (const auto& v : vertices) consider(v, k);
  return best;
}

Matrix random_covariance(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> u(0.3, 1.5);
  Matrix b(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) b(i, j) = z(gen);
  }
  Matrix cov = b * b.transpose() / d;
  for (int i = 0; i < d; ++i) cov(i, i) += u(gen);
  return cov;
}

NetworkSpec random_network(int d, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  NetworkSpec spec;
  spec.incidence = IncidenceMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) spec.incidence(i, (i + 1) % d) = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i != j && u(gen) < 0.3) spec.incidence(i, j) = 1;
    }
  }
  spec.routing = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    double total = 0.0;
    for (int j = 0; j < d; ++j) {
      if (spec.incidence(i, j)) {
        spec.routing(i, j) = 0.2 + u(gen);
        total += spec.routing(i, j);
      }
    }
    spec.routing.row(i) /= total;
  }
  spec.demand_mean.resize(d);
  spec.supply_shape.resize(d);
  for (int i = 0; i < d; ++i) {
    spec.demand_mean[i] = 2.0 * u(gen);
    spec.supply_shape[i] = spec.demand_mean[i] + 0.2 + 2.0 * u(gen);
  }
  spec.demand_cov = random_covariance(d, gen);
  spec.supply_exponent = 1.0;
  return spec;
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double f = cdf(sample[i]);
    worst = std::max({worst, (i + 1) / n - f, f - i / n});
  }
  return std::sqrt(n) * worst;
}

double kolmogorov_pvalue(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    sum += (j % 2 ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double batch_means_se(std::span<const double> series, int batches) {
  const std::size_t size = series.size() / batches;
  std::vector<double> means(batches, 0.0);
  for (int b = 0; b < batches; ++b) {
    for (std::size_t i = 0; i < size; ++i) means[b] += series[b * size + i];
    means[b] /= static_cast<double>(size);
  }
  double grand = 0.0;
  for (double m : means) grand += m;
  grand /= batches;
  double var = 0.0;
  for (double m : means) var += (m - grand) * (m - grand);
  var /= batches - 1;
  return std::sqrt(var / batches);
}

}  // namespace netfail::testing
