#include "polyflow/relations.hpp"

#include <cmath>
#include <string>

namespace polyflow {

double heron_residual(double area, const std::array<double, 3>& l) {
  const double a2 = l[0] * l[0], b2 = l[1] * l[1], c2 = l[2] * l[2];
  const double value = 16.0 * area * area - 2.0 * (a2 * b2 + b2 * c2 + c2 * a2) +
                       a2 * a2 + b2 * b2 + c2 * c2;
  const double p = l[0] + l[1] + l[2];
  return std::abs(value) / (p * p * p * p);
}

double brahmagupta_residual(double area, const std::array<double, 4>& l) {
  double s2 = 0.0, s4 = 0.0, prod2 = 1.0;
  for (const double v : l) {
    const double v2 = v * v;
    s2 += v2;
    s4 += v2 * v2;
    prod2 *= v2;
  }
  const double t = 16.0 * area * area - s2 * s2 + 2.0 * s4;
  const double value = t * t - 64.0 * prod2;
  const double p = l[0] + l[1] + l[2] + l[3];
  const double p4 = p * p * p * p;
  return std::abs(value) / (p4 * p4);
}

namespace {

// Exact binomial coefficient; every intermediate division is exact.
unsigned long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
  }
  return r;
}

void check_count_range(int n, const char* what) {
  if (n < 3 || n > 62) {
    throw ValidationError(std::string(what) + ": n must lie in [3, 62], got " + std::to_string(n));
  }
}

}  // namespace

long long delta_n(int n) {
  check_count_range(n, "delta_n");
  const int p = (n - 1) / 2;
  const unsigned long long binom = binomial(n - 1, p);
  // (n/2) * binom computed exactly: for odd n the central binomial
  // coefficient binom(2p, p) is even.
  const unsigned long long half_product = n % 2 == 0
                                              ? static_cast<unsigned long long>(n / 2) * binom
                                              : static_cast<unsigned long long>(n) * (binom / 2);
  const unsigned long long pow2 = 1ULL << (n - 2);
  return static_cast<long long>(half_product) - static_cast<long long>(pow2);
}

long long betti_sum_bound(int n) {
  check_count_range(n, "betti_sum_bound");
  const int p = (n - 1) / 2;
  return static_cast<long long>((1ULL << (n - 1)) - binomial(n - 1, p));
}

ClusterRelationReport check_cluster_relations(const std::vector<CriticalCluster>& clusters,
                                              const LengthSpec& l) {
  ClusterRelationReport report;
  report.cluster_count = static_cast<int>(clusters.size());
  report.delta = delta_n(l.n());
  report.betti_bound = betti_sum_bound(l.n());
  for (const auto& cluster : clusters) {
    report.areas.push_back(cluster.mean_area);
    if (l.n() == 3) {
      report.relation_residuals.push_back(
          heron_residual(cluster.mean_area, {l.lengths[0], l.lengths[1], l.lengths[2]}));
    } else if (l.n() == 4) {
      report.relation_residuals.push_back(brahmagupta_residual(
          cluster.mean_area, {l.lengths[0], l.lengths[1], l.lengths[2], l.lengths[3]}));
    }
  }
  return report;
}

}  // namespace polyflow
