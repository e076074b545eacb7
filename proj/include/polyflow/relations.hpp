#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "polyflow/flow.hpp"

namespace polyflow {

// Absolute defect of the triangle area-length relation
//   16A^2 - 2(a^2b^2 + b^2c^2 + c^2a^2) + a^4 + b^4 + c^4 = 0,
// normalised by perimeter^4. Zero exactly on triangles with |area| = A.
[[nodiscard]] double heron_residual(double area, const std::array<double, 3>& l);

// Absolute defect of the cocyclic quadrilateral relation
//   (16A^2 - (sum l^2)^2 + 2 sum l^4)^2 - 64 a^2b^2c^2d^2 = 0,
// normalised by perimeter^8. Zero on every cocyclic critical quadrilateral,
// crossed ones included.
[[nodiscard]] double brahmagupta_residual(double area, const std::array<double, 4>& l);

// Exact signed count of critical points of a regular N-edge configuration:
//   delta_n = (N/2) binom(N-1, p) - 2^(N-2),  p = floor((N-1)/2).
// Supported for 3 <= n <= 62 (beyond that the integers overflow 64 bits).
[[nodiscard]] long long delta_n(int n);

// Upper bound 2^(N-1) - binom(N-1, p) for the total Betti number of the
// shape space of a regular configuration.
[[nodiscard]] long long betti_sum_bound(int n);

struct ClusterRelationReport {
  // One entry per cluster, in cluster order.
  std::vector<double> areas;
  // Heron (N=3) or Brahmagupta (N=4) residuals per cluster; empty for other N.
  std::vector<double> relation_residuals;
  int cluster_count = 0;
  long long delta = 0;
  long long betti_bound = 0;
};

// Cross-checks an enumeration result against the closed-form relations and
// counting data for its N.
[[nodiscard]] ClusterRelationReport check_cluster_relations(const std::vector<CriticalCluster>& clusters,
                                                            const LengthSpec& l);

}  // namespace polyflow
