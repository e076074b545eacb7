#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polyflow/shape_space.hpp"

namespace polyflow {

struct FlowConfig {
  // Euler step size; dimensionless (the scheme is scale equivariant).
  double dt = 1e-2;
  // Reprojection target: max_nu |L_nu^2 - l_nu^2| / l_nu^2 <= eps_constraint.
  double eps_constraint = 1e-10;
  int newton_max_iter = 50;
  long max_steps = 50000;
  // Converged when the criticality residual <= grad_tol * perimeter.
  double grad_tol = 1e-8;
  // dt multiplier when a step is rejected; dt is restored on acceptance.
  double dt_backoff = 0.5;
  // A vertex snapshot is recorded every snapshot_stride accepted steps (the
  // first and last records always carry one).
  int snapshot_stride = 10;

  void validate() const;
};

enum class StopReason { Converged, MaxSteps, Singular, StepUnderflow };

[[nodiscard]] const char* to_string(StopReason r);

// State record appended after each accepted step (step 0 is the initial
// polygon; its dt and drift are zero).
struct TrajectoryStep {
  long step = 0;
  double area = 0.0;
  double residual = 0.0;
  // +infinity when some developed vertex is at infinity.
  double developed_perimeter = 0.0;
  double membership_residual = 0.0;
  // dt that produced this state from the previous one.
  double dt = 0.0;
  // min over edges of L_nu^2(after Euler) - L_nu^2(before); the scheme keeps
  // this nonnegative up to roundoff.
  double min_euler_l2_drift = 0.0;
  std::optional<std::vector<Complex>> snapshot;
};

struct FlowTrajectory {
  std::vector<TrajectoryStep> steps;
};

struct FlowResult {
  Polygon polygon;
  FlowTrajectory trajectory;
  StopReason reason = StopReason::MaxSteps;
};

// One application of the length reprojection map
//   w -> (w + I.diag(l_nu^2 / L_nu^2(w)).D.w) / 2,
// the cyclic analogue of the Babylonian square-root step. Output is zero-sum
// for zero-sum input. Throws ZeroEdge on a collapsed edge.
[[nodiscard]] Polygon newton_step(const Polygon& w, const LengthSpec& l);

// Iterates newton_step from the centered input until the relative squared
// length error is <= eps; throws NewtonDivergence after max_iter iterations
// or on blowup.
[[nodiscard]] Polygon newton_reproject(const Polygon& w, const LengthSpec& l, double eps = 1e-10,
                                       int max_iter = 50);

// Explicit ascent step z + dt * grad A(z). The step leaves every squared
// length non-decreasing up to roundoff (the gradient is tangent and L_nu^2 is
// convex). Gates on membership like criticality().
[[nodiscard]] Polygon euler_step(const Polygon& z, const LengthSpec& l, double dt);

// Euler ascent with Newton reprojection and dt backoff. A step is accepted
// when reprojection succeeds and the area has not decreased beyond
// 1e-12 * max(1, |A|); otherwise dt is multiplied by dt_backoff and the step
// retried, down to dt * 1e-12 (StepUnderflow). Collinear degeneration stops
// the run with Singular.
[[nodiscard]] FlowResult run_flow(const Polygon& z0, const LengthSpec& l, const FlowConfig& cfg);

// Random on-constraint polygon: uniform edge directions, closure defect
// redistributed proportionally to the lengths, integrated, reprojected.
// Deterministic given (l, seed). Throws ValidationError on inadmissible l and
// InitFailure when the retry budget is exhausted.
[[nodiscard]] Polygon random_constrained_polygon(const LengthSpec& l, std::uint64_t seed);

struct CriticalCluster {
  // First converged endpoint of the cluster, rotated so its first edge points
  // along the positive real axis.
  Polygon representative;
  double mean_area = 0.0;
  int count = 0;
  // Worst criticality residual among members.
  double residual = 0.0;
};

struct EnumerationResult {
  // Sorted by mean area, descending.
  std::vector<CriticalCluster> clusters;
  int total_starts = 0;
  int failed_starts = 0;
};

// Multistart search for the critical polygons of l: n_starts seeded flows,
// converged endpoints rotation-normalised and clustered at vertex distance
// 1e-4 * perimeter. Ascent alone only reaches area maxima, so every endpoint
// is recorded together with its conjugate mirror image, which is critical
// with the same lengths and opposite area; each converged start therefore
// contributes two cluster members. Throws ValidationError when l is
// inadmissible or non-regular.
[[nodiscard]] EnumerationResult enumerate_critical(const LengthSpec& l, int n_starts,
                                                   const FlowConfig& cfg, std::uint64_t seed);

}  // namespace polyflow
