#include "polyflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polyflow/calculus.hpp"
#include "polyflow/rng.hpp"

namespace polyflow {

void FlowConfig::validate() const {
  if (!(dt > 0.0)) throw ValidationError("flow config: dt must be positive");
  if (!(eps_constraint > 0.0)) throw ValidationError("flow config: eps_constraint must be positive");
  if (newton_max_iter < 1) throw ValidationError("flow config: newton_max_iter must be at least 1");
  if (max_steps < 1) throw ValidationError("flow config: max_steps must be at least 1");
  if (!(grad_tol > 0.0)) throw ValidationError("flow config: grad_tol must be positive");
  if (!(dt_backoff > 0.0 && dt_backoff < 1.0)) {
    throw ValidationError("flow config: dt_backoff must lie in (0, 1)");
  }
  if (snapshot_stride < 1) throw ValidationError("flow config: snapshot_stride must be at least 1");
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Converged: return "converged";
    case StopReason::MaxSteps: return "max-steps";
    case StopReason::Singular: return "singular";
    case StopReason::StepUnderflow: return "step-underflow";
  }
  return "unknown";
}

Polygon newton_step(const Polygon& w, const LengthSpec& l) {
  if (w.n() != l.n()) {
    throw SizeMismatch("newton_step: polygon N=" + std::to_string(w.n()) + " vs lengths N=" +
                       std::to_string(l.n()));
  }
  const EdgeField zeta = derivative_v2e(w);
  EdgeField scaled(w.size());
  for (int nu = 0; nu < w.n(); ++nu) {
    const double target = l.lengths[static_cast<std::size_t>(nu)];
    const double current2 = std::norm(zeta[nu]);
    if (std::sqrt(current2) < 1e-12 * target) {
      throw ZeroEdge("newton_step: edge " + std::to_string(nu) + " has collapsed");
    }
    scaled[nu] = (target * target / current2) * zeta[nu];
  }
  return 0.5 * (w + integrate_e2v(scaled));
}

namespace {

double length_error(const Polygon& w, const LengthSpec& l) {
  double worst = 0.0;
  for (int nu = 0; nu < w.n(); ++nu) {
    const double l2 = l.lengths[static_cast<std::size_t>(nu)] * l.lengths[static_cast<std::size_t>(nu)];
    worst = std::max(worst, std::abs(std::norm(w.wrapped(nu + 1) - w[nu]) - l2) / l2);
  }
  return worst;
}

}  // namespace

Polygon newton_reproject(const Polygon& w, const LengthSpec& l, double eps, int max_iter) {
  Polygon current = center(w);
  for (int it = 0; it <= max_iter; ++it) {
    const double err = length_error(current, l);
    if (err <= eps) return current;
    if (err > 1e6 || !std::isfinite(err)) {
      throw NewtonDivergence("newton_reproject: length error blew up to " + std::to_string(err));
    }
    if (it == max_iter) break;
    current = newton_step(current, l);
  }
  throw NewtonDivergence("newton_reproject: tolerance " + std::to_string(eps) + " not reached in " +
                         std::to_string(max_iter) + " iterations");
}

Polygon euler_step(const Polygon& z, const LengthSpec& l, double dt) {
  if (dt < 0.0) throw ValidationError("euler_step: dt must be nonnegative");
  const CriticalityData crit = criticality(z, l);
  return z + dt * crit.gradient;
}

namespace {

double min_l2_drift(const Polygon& before, const Polygon& after) {
  double worst = std::numeric_limits<double>::infinity();
  for (int nu = 0; nu < before.n(); ++nu) {
    const double b = std::norm(before.wrapped(nu + 1) - before[nu]);
    const double a = std::norm(after.wrapped(nu + 1) - after[nu]);
    worst = std::min(worst, a - b);
  }
  return worst;
}

TrajectoryStep make_record(long step, const Polygon& z, const LengthSpec& l, double residual,
                           double dt, double drift, bool with_snapshot) {
  TrajectoryStep rec;
  rec.step = step;
  rec.area = oriented_area(z);
  rec.residual = residual;
  rec.developed_perimeter = developed_perimeter(z);
  rec.membership_residual = membership_residual(z, l);
  rec.dt = dt;
  rec.min_euler_l2_drift = drift;
  if (with_snapshot) rec.snapshot = z.values();
  return rec;
}

}  // namespace

FlowResult run_flow(const Polygon& z0, const LengthSpec& l, const FlowConfig& cfg) {
  cfg.validate();
  const double perimeter = l.perimeter();
  Polygon z = z0;
  FlowResult result{z, {}, StopReason::MaxSteps};

  double last_dt = 0.0;
  double last_drift = 0.0;
  for (long step = 0;; ++step) {
    std::optional<CriticalityData> crit;
    try {
      crit = criticality(z, l);
    } catch (const CollinearPolygon&) {
      result.reason = StopReason::Singular;
      break;
    }
    const bool snapshot = step % cfg.snapshot_stride == 0 || crit->residual <= cfg.grad_tol * perimeter;
    result.trajectory.steps.push_back(
        make_record(step, z, l, crit->residual, last_dt, last_drift, snapshot));

    if (crit->residual <= cfg.grad_tol * perimeter) {
      result.reason = StopReason::Converged;
      break;
    }
    if (step >= cfg.max_steps) {
      result.reason = StopReason::MaxSteps;
      break;
    }

    const double area_before = oriented_area(z);
    double dt = cfg.dt;
    bool accepted = false;
    while (!accepted) {
      if (dt < cfg.dt * 1e-12) {
        result.reason = StopReason::StepUnderflow;
        break;
      }
      const Polygon trial = z + dt * crit->gradient;
      const double drift = min_l2_drift(z, trial);
      Polygon projected = trial;
      try {
        projected = newton_reproject(trial, l, cfg.eps_constraint, cfg.newton_max_iter);
      } catch (const Error&) {
        dt *= cfg.dt_backoff;
        continue;
      }
      const double area_after = oriented_area(projected);
      if (area_after < area_before - 1e-12 * std::max(1.0, std::abs(area_before))) {
        dt *= cfg.dt_backoff;
        continue;
      }
      z = projected;
      last_dt = dt;
      last_drift = drift;
      accepted = true;
    }
    if (!accepted) break;
  }

  // The last record always carries a snapshot.
  if (!result.trajectory.steps.empty() && !result.trajectory.steps.back().snapshot) {
    result.trajectory.steps.back().snapshot = z.values();
  }
  result.polygon = std::move(z);
  return result;
}

Polygon random_constrained_polygon(const LengthSpec& l, std::uint64_t seed) {
  if (!l.admissible) {
    throw ValidationError("random_constrained_polygon: lengths are not admissible");
  }
  Rng rng(seed);
  const double perimeter = l.perimeter();
  constexpr int budget = 32;
  for (int attempt = 0; attempt < budget; ++attempt) {
    EdgeField zeta(l.size());
    for (int nu = 0; nu < l.n(); ++nu) {
      zeta[nu] = std::polar(l.lengths[static_cast<std::size_t>(nu)], rng.next_angle());
    }
    // Distribute the closure defect proportionally to the lengths so the
    // edge cycle sums to zero exactly.
    const Complex defect = field_sum(zeta);
    bool degenerate = false;
    for (int nu = 0; nu < l.n(); ++nu) {
      zeta[nu] -= (l.lengths[static_cast<std::size_t>(nu)] / perimeter) * defect;
      if (std::abs(zeta[nu]) < 0.05 * l.lengths[static_cast<std::size_t>(nu)]) degenerate = true;
    }
    if (degenerate) continue;
    const Polygon guess = integrate_e2v(zeta);
    try {
      // The reprojection map contracts linearly (observed rate 0.6 to 0.8 per
      // sweep from order-one defects), so a raw draw needs well over the
      // default 50 sweeps to reach 1e-12.
      return newton_reproject(guess, l, 1e-12, 250);
    } catch (const Error&) {
      continue;
    }
  }
  throw InitFailure("random_constrained_polygon: no feasible start in " + std::to_string(budget) +
                    " attempts");
}

namespace {

// Rotates z so its first non-collapsed edge points along the positive real
// axis; the clustering representative frame.
Polygon rotation_normalize(const Polygon& z, const LengthSpec& l) {
  for (int nu = 0; nu < z.n(); ++nu) {
    const Complex zeta = z.wrapped(nu + 1) - z[nu];
    if (std::abs(zeta) > 1e-12 * l.lengths[static_cast<std::size_t>(nu)]) {
      return (std::conj(zeta) / std::abs(zeta)) * z;
    }
  }
  return z;
}

double vertex_distance(const Polygon& a, const Polygon& b) {
  double worst = 0.0;
  for (int i = 0; i < a.n(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

EnumerationResult enumerate_critical(const LengthSpec& l, int n_starts, const FlowConfig& cfg,
                                     std::uint64_t seed) {
  if (n_starts < 0) throw ValidationError("enumerate_critical: n_starts must be nonnegative");
  if (!l.admissible) {
    throw ValidationError("enumerate_critical: lengths are not admissible");
  }
  if (!l.regular) {
    std::string signs;
    for (int s : *l.singular_signs) signs += s > 0 ? '+' : '-';
    throw ValidationError("enumerate_critical: lengths are not regular; signs (" + signs +
                          ") cancel the edge vector sum");
  }
  EnumerationResult out;
  out.total_starts = n_starts;
  const double cluster_tol = 1e-4 * l.perimeter();
  for (int k = 0; k < n_starts; ++k) {
    const std::uint64_t sub_seed = Rng::derive(seed, static_cast<std::uint64_t>(k));
    Polygon start(l.size());
    try {
      start = random_constrained_polygon(l, sub_seed);
    } catch (const Error&) {
      ++out.failed_starts;
      continue;
    }
    const FlowResult run = run_flow(start, l, cfg);
    if (run.reason != StopReason::Converged) {
      ++out.failed_starts;
      continue;
    }
    const double residual = run.trajectory.steps.back().residual;
    const auto absorb = [&](const Polygon& endpoint) {
      const double area = oriented_area(endpoint);
      for (auto& cluster : out.clusters) {
        if (vertex_distance(endpoint, cluster.representative) <= cluster_tol) {
          cluster.mean_area = (cluster.mean_area * cluster.count + area) / (cluster.count + 1);
          cluster.count += 1;
          cluster.residual = std::max(cluster.residual, residual);
          return;
        }
      }
      out.clusters.push_back({endpoint, area, 1, residual});
    };
    // Ascent only reaches area maxima, but conjugation maps critical polygons
    // to critical polygons with the same edge lengths and opposite area, so
    // each endpoint is recorded together with its mirror image.
    absorb(rotation_normalize(run.polygon, l));
    absorb(rotation_normalize(conj_c(run.polygon), l));
  }
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const CriticalCluster& a, const CriticalCluster& b) { return a.mean_area > b.mean_area; });
  return out;
}

}  // namespace polyflow
