#include "polyflow/shape_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "polyflow/calculus.hpp"

namespace polyflow {

double LengthSpec::perimeter() const {
  return std::accumulate(lengths.begin(), lengths.end(), 0.0);
}

namespace {

// Exact sign enumeration in Gray-code order with the first sign pinned to +
// (eps and -eps are the same witness). O(2^(N-1)) adds.
std::optional<std::vector<int>> gray_code_witness(const std::vector<double>& l, double tol) {
  const int n = static_cast<int>(l.size());
  std::vector<int> signs(static_cast<std::size_t>(n), 1);
  double sum = std::accumulate(l.begin(), l.end(), 0.0);
  if (std::abs(sum) <= tol) return signs;
  const std::uint64_t count = 1ULL << (n - 1);
  std::uint64_t gray_prev = 0;
  for (std::uint64_t m = 1; m < count; ++m) {
    const std::uint64_t gray = m ^ (m >> 1);
    const std::uint64_t flipped = gray ^ gray_prev;  // single bit
    gray_prev = gray;
    int idx = 0;
    std::uint64_t f = flipped;
    while ((f >>= 1) != 0) ++idx;
    ++idx;  // bit b toggles sign of entry b+1; entry 0 stays +
    signs[static_cast<std::size_t>(idx)] = -signs[static_cast<std::size_t>(idx)];
    sum += 2.0 * signs[static_cast<std::size_t>(idx)] * l[static_cast<std::size_t>(idx)];
    if (std::abs(sum) <= tol) return signs;
  }
  return std::nullopt;
}

// Meet-in-the-middle for larger N: all signed sums of each half, one side
// sorted, the other binary-searched for a cancelling partner.
std::optional<std::vector<int>> split_witness(const std::vector<double>& l, double tol) {
  const int n = static_cast<int>(l.size());
  const int h = n / 2;
  struct Entry {
    double sum;
    std::uint64_t mask;
  };
  std::vector<Entry> left;
  left.reserve(1ULL << h);
  for (std::uint64_t m = 0; m < (1ULL << h); ++m) {
    double s = 0.0;
    for (int i = 0; i < h; ++i) s += ((m >> i) & 1U) ? -l[static_cast<std::size_t>(i)] : l[static_cast<std::size_t>(i)];
    left.push_back({s, m});
  }
  std::sort(left.begin(), left.end(), [](const Entry& a, const Entry& b) { return a.sum < b.sum; });
  const int rest = n - h;
  for (std::uint64_t m = 0; m < (1ULL << rest); ++m) {
    double s = 0.0;
    for (int i = 0; i < rest; ++i) {
      s += ((m >> i) & 1U) ? -l[static_cast<std::size_t>(h + i)] : l[static_cast<std::size_t>(h + i)];
    }
    // Need a left sum within tol of -s.
    const double target = -s;
    auto it = std::lower_bound(left.begin(), left.end(), target - tol,
                               [](const Entry& e, double v) { return e.sum < v; });
    if (it != left.end() && it->sum <= target + tol) {
      std::vector<int> signs(static_cast<std::size_t>(n), 1);
      for (int i = 0; i < h; ++i) signs[static_cast<std::size_t>(i)] = ((it->mask >> i) & 1U) ? -1 : 1;
      for (int i = 0; i < rest; ++i) signs[static_cast<std::size_t>(h + i)] = ((m >> i) & 1U) ? -1 : 1;
      if (signs[0] < 0) {
        for (auto& sgn : signs) sgn = -sgn;
      }
      return signs;
    }
  }
  return std::nullopt;
}

}  // namespace

LengthSpec make_length_spec(std::vector<double> lengths) {
  if (lengths.size() < 3) {
    throw ValidationError("length spec needs at least 3 edges, got " + std::to_string(lengths.size()));
  }
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!(lengths[i] > 0.0)) {
      throw NonPositiveLength("length " + std::to_string(i) + " is " + std::to_string(lengths[i]) +
                              ", must be positive");
    }
  }
  LengthSpec spec;
  spec.lengths = std::move(lengths);
  const double perim = spec.perimeter();
  spec.admissible = std::all_of(spec.lengths.begin(), spec.lengths.end(),
                                [&](double v) { return v < 0.5 * perim; });
  const double tol = 1e-12 * perim;
  const auto witness = spec.n() <= 24 ? gray_code_witness(spec.lengths, tol) : split_witness(spec.lengths, tol);
  spec.regular = !witness.has_value();
  spec.singular_signs = witness;
  return spec;
}

LengthSpec measured_lengths(const Polygon& z) {
  std::vector<double> l(static_cast<std::size_t>(z.n()));
  for (int k = 0; k < z.n(); ++k) l[static_cast<std::size_t>(k)] = std::abs(z.wrapped(k + 1) - z[k]);
  return make_length_spec(std::move(l));
}

double membership_residual(const Polygon& z, const LengthSpec& l) {
  if (z.n() != l.n()) {
    throw SizeMismatch("membership_residual: polygon N=" + std::to_string(z.n()) + " vs lengths N=" +
                       std::to_string(l.n()));
  }
  double worst = 0.0;
  for (int nu = 0; nu < z.n(); ++nu) {
    const double l2 = l.lengths[static_cast<std::size_t>(nu)] * l.lengths[static_cast<std::size_t>(nu)];
    const double d2 = std::norm(z.wrapped(nu + 1) - z[nu]);
    worst = std::max(worst, std::abs(d2 - l2) / l2);
  }
  return std::max(worst, std::abs(field_sum(z)) / l.perimeter());
}

EdgeField turning(const Polygon& z, const LengthSpec& l) {
  if (z.n() != l.n()) {
    throw SizeMismatch("turning: polygon N=" + std::to_string(z.n()) + " vs lengths N=" + std::to_string(l.n()));
  }
  EdgeField alpha(z.size());
  for (int nu = 0; nu < z.n(); ++nu) {
    const Complex zeta = z.wrapped(nu + 1) - z[nu];
    const double len = std::abs(zeta);
    if (len < 1e-12 * l.lengths[static_cast<std::size_t>(nu)]) {
      throw ZeroEdge("turning: edge " + std::to_string(nu) + " has collapsed");
    }
    alpha[nu] = zeta * zeta / (len * len);
  }
  return alpha;
}

VertexField j_alpha_apply(const EdgeField& alpha, const VertexField& s) {
  return integrate_e2v(diag(alpha, derivative_v2e(s)));
}

VertexField project_to_parameter_space(const EdgeField& alpha, const VertexField& s) {
  VertexField out = center(s);
  const VertexField u = conj_c(derivative_e2v(alpha));
  const double u2 = real_inner(u, u);
  // u = 0 exactly when alpha is constant; then S_z is just the zero-sum space.
  if (u2 > 1e-24 * static_cast<double>(s.n())) {
    out = out - (hermitian(out, u) / u2) * u;
  }
  return out;
}

VertexField tangent_lift(const EdgeField& alpha, const VertexField& s) {
  const VertexField sp = project_to_parameter_space(alpha, s);
  return conj_c(sp) - j_alpha_apply(alpha, sp);
}

int tangent_dimension(const EdgeField& alpha) {
  double spread = 0.0;
  for (int nu = 0; nu < alpha.n(); ++nu) spread = std::max(spread, std::abs(alpha[nu] - alpha[0]));
  return spread <= 1e-10 ? alpha.n() - 1 : alpha.n() - 2;
}

CriticalityData criticality(const Polygon& z, const LengthSpec& l, double membership_tol) {
  const double member = membership_residual(z, l);
  if (member > membership_tol) {
    throw ConstraintViolation("criticality: membership residual " + std::to_string(member) +
                              " exceeds tolerance " + std::to_string(membership_tol));
  }
  if (is_collinear(z)) {
    throw CollinearPolygon("criticality: polygon is collinear; the turning field is singular");
  }
  const EdgeField alpha = turning(z, l);
  const VertexField dalpha = derivative_e2v(alpha);

  VertexField a_tilde(z.size());
  for (int n = 0; n < z.n(); ++n) {
    a_tilde[n] = Complex(0.0, 1.0) *
                 (std::conj(z.wrapped(n + 1) - z.wrapped(n - 1)) + z[n] * std::conj(dalpha[n]));
  }

  // The 1-component of a~ vanishes identically (the sum telescopes against
  // the closed edge cycle); a gross violation means inconsistent input.
  const double scale = norm(a_tilde) + polygon_perimeter(z);
  if (std::abs(field_sum(a_tilde)) > 1e-8 * scale) {
    throw ConstraintViolation("criticality: nonzero mean in the area representative");
  }

  const VertexField u = conj_c(dalpha);
  const double u2 = real_inner(u, u);
  if (u2 <= 1e-24 * static_cast<double>(z.n())) {
    throw CollinearPolygon("criticality: turning field is constant; polygon is degenerate");
  }

  CriticalityData out{std::move(a_tilde), VertexField(z.size()), 0.0, VertexField(z.size())};
  out.a = out.a_tilde - (hermitian(out.a_tilde, u) / u2) * u;
  out.residual = norm(out.a);
  out.gradient = conj_c(out.a) - j_alpha_apply(alpha, out.a);
  return out;
}

MultiplierReport lagrange_multipliers(const Polygon& z, const Circle& circle, double cocyclic_tol) {
  const int n = z.n();
  for (int k = 0; k < n; ++k) {
    const double off = std::abs(std::abs(z[k] - circle.center) - circle.radius);
    if (off > cocyclic_tol * circle.radius) {
      throw NotCocyclic("lagrange_multipliers: vertex " + std::to_string(k) + " is off the circle by " +
                        std::to_string(off));
    }
  }
  MultiplierReport report;
  report.lambda.resize(static_cast<std::size_t>(n));
  for (int nu = 0; nu < n; ++nu) {
    const Complex zeta = z.wrapped(nu + 1) - z[nu];
    if (std::abs(zeta) < 1e-12 * circle.radius) {
      throw ZeroEdge("lagrange_multipliers: edge " + std::to_string(nu) + " has collapsed");
    }
    // -i ((z_(nu+1/2) - o) + (z_(nu-1/2) - o)) / (z_(nu+1/2) - z_(nu-1/2))
    const Complex ratio = Complex(0.0, -1.0) * ((z.wrapped(nu + 1) - circle.center) + (z[nu] - circle.center)) / zeta;
    report.lambda[static_cast<std::size_t>(nu)] = ratio.real();
    report.max_imag_part = std::max(report.max_imag_part, std::abs(ratio.imag()));
  }
  for (int k = 0; k < n; ++k) {
    const double lm = report.lambda[static_cast<std::size_t>(edge_slot(z.size(), k, HalfStep::minus_half))];
    const double lp = report.lambda[static_cast<std::size_t>(edge_slot(z.size(), k, HalfStep::plus_half))];
    const Complex r = Complex(0.0, -1.0) * (z.wrapped(k + 1) - z.wrapped(k - 1)) +
                      lm * (z[k] - z.wrapped(k - 1)) - lp * (z.wrapped(k + 1) - z[k]) + report.mu;
    report.max_stationarity_residual = std::max(report.max_stationarity_residual, std::abs(r));
  }
  return report;
}

bool check_free_edge_critical(const Polygon& z, int edge, double tol, double cocyclic_tol) {
  const CircleFit fit = fit_circle(z);
  if (fit.relative_residual > cocyclic_tol) {
    throw NotCocyclic("check_free_edge_critical: circle fit residual " +
                      std::to_string(fit.relative_residual));
  }
  const int nu = z.size().wrap(edge);
  const Complex a = z[nu];
  const Complex b = z.wrapped(nu + 1);
  if (std::abs(b - a) < 1e-12 * fit.circle.radius) {
    throw ZeroEdge("check_free_edge_critical: edge " + std::to_string(nu) + " has collapsed");
  }
  return std::abs(0.5 * (a + b) - fit.circle.center) <= tol * fit.circle.radius;
}

bool check_perimeter_constrained_critical(const Polygon& z, double tol, double cocyclic_tol) {
  const CircleFit fit = fit_circle(z);
  if (fit.relative_residual > cocyclic_tol) {
    throw NotCocyclic("check_perimeter_constrained_critical: circle fit residual " +
                      std::to_string(fit.relative_residual));
  }
  const int n = z.n();
  auto step = [&](int k) {
    return std::arg((z.wrapped(k + 1) - fit.circle.center) / (z[k] - fit.circle.center));
  };
  const double first = step(0);
  for (int k = 1; k < n; ++k) {
    // Equality mod 2pi, compared on the circle to survive wraparound.
    const double diff = std::arg(std::polar(1.0, step(k) - first));
    if (std::abs(diff) > tol) return false;
  }
  return true;
}

}  // namespace polyflow
