#include "polyflow/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "polyflow/calculus.hpp"
#include "polyflow/flow.hpp"
#include "polyflow/oracle.hpp"
#include "polyflow/rng.hpp"
#include "polyflow/shape_space.hpp"

namespace polyflow {

namespace {

constexpr int kSizes[] = {4, 5, 6, 7, 12};
constexpr double kTol = 1e-10;

template <AnyField F>
F random_field(Rng& rng, CycleSize size) {
  F out(size);
  for (int i = 0; i < out.n(); ++i) out[i] = Complex(rng.next_in(-1, 1), rng.next_in(-1, 1));
  return out;
}

// Relative deviation of x from y against the larger of their norms and 1.
template <AnyField F>
double rel_err(const F& x, const F& y) {
  return norm(x - y) / std::max({1.0, norm(x), norm(y)});
}

double rel_err(Complex x, Complex y) {
  return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
}

// Selftest-local realisation of I on edge fields, built straight from the
// kernel definition. `corruption` offsets the first tap; the D.I=pi0 suite
// must notice.
VertexField local_integrate_e2v(const EdgeField& zeta, double corruption) {
  const int n = zeta.n();
  VertexField out(zeta.size());
  for (int i = 0; i < n; ++i) {
    Complex s{};
    for (int k = 0; k < n; ++k) {
      double w = b_kernel(static_cast<double>(k) + 0.5, zeta.size());
      if (k == 0) w += corruption;
      s += w * zeta.wrapped(i - 1 - k);
    }
    out[i] = s;
  }
  return out;
}

struct Suite {
  std::string name;
  double max_err = 0.0;

  void feed(double err) { max_err = std::max(max_err, err); }
  [[nodiscard]] bool pass() const { return max_err <= kTol; }
};

LengthSpec generic_lengths(int n, Rng& rng) {
  std::vector<double> l(static_cast<std::size_t>(n));
  for (auto& v : l) v = rng.next_in(0.8, 1.2);
  return make_length_spec(std::move(l));
}

}  // namespace

int run_selftest(const SelftestOptions& options, std::ostream& out) {
  std::vector<Suite> suites;

  {
    Suite s{"D.I=pi0"};
    Rng rng(options.seed);
    for (const int n : kSizes) {
      const CycleSize size(n);
      for (int t = 0; t < options.trials; ++t) {
        const auto zeta = random_field<EdgeField>(rng, size);
        const auto z = random_field<VertexField>(rng, size);
        s.feed(rel_err(derivative_v2e(integrate_e2v(zeta)), center(zeta)));
        s.feed(rel_err(integrate_v2e(derivative_e2v(zeta)), center(zeta)));
        s.feed(rel_err(derivative_e2v(integrate_v2e(z)), center(z)));
        s.feed(rel_err(integrate_e2v(derivative_v2e(z)), center(z)));
        s.feed(rel_err(derivative_v2e(local_integrate_e2v(zeta, options.kernel_corruption)),
                       center(zeta)));
      }
    }
    suites.push_back(s);
  }

  {
    Suite s{"adjoint"};
    Rng rng(options.seed + 1);
    for (const int n : kSizes) {
      const CycleSize size(n);
      for (int t = 0; t < options.trials; ++t) {
        const auto z = random_field<VertexField>(rng, size);
        const auto w = random_field<VertexField>(rng, size);
        const auto zeta = random_field<EdgeField>(rng, size);
        s.feed(rel_err(hermitian(derivative_v2e(z), zeta), -hermitian(z, derivative_e2v(zeta))));
        s.feed(rel_err(hermitian(midpoint_v2e(z), zeta), hermitian(z, midpoint_e2v(zeta))));
        s.feed(rel_err(hermitian(integrate_v2e(z), zeta), -hermitian(z, integrate_e2v(zeta))));
        s.feed(rel_err(hermitian(smooth_k(z), w), -hermitian(z, smooth_k(w))));
      }
    }
    suites.push_back(s);
  }

  {
    Suite s{"commute"};
    Rng rng(options.seed + 2);
    for (const int n : kSizes) {
      const CycleSize size(n);
      for (int t = 0; t < options.trials; ++t) {
        const auto z = random_field<VertexField>(rng, size);
        const auto dz = derivative_v2e(z);
        s.feed(rel_err(derivative_v2e(center(z)), dz));
        s.feed(rel_err(center(dz), dz));
        s.feed(rel_err(midpoint_v2e(center(z)), center(midpoint_v2e(z))));
        const auto md = midpoint_e2v(derivative_v2e(z));
        s.feed(rel_err(md, derivative_e2v(midpoint_v2e(z))));
        VertexField stencil(size);
        for (int k = 0; k < n; ++k) stencil[k] = 0.5 * (z.wrapped(k + 1) - z.wrapped(k - 1));
        s.feed(rel_err(md, stencil));
      }
    }
    suites.push_back(s);
  }

  {
    Suite s{"leibniz"};
    Rng rng(options.seed + 3);
    for (const int n : kSizes) {
      const CycleSize size(n);
      for (int t = 0; t < options.trials; ++t) {
        const auto a = random_field<VertexField>(rng, size);
        const auto z = random_field<VertexField>(rng, size);
        s.feed(rel_err(derivative_v2e(diag(a, z)),
                       diag(midpoint_v2e(a), derivative_v2e(z)) + diag(derivative_v2e(a), midpoint_v2e(z))));
        const auto b = random_field<EdgeField>(rng, size);
        const auto zeta = random_field<EdgeField>(rng, size);
        s.feed(rel_err(derivative_e2v(diag(b, zeta)),
                       diag(midpoint_e2v(b), derivative_e2v(zeta)) + diag(derivative_e2v(b), midpoint_e2v(zeta))));
      }
    }
    suites.push_back(s);
  }

  {
    Suite s{"parts"};
    Rng rng(options.seed + 4);
    for (const int n : kSizes) {
      const CycleSize size(n);
      for (int t = 0; t < options.trials; ++t) {
        const auto a = random_field<VertexField>(rng, size);
        const auto zeta = random_field<EdgeField>(rng, size);
        // D.diag(a).I = diag(Ma).pi0 + diag(Da).K on edge fields.
        s.feed(rel_err(derivative_v2e(diag(a, integrate_e2v(zeta))),
                       diag(midpoint_v2e(a), center(zeta)) + diag(derivative_v2e(a), smooth_k(zeta))));
        const auto alpha = random_field<EdgeField>(rng, size);
        const auto z = random_field<VertexField>(rng, size);
        // I.diag(alpha).D = pi0.diag(M alpha) - K.diag(D alpha) on vertex fields.
        s.feed(rel_err(integrate_e2v(diag(alpha, derivative_v2e(z))),
                       center(diag(midpoint_e2v(alpha), z)) - smooth_k(diag(derivative_e2v(alpha), z))));
      }
    }
    suites.push_back(s);
  }

  {
    Suite s{"kernel-vs-solve"};
    Rng rng(options.seed + 5);
    for (const int n : kSizes) {
      const CycleSize size(n);
      for (int t = 0; t < options.trials; ++t) {
        const auto zeta = random_field<EdgeField>(rng, size);
        const auto z = random_field<VertexField>(rng, size);
        s.feed(rel_err(integrate_e2v(zeta), solve_integrate_e2v(zeta)));
        s.feed(rel_err(integrate_v2e(z), solve_integrate_v2e(z)));
      }
    }
    suites.push_back(s);
  }

  {
    Suite s{"area-diff"};
    Rng rng(options.seed + 6);
    // The area is a quadratic form, so the central difference is exact up to
    // roundoff; a coarse step keeps the roundoff term near 1e-13.
    constexpr double h = 1e-3;
    for (const int n : kSizes) {
      const CycleSize size(n);
      for (int t = 0; t < std::max(1, options.trials / 4); ++t) {
        const auto z = random_field<VertexField>(rng, size);
        const auto dir = random_field<VertexField>(rng, size);
        const double fd =
            (oriented_area(z + h * dir) - oriented_area(z + (-h) * dir)) / (2.0 * h);
        s.feed(rel_err(Complex(area_differential(z, dir), 0), Complex(fd, 0)));
        // R-linearity.
        const auto dir2 = random_field<VertexField>(rng, size);
        const double lin = area_differential(z, 2.0 * dir + (-0.5) * dir2);
        s.feed(rel_err(Complex(lin, 0),
                       Complex(2.0 * area_differential(z, dir) - 0.5 * area_differential(z, dir2), 0)));
      }
    }
    suites.push_back(s);
  }

  {
    Suite s{"pairing"};
    Rng rng(options.seed + 7);
    for (const int n : kSizes) {
      for (int t = 0; t < std::max(1, options.trials / 10); ++t) {
        const LengthSpec l = generic_lengths(n, rng);
        const Polygon z = random_constrained_polygon(l, rng.next_u64());
        const CriticalityData crit = criticality(z, l);
        const EdgeField alpha = turning(z, l);
        for (int rep = 0; rep < 5; ++rep) {
          const auto raw = random_field<VertexField>(rng, z.size());
          const VertexField sp = project_to_parameter_space(alpha, raw);
          const VertexField tangent = conj_c(sp) - j_alpha_apply(alpha, sp);
          s.feed(rel_err(Complex(area_differential(z, tangent), 0),
                         Complex(real_inner(crit.a, sp), 0)));
        }
      }
    }
    suites.push_back(s);
  }

  {
    Suite s{"gradient"};
    Rng rng(options.seed + 8);
    for (const int n : kSizes) {
      for (int t = 0; t < std::max(1, options.trials / 10); ++t) {
        const LengthSpec l = generic_lengths(n, rng);
        const Polygon z = random_constrained_polygon(l, rng.next_u64());
        const CriticalityData crit = criticality(z, l);
        // Tangency of the gradient to every constraint.
        const EdgeField zeta = derivative_v2e(z);
        const EdgeField dgrad = derivative_v2e(crit.gradient);
        for (int nu = 0; nu < n; ++nu) {
          s.feed(std::abs((std::conj(zeta[nu]) * dgrad[nu]).real()) /
                 std::max(1.0, norm(crit.gradient)));
        }
        s.feed(std::abs(field_sum(crit.gradient)) / std::max(1.0, norm(crit.gradient)));
        // d_zA(grad A) = ||a||^2.
        s.feed(rel_err(Complex(area_differential(z, crit.gradient), 0),
                       Complex(crit.residual * crit.residual, 0)));
        // Rotation equivariance of the residual.
        const Polygon rotated = std::polar(1.0, 0.7) * z;
        const CriticalityData crit_rot = criticality(rotated, l);
        s.feed(rel_err(Complex(crit_rot.residual, 0), Complex(crit.residual, 0)));
      }
    }
    suites.push_back(s);
  }

  bool all_pass = true;
  for (const auto& s : suites) {
    all_pass = all_pass && s.pass();
    out << (s.pass() ? "[ ok ] " : "[FAIL] ") << std::left << std::setw(16) << s.name
        << " max relative error " << std::scientific << std::setprecision(2) << s.max_err
        << std::defaultfloat << " (N=4,5,6,7,12)\n";
  }
  out << (all_pass ? "selftest: all suites passed\n" : "selftest: FAILURES above\n");
  return all_pass ? 0 : 1;
}

}  // namespace polyflow
