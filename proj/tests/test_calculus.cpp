#include "doctest.h"

#include <cmath>

#include "polyflow/calculus.hpp"
#include "polyflow/oracle.hpp"
#include "polyflow/rng.hpp"

using namespace polyflow;

namespace {

template <class F>
F random_field(CycleSize size, Rng& rng) {
  F out(size);
  for (int i = 0; i < out.n(); ++i) out[i] = Complex(rng.next_in(-1, 1), rng.next_in(-1, 1));
  return out;
}

template <class F>
double rel_err(const F& got, const F& want) {
  return norm(got - want) / std::max(1.0, norm(want));
}

const VertexField kSquare(CycleSize(4),
                          {Complex(0, 0), Complex(1, 0), Complex(1, 1), Complex(0, 1)});

}  // namespace

TEST_CASE("forward difference of the unit square") {
  const EdgeField d = derivative_v2e(kSquare);
  CHECK(d[0] == Complex(1, 0));
  CHECK(d[1] == Complex(0, 1));
  CHECK(d[2] == Complex(-1, 0));
  CHECK(d[3] == Complex(0, -1));
}

TEST_CASE("backward difference of an edge field") {
  const EdgeField zeta(CycleSize(4), {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)});
  const VertexField d = derivative_e2v(zeta);
  CHECK(d[0] == Complex(1, 1));
  CHECK(d[1] == Complex(-1, 1));
  CHECK(d[2] == Complex(-1, -1));
  CHECK(d[3] == Complex(1, -1));
}

TEST_CASE("midpoint of the unit square") {
  const EdgeField m = midpoint_v2e(kSquare);
  CHECK(m[0] == Complex(0.5, 0));
  CHECK(m[1] == Complex(1, 0.5));
  CHECK(m[2] == Complex(0.5, 1));
  CHECK(m[3] == Complex(0, 0.5));
}

TEST_CASE("integrate then differentiate is the centering projector") {
  // D(I(e0)) = e0 - (1/4) * ones.
  EdgeField e0(CycleSize(4));
  e0[0] = 1.0;
  const EdgeField back = derivative_v2e(integrate_e2v(e0));
  CHECK(std::abs(back[0] - Complex(0.75, 0)) < 1e-14);
  CHECK(std::abs(back[1] - Complex(-0.25, 0)) < 1e-14);
  CHECK(std::abs(back[2] - Complex(-0.25, 0)) < 1e-14);
  CHECK(std::abs(back[3] - Complex(-0.25, 0)) < 1e-14);
}

TEST_CASE("both inverse orders reproduce the centering projector") {
  Rng rng(41);
  for (int n : {3, 4, 5, 8, 13}) {
    const CycleSize size(n);
    const auto zeta = random_field<EdgeField>(size, rng);
    const auto z = random_field<VertexField>(size, rng);

    CHECK(rel_err(derivative_v2e(integrate_e2v(zeta)), center(zeta)) < 1e-13);
    CHECK(rel_err(integrate_v2e(derivative_e2v(zeta)), center(zeta)) < 1e-13);
    CHECK(rel_err(derivative_e2v(integrate_v2e(z)), center(z)) < 1e-13);
    CHECK(rel_err(integrate_e2v(derivative_v2e(z)), center(z)) < 1e-13);

    // The integral itself is centered.
    CHECK(std::abs(field_sum(integrate_e2v(zeta))) < 1e-13 * static_cast<double>(n));
    CHECK(std::abs(field_sum(integrate_v2e(z))) < 1e-13 * static_cast<double>(n));
  }
}

TEST_CASE("difference and midpoint adjoints") {
  Rng rng(42);
  for (int n : {3, 5, 9}) {
    const CycleSize size(n);
    const auto z = random_field<VertexField>(size, rng);
    const auto eta = random_field<EdgeField>(size, rng);

    // <Dz, eta> = -<z, D eta>: the two difference maps are mutual negative
    // adjoints, and likewise the midpoint maps are mutual adjoints.
    CHECK(std::abs(hermitian(derivative_v2e(z), eta) + hermitian(z, derivative_e2v(eta))) < 1e-12);
    CHECK(std::abs(hermitian(midpoint_v2e(z), eta) - hermitian(z, midpoint_e2v(eta))) < 1e-12);
    CHECK(std::abs(hermitian(integrate_v2e(z), eta) + hermitian(z, integrate_e2v(eta))) < 1e-12);

    // The smoothing kernel is antisymmetric on each index set.
    const auto z2 = random_field<VertexField>(size, rng);
    CHECK(std::abs(hermitian(smooth_k(z), z2) + hermitian(z, smooth_k(z2))) < 1e-12);
  }
}

TEST_CASE("difference and midpoint commute through the centered average") {
  Rng rng(43);
  for (int n : {4, 7}) {
    const auto z = random_field<VertexField>(CycleSize(n), rng);
    const VertexField md = midpoint_e2v(derivative_v2e(z));
    const VertexField dm = derivative_e2v(midpoint_v2e(z));
    VertexField half_centered(z.size());
    for (int i = 0; i < n; ++i) half_centered[i] = 0.5 * (z.wrapped(i + 1) - z.wrapped(i - 1));
    CHECK(rel_err(md, half_centered) < 1e-14);
    CHECK(rel_err(dm, half_centered) < 1e-14);
  }
}

TEST_CASE("discrete Leibniz rule") {
  Rng rng(44);
  for (int n : {3, 6, 10}) {
    const CycleSize size(n);
    const auto alpha = random_field<VertexField>(size, rng);
    const auto z = random_field<VertexField>(size, rng);
    const EdgeField lhs = derivative_v2e(diag(alpha, z));
    const EdgeField rhs =
        diag(midpoint_v2e(alpha), derivative_v2e(z)) + diag(derivative_v2e(alpha), midpoint_v2e(z));
    CHECK(rel_err(lhs, rhs) < 1e-13);
  }
}

TEST_CASE("integration by parts in both factor orders") {
  Rng rng(45);
  for (int n : {4, 6, 11}) {
    const CycleSize size(n);
    const auto a = random_field<VertexField>(size, rng);
    const auto zeta = random_field<EdgeField>(size, rng);
    const auto alpha = random_field<EdgeField>(size, rng);
    const auto z = random_field<VertexField>(size, rng);

    // D.diag(a).I = diag(Ma).pi0 + diag(Da).K on edge fields.
    const EdgeField lhs1 = derivative_v2e(diag(a, integrate_e2v(zeta)));
    const EdgeField rhs1 =
        diag(midpoint_v2e(a), center(zeta)) + diag(derivative_v2e(a), smooth_k(zeta));
    CHECK(rel_err(lhs1, rhs1) < 1e-13);

    // I.diag(alpha).D = pi0.diag(M alpha) - K.diag(D alpha) on vertex fields.
    const VertexField lhs2 = integrate_e2v(diag(alpha, derivative_v2e(z)));
    const VertexField rhs2 =
        center(diag(midpoint_e2v(alpha), z)) - smooth_k(diag(derivative_e2v(alpha), z));
    CHECK(rel_err(lhs2, rhs2) < 1e-13);
  }
}

TEST_CASE("kernel convolution matches the dense solve") {
  Rng rng(46);
  for (int n : {3, 5, 9, 17, 32}) {
    const CycleSize size(n);
    for (int trial = 0; trial < 5; ++trial) {
      const auto zeta = random_field<EdgeField>(size, rng);
      const auto z = random_field<VertexField>(size, rng);
      CHECK(rel_err(integrate_e2v(zeta), solve_integrate_e2v(zeta)) < 1e-12);
      CHECK(rel_err(integrate_v2e(z), solve_integrate_v2e(z)) < 1e-12);
    }
  }
}

TEST_CASE("centering removes the mean and nothing else") {
  VertexField z(CycleSize(3), {Complex(3, 0), Complex(0, 3), Complex(0, 0)});
  const VertexField c = center(z);
  CHECK(std::abs(field_sum(c)) < 1e-14);
  CHECK(std::abs(c[0] - Complex(2, -1)) < 1e-14);
  CHECK(std::abs(c[1] - Complex(-1, 2)) < 1e-14);
  CHECK(std::abs(c[2] - Complex(-1, -1)) < 1e-14);
}
