#include "polyflow/oracle.hpp"

#include <cmath>
#include <vector>

#include "polyflow/calculus.hpp"

namespace polyflow {

namespace {

// Solves the dense N x N complex system A.w = b by Gaussian elimination with
// partial pivoting. A is well conditioned here (difference rows plus a sum
// row), so no refinement is needed.
std::vector<Complex> dense_solve(std::vector<std::vector<Complex>> a, std::vector<Complex> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
    std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(pivot)]);
    const Complex d = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int r = col + 1; r < n; ++r) {
      const Complex f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / d;
      if (f == Complex{}) continue;
      for (int c = col; c < n; ++c) {
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
      }
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
    }
  }
  std::vector<Complex> w(static_cast<std::size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    Complex s = b[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < n; ++c) {
      s -= a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * w[static_cast<std::size_t>(c)];
    }
    w[static_cast<std::size_t>(r)] = s / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
  }
  return w;
}

}  // namespace

VertexField solve_integrate_e2v(const EdgeField& zeta) {
  const int n = zeta.n();
  const EdgeField rhs = center(zeta);
  // Rows 0..N-2: w_(nu+1) - w_nu = (pi0 zeta)_nu. Row N-1: sum w = 0. The
  // dropped difference row is implied (the difference rows sum to zero).
  std::vector<std::vector<Complex>> a(static_cast<std::size_t>(n),
                                      std::vector<Complex>(static_cast<std::size_t>(n), Complex{}));
  std::vector<Complex> b(static_cast<std::size_t>(n), Complex{});
  for (int nu = 0; nu < n - 1; ++nu) {
    a[static_cast<std::size_t>(nu)][static_cast<std::size_t>(nu + 1)] = Complex(1.0, 0.0);
    a[static_cast<std::size_t>(nu)][static_cast<std::size_t>(nu)] = Complex(-1.0, 0.0);
    b[static_cast<std::size_t>(nu)] = rhs[nu];
  }
  for (int c = 0; c < n; ++c) a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(c)] = Complex(1.0, 0.0);
  return VertexField(zeta.size(), dense_solve(std::move(a), std::move(b)));
}

EdgeField solve_integrate_v2e(const VertexField& z) {
  const int n = z.n();
  const VertexField rhs = center(z);
  // Rows 1..N-1: omega_(n+1/2) - omega_(n-1/2) = (pi0 z)_n, i.e. slot n minus
  // slot n-1. Row 0: sum omega = 0.
  std::vector<std::vector<Complex>> a(static_cast<std::size_t>(n),
                                      std::vector<Complex>(static_cast<std::size_t>(n), Complex{}));
  std::vector<Complex> b(static_cast<std::size_t>(n), Complex{});
  for (int row = 1; row < n; ++row) {
    a[static_cast<std::size_t>(row)][static_cast<std::size_t>(row)] = Complex(1.0, 0.0);
    a[static_cast<std::size_t>(row)][static_cast<std::size_t>(row - 1)] = Complex(-1.0, 0.0);
    b[static_cast<std::size_t>(row)] = rhs[row];
  }
  for (int c = 0; c < n; ++c) a[0][static_cast<std::size_t>(c)] = Complex(1.0, 0.0);
  return EdgeField(z.size(), dense_solve(std::move(a), std::move(b)));
}

}  // namespace polyflow
