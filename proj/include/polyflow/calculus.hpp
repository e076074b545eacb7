#pragma once

#include "polyflow/fields.hpp"

namespace polyflow {

// Discrete calculus on the cyclic graph: vertices n, edges at slots n holding
// half-integer index n + 1/2. The four structural operators
//
//   D : difference,  M : midpoint average,  pi0 : centering,  I : D^-1
//
// come in vertex->edge and edge->vertex flavours that are mutually adjoint up
// to sign: D* = -D, M* = M, I* = -I, K* = -K with K = M.I. I is the inverse
// of D between zero-sum subspaces, realised as an O(N^2) cyclic convolution
// against the kernel B of cyclic.hpp; it annihilates constants and outputs
// zero-sum fields, so D.I = I.D = pi0.

// (Dz)_(n+1/2) = z_(n+1) - z_n
[[nodiscard]] EdgeField derivative_v2e(const VertexField& z);

// (Dzeta)_n = zeta_(n+1/2) - zeta_(n-1/2)
[[nodiscard]] VertexField derivative_e2v(const EdgeField& zeta);

// (Mz)_(n+1/2) = (z_(n+1) + z_n) / 2
[[nodiscard]] EdgeField midpoint_v2e(const VertexField& z);

// (Mzeta)_n = (zeta_(n+1/2) + zeta_(n-1/2)) / 2
[[nodiscard]] VertexField midpoint_e2v(const EdgeField& zeta);

// pi0: subtracts the mean, projecting onto the zero-sum subspace.
template <AnyField F>
[[nodiscard]] F center(const F& x) {
  const Complex m = field_mean(x);
  F out(x.size());
  for (int i = 0; i < x.n(); ++i) out[i] = x[i] - m;
  return out;
}

// (I.zeta)_n = sum_kappa B(kappa) zeta_(n - kappa), kappa over half-integers.
[[nodiscard]] VertexField integrate_e2v(const EdgeField& zeta);

// (I.z)_(n+1/2) = sum_kappa B(kappa) z_(n + 1/2 - kappa).
[[nodiscard]] EdgeField integrate_v2e(const VertexField& z);

// K = M.I, kind-preserving: (K.x)_n = sum_k B(k) x_(n-k) over integer shifts
// (the k = 0 term drops since B(0) = 0).
template <AnyField F>
[[nodiscard]] F smooth_k(const F& x) {
  const int n = x.n();
  F out(x.size());
  for (int i = 0; i < n; ++i) {
    Complex s{};
    for (int k = 1; k < n; ++k) {
      s += b_kernel(static_cast<double>(k), x.size()) * x.wrapped(i - k);
    }
    out[i] = s;
  }
  return out;
}

}  // namespace polyflow
