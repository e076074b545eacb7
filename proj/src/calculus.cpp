#include "polyflow/calculus.hpp"

#include <vector>

namespace polyflow {

EdgeField derivative_v2e(const VertexField& z) {
  EdgeField out(z.size());
  for (int n = 0; n < z.n(); ++n) out[n] = z.wrapped(n + 1) - z[n];
  return out;
}

VertexField derivative_e2v(const EdgeField& zeta) {
  VertexField out(zeta.size());
  for (int n = 0; n < zeta.n(); ++n) out[n] = zeta[n] - zeta.wrapped(n - 1);
  return out;
}

EdgeField midpoint_v2e(const VertexField& z) {
  EdgeField out(z.size());
  for (int n = 0; n < z.n(); ++n) out[n] = 0.5 * (z.wrapped(n + 1) + z[n]);
  return out;
}

VertexField midpoint_e2v(const EdgeField& zeta) {
  VertexField out(zeta.size());
  for (int n = 0; n < zeta.n(); ++n) out[n] = 0.5 * (zeta[n] + zeta.wrapped(n - 1));
  return out;
}

namespace {

// B at the half-integer offsets k + 1/2, k = 0..N-1.
std::vector<double> half_offset_kernel(CycleSize size) {
  std::vector<double> w(static_cast<std::size_t>(size.value()));
  for (int k = 0; k < size.value(); ++k) {
    w[static_cast<std::size_t>(k)] = b_kernel(static_cast<double>(k) + 0.5, size);
  }
  return w;
}

}  // namespace

VertexField integrate_e2v(const EdgeField& zeta) {
  const int n = zeta.n();
  const auto w = half_offset_kernel(zeta.size());
  VertexField out(zeta.size());
  // kappa = k + 1/2 shifts edge slot n - 1 - k into vertex n.
  for (int i = 0; i < n; ++i) {
    Complex s{};
    for (int k = 0; k < n; ++k) s += w[static_cast<std::size_t>(k)] * zeta.wrapped(i - 1 - k);
    out[i] = s;
  }
  return out;
}

EdgeField integrate_v2e(const VertexField& z) {
  const int n = z.n();
  const auto w = half_offset_kernel(z.size());
  EdgeField out(z.size());
  // kappa = k + 1/2 shifts vertex n - k into edge slot n.
  for (int i = 0; i < n; ++i) {
    Complex s{};
    for (int k = 0; k < n; ++k) s += w[static_cast<std::size_t>(k)] * z.wrapped(i - k);
    out[i] = s;
  }
  return out;
}

}  // namespace polyflow
