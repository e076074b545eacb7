#pragma once

#include "polyflow/fields.hpp"

namespace polyflow {

// Verification-only realizations of the integration operator I, obtained by
// dense Gaussian elimination on the defining system
//
//   D.w = pi0(x),   sum_i w_i = 0,
//
// with no reference to the convolution kernel. They exist so tests and the
// selftest command can cross-check the kernel path against an independent
// route; production code should call integrate_e2v / integrate_v2e.

[[nodiscard]] VertexField solve_integrate_e2v(const EdgeField& zeta);
[[nodiscard]] EdgeField solve_integrate_v2e(const VertexField& z);

}  // namespace polyflow
