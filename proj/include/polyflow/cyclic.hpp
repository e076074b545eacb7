#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "polyflow/errors.hpp"

namespace polyflow {

using Complex = std::complex<double>;

// Size of the cyclic vertex/edge index sets. A polygon needs at least three
// vertices; everything downstream may assume value() >= 3.
class CycleSize {
public:
  explicit CycleSize(int n) : n_(n) {
    if (n < 3) {
      throw ValidationError("cycle size must be at least 3, got " + std::to_string(n));
    }
  }

  [[nodiscard]] int value() const { return n_; }

  // Reduces an arbitrary integer index into [0, N).
  [[nodiscard]] int wrap(long long i) const {
    long long r = i % n_;
    return static_cast<int>(r < 0 ? r + n_ : r);
  }

  friend bool operator==(CycleSize a, CycleSize b) { return a.n_ == b.n_; }
  friend bool operator!=(CycleSize a, CycleSize b) { return a.n_ != b.n_; }

private:
  int n_;
};

// Which of the two edges adjacent to a vertex is meant.
enum class HalfStep { plus_half, minus_half };

// Storage convention: the edge joining vertices n and n+1 (half-integer index
// n + 1/2) lives at integer slot n. So the edge n + 1/2 adjacent to vertex n
// is slot n, and the edge n - 1/2 is slot n-1 mod N.
[[nodiscard]] inline int edge_slot(CycleSize size, int vertex, HalfStep side) {
  return side == HalfStep::plus_half ? size.wrap(vertex) : size.wrap(static_cast<long long>(vertex) - 1);
}

// Piecewise-linear periodic kernel inverting the cyclic difference operator:
//   B(t) = (N - 2t) / (2N)  for t in (0, N),  B(0) = 0,
// extended to all of R by N-periodicity. Odd under t -> N - t. The jump of
// size 1 - 1/N sits at t = 0; away from it B(t - 1/2) - B(t + 1/2) = 1/N and
// B(t - 1/2) + B(t + 1/2) = B(t).
[[nodiscard]] inline double b_kernel(double t, CycleSize size) {
  const double n = static_cast<double>(size.value());
  double r = t - n * std::floor(t / n);  // reduce into [0, N)
  if (r == 0.0) {
    return 0.0;
  }
  return (n - 2.0 * r) / (2.0 * n);
}

}  // namespace polyflow
