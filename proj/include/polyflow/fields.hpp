#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "polyflow/cyclic.hpp"
#include "polyflow/errors.hpp"

namespace polyflow {

// A C^N vector tagged by what it indexes (vertices or edges). The tag makes
// vertex/edge confusion a compile error; mixing two cycle sizes is a runtime
// SizeMismatch. Slot i of an edge field holds the value at half-integer
// index i + 1/2 (see edge_slot in cyclic.hpp).
template <class Tag>
class BasicField {
public:
  explicit BasicField(CycleSize size) : size_(size), v_(static_cast<std::size_t>(size.value())) {}

  BasicField(CycleSize size, std::vector<Complex> values) : size_(size), v_(std::move(values)) {
    if (static_cast<int>(v_.size()) != size_.value()) {
      throw SizeMismatch("field over N=" + std::to_string(size_.value()) + " built from " +
                         std::to_string(v_.size()) + " values");
    }
  }

  [[nodiscard]] static BasicField constant(CycleSize size, Complex value) {
    BasicField f(size);
    for (auto& x : f.v_) x = value;
    return f;
  }

  [[nodiscard]] CycleSize size() const { return size_; }
  [[nodiscard]] int n() const { return size_.value(); }

  [[nodiscard]] Complex& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const Complex& operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

  // Access with the index reduced mod N; the workhorse for cyclic stencils.
  [[nodiscard]] const Complex& wrapped(long long i) const {
    return v_[static_cast<std::size_t>(size_.wrap(i))];
  }

  [[nodiscard]] const std::vector<Complex>& values() const { return v_; }

  auto begin() { return v_.begin(); }
  auto end() { return v_.end(); }
  [[nodiscard]] auto begin() const { return v_.begin(); }
  [[nodiscard]] auto end() const { return v_.end(); }

private:
  CycleSize size_;
  std::vector<Complex> v_;
};

using VertexField = BasicField<struct VertexTag>;
using EdgeField = BasicField<struct EdgeTag>;

template <class F>
concept AnyField = std::same_as<F, VertexField> || std::same_as<F, EdgeField>;

template <AnyField F>
void check_same_size(const F& a, const F& b, const char* what) {
  if (a.size() != b.size()) {
    throw SizeMismatch(std::string(what) + ": N=" + std::to_string(a.n()) + " vs N=" +
                       std::to_string(b.n()));
  }
}

// ---------------------------------------------------------------------------
// Pointwise arithmetic
// ---------------------------------------------------------------------------

template <AnyField F>
[[nodiscard]] F operator+(const F& a, const F& b) {
  check_same_size(a, b, "operator+");
  F out(a.size());
  for (int i = 0; i < a.n(); ++i) out[i] = a[i] + b[i];
  return out;
}

template <AnyField F>
[[nodiscard]] F operator-(const F& a, const F& b) {
  check_same_size(a, b, "operator-");
  F out(a.size());
  for (int i = 0; i < a.n(); ++i) out[i] = a[i] - b[i];
  return out;
}

template <AnyField F>
[[nodiscard]] F operator*(Complex c, const F& a) {
  F out(a.size());
  for (int i = 0; i < a.n(); ++i) out[i] = c * a[i];
  return out;
}

template <AnyField F>
[[nodiscard]] F operator*(double c, const F& a) {
  return Complex(c, 0.0) * a;
}

template <AnyField F>
[[nodiscard]] F operator-(const F& a) {
  return Complex(-1.0, 0.0) * a;
}

// Entrywise product diag(a).x; both arguments index the same set.
template <AnyField F>
[[nodiscard]] F diag(const F& a, const F& x) {
  check_same_size(a, x, "diag");
  F out(a.size());
  for (int i = 0; i < a.n(); ++i) out[i] = a[i] * x[i];
  return out;
}

// Entrywise conjugation; antilinear, squares to the identity.
template <AnyField F>
[[nodiscard]] F conj_c(const F& a) {
  F out(a.size());
  for (int i = 0; i < a.n(); ++i) out[i] = std::conj(a[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Inner products and norms
// ---------------------------------------------------------------------------

// Hermitian product <x, y> = sum_i x_i conj(y_i), linear in the first slot.
template <AnyField F>
[[nodiscard]] Complex hermitian(const F& x, const F& y) {
  check_same_size(x, y, "hermitian");
  Complex s{};
  for (int i = 0; i < x.n(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

// Real inner product Re<x, y>; the Euclidean pairing of C^N seen as R^(2N).
template <AnyField F>
[[nodiscard]] double real_inner(const F& x, const F& y) {
  return hermitian(x, y).real();
}

template <AnyField F>
[[nodiscard]] double norm(const F& x) {
  double s = 0.0;
  for (int i = 0; i < x.n(); ++i) s += std::norm(x[i]);
  return std::sqrt(s);
}

template <AnyField F>
[[nodiscard]] Complex field_sum(const F& x) {
  Complex s{};
  for (int i = 0; i < x.n(); ++i) s += x[i];
  return s;
}

template <AnyField F>
[[nodiscard]] Complex field_mean(const F& x) {
  return field_sum(x) / static_cast<double>(x.n());
}

}  // namespace polyflow
