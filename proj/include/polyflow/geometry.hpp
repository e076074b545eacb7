#pragma once

#include <optional>
#include <vector>

#include "polyflow/fields.hpp"

namespace polyflow {

// A polygon is a vertex field: vertex n sits at the complex point z_n and the
// closing edge joins z_(N-1) back to z_0.
using Polygon = VertexField;

// Algebraic (signed) area: A(z) = 1/(4i) sum_k (z_(k+1) - z_(k-1)) conj(z_k).
// Rotation invariant, negated by conjugation, and defined for crossed
// polygons, where it counts winding with multiplicity.
[[nodiscard]] double oriented_area(const Polygon& z);

// Differential of the area in direction t: d_zA.t = 1/2 sum_k Im((z_(k+1) -
// z_(k-1)) conj(t_k)). R-linear in t.
[[nodiscard]] double area_differential(const Polygon& z, const VertexField& t);

// Circumcenter of the triangle (u, v, w):
//   c = 1/(w - u) * ((w - v)/conj(w - v) - (u - v)/conj(u - v)),  o = v + c/|c|^2.
// Throws DuplicatePoints when two inputs coincide and CollinearPoints when
// the orientation determinant conj(u-v)(w-v) - conj(w-v)(u-v) vanishes
// relative to the input scale.
[[nodiscard]] Complex circumcenter(Complex u, Complex v, Complex w);

// Vertex n of the developed polygon is the circumcenter of (z_(n-1), z_n,
// z_(n+1)); a degenerate triple (collinear or with coincident points) yields
// an empty optional, the point at infinity.
[[nodiscard]] std::vector<std::optional<Complex>> developed_polygon(const Polygon& z);

// Total edge length of the developed polygon; +infinity as soon as one
// vertex is at infinity. Zero exactly when the polygon is cocyclic.
[[nodiscard]] double developed_perimeter(const Polygon& z);

// True when every vertex lies within tol * diameter of the least-squares
// line through the second moments. A single repeated point counts as
// collinear.
[[nodiscard]] bool is_collinear(const Polygon& z, double tol = 1e-9);

struct Circle {
  Complex center;
  double radius = 0.0;
};

struct CircleFit {
  Circle circle;
  // max_n | |z_n - center| - radius | / radius
  double relative_residual = 0.0;
};

// Algebraic least-squares circle through the vertices, polished by one
// Gauss-Newton step on the geometric distances. Throws CollinearPoints when
// the vertex set is collinear (no finite circle).
[[nodiscard]] CircleFit fit_circle(const Polygon& z);

// sum_nu |z_(nu+1) - z_nu|
[[nodiscard]] double polygon_perimeter(const Polygon& z);

// max over vertex pairs of |z_i - z_j|
[[nodiscard]] double polygon_diameter(const Polygon& z);

}  // namespace polyflow
