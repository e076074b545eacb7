#pragma once

#include <optional>
#include <vector>

#include "polyflow/geometry.hpp"

namespace polyflow {

// ---------------------------------------------------------------------------
// Length data
// ---------------------------------------------------------------------------

// A prescribed edge-length vector with its two structural flags.
//
// admissible: every 0 < l_nu < perimeter/2 (strict), so the constraint set is
// nonempty with nonempty interior. regular: no choice of signs eps in {-1,+1}
// makes sum eps_nu l_nu vanish; failing that, the constraint set contains
// collinear (degenerate) polygons and singular_signs holds one witness.
struct LengthSpec {
  std::vector<double> lengths;
  bool admissible = false;
  bool regular = false;
  std::optional<std::vector<int>> singular_signs;

  [[nodiscard]] CycleSize size() const { return CycleSize(static_cast<int>(lengths.size())); }
  [[nodiscard]] int n() const { return static_cast<int>(lengths.size()); }
  [[nodiscard]] double perimeter() const;
};

// Builds the length spec and computes both flags. Throws NonPositiveLength on any
// l_nu <= 0 and ValidationError on fewer than 3 entries. Regularity is decided
// by exact sign enumeration (Gray code) for N <= 24 and by a
// meet-in-the-middle split above, at tolerance 1e-12 * perimeter.
[[nodiscard]] LengthSpec make_length_spec(std::vector<double> lengths);

// Edge lengths measured from a polygon (|Dz|), packaged as a LengthSpec.
[[nodiscard]] LengthSpec measured_lengths(const Polygon& z);

// How far z sits from the constraint set of l: the worst of the relative
// squared-length errors |L_nu^2 - l_nu^2| / l_nu^2 and the centering defect
// |sum z_n| / perimeter.
[[nodiscard]] double membership_residual(const Polygon& z, const LengthSpec& l);

// ---------------------------------------------------------------------------
// Turning field and tangent space
// ---------------------------------------------------------------------------

// alpha_nu = zeta_nu / conj(zeta_nu), the squared unit direction of each
// edge. Throws ZeroEdge when |zeta_nu| < 1e-12 * l_nu.
[[nodiscard]] EdgeField turning(const Polygon& z, const LengthSpec& l);

// J_alpha = I . diag(alpha) . D, vertex fields to vertex fields.
[[nodiscard]] VertexField j_alpha_apply(const EdgeField& alpha, const VertexField& s);

// Orthogonal projection onto the parameter space S_z = 1^perp cap u^perp,
// u = conj(D.alpha) (hermitian orthogonality). When alpha is constant the
// second constraint is vacuous and only the mean is removed.
[[nodiscard]] VertexField project_to_parameter_space(const EdgeField& alpha, const VertexField& s);

// Parametrisation of the tangent space: s |-> -J_alpha.s + conj(s), applied
// after projecting s into S_z. Its image satisfies the linearised length
// constraints Re(conj(zeta_nu) (Dt)_nu) = 0 and sum t = 0.
[[nodiscard]] VertexField tangent_lift(const EdgeField& alpha, const VertexField& s);

// Complex dimension of S_z: N-1 when all alpha_nu agree (within 1e-10), N-2
// otherwise.
[[nodiscard]] int tangent_dimension(const EdgeField& alpha);

// ---------------------------------------------------------------------------
// Criticality of the oriented area
// ---------------------------------------------------------------------------

struct CriticalityData {
  // Raw area representative: a~_n = i (conj(z_(n+1) - z_(n-1)) + z_n conj((D.alpha)_n)).
  VertexField a_tilde;
  // Projection of a~ into S_z; zero exactly at critical (cocyclic) polygons.
  VertexField a;
  // ||a||; the invariant norm of the area gradient at z.
  double residual = 0.0;
  // Riemannian gradient in vertex coordinates: (-J_alpha + C).a.
  VertexField gradient;
};

// Computes the gradient data at an on-constraint polygon. Throws
// ConstraintViolation when membership_residual(z, l) > membership_tol and
// CollinearPolygon on (near-)collinear input, where the turning field
// degenerates.
[[nodiscard]] CriticalityData criticality(const Polygon& z, const LengthSpec& l,
                                          double membership_tol = 1e-6);

// ---------------------------------------------------------------------------
// Multipliers and special critical families
// ---------------------------------------------------------------------------

struct MultiplierReport {
  // lambda_nu = -cot((theta_(nu+1/2) - theta_(nu-1/2)) / 2), one per edge.
  std::vector<double> lambda;
  // Multiplier of the centering constraint; identically zero, kept to make
  // the stationarity equation checkable as stated.
  Complex mu{};
  // sup_n |stationarity equation at vertex n| with the lambda above.
  double max_stationarity_residual = 0.0;
  // Largest imaginary part discarded when reading lambda off the complex
  // ratio; reported, not silently dropped.
  double max_imag_part = 0.0;
};

// Multipliers of a cocyclic critical polygon on the given circle. Throws
// NotCocyclic when some vertex is farther than cocyclic_tol * radius from the
// circle, ZeroEdge on a collapsed edge.
[[nodiscard]] MultiplierReport lagrange_multipliers(const Polygon& z, const Circle& circle,
                                                    double cocyclic_tol = 1e-6);

// Free-edge (Thales) criterion: edge nu is a diameter of the fitted circle,
// i.e. its midpoint lies within tol * radius of the center. Throws
// NotCocyclic when z is not cocyclic, ZeroEdge on a collapsed edge nu.
[[nodiscard]] bool check_free_edge_critical(const Polygon& z, int edge, double tol = 1e-8,
                                            double cocyclic_tol = 1e-6);

// Perimeter-constrained criterion: the central angle steps arg((z_(n+1) - o)
// / (z_n - o)) are all equal mod 2pi within tol. Regular polygons, crossed
// (star) ones included, pass. Throws NotCocyclic when z is not cocyclic.
[[nodiscard]] bool check_perimeter_constrained_critical(const Polygon& z, double tol = 1e-8,
                                                        double cocyclic_tol = 1e-6);

}  // namespace polyflow
