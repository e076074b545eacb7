#include "doctest.h"

#include <cmath>
#include <numbers>

#include "polyflow/calculus.hpp"
#include "polyflow/flow.hpp"
#include "polyflow/geometry.hpp"
#include "polyflow/shape_space.hpp"

using namespace polyflow;

namespace {

Polygon regular_ngon(int n, double radius = 1.0) {
  Polygon z((CycleSize(n)));
  for (int k = 0; k < n; ++k) {
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n);
  }
  return z;
}

Polygon centered_square() {
  return Polygon(CycleSize(4), {Complex(-0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5),
                                Complex(-0.5, 0.5)});
}

}  // namespace

TEST_CASE("length spec admissibility and regularity") {
  const LengthSpec pythagorean = make_length_spec({3, 4, 5});
  CHECK(pythagorean.admissible);
  CHECK(pythagorean.regular);
  CHECK_FALSE(pythagorean.singular_signs.has_value());
  CHECK(pythagorean.perimeter() == doctest::Approx(12.0));

  // One edge as long as the rest combined: no polygon exists.
  CHECK_FALSE(make_length_spec({1, 1, 3}).admissible);

  // 1 + 2 - 3 = 0: singular stratum.
  const LengthSpec flat = make_length_spec({1, 2, 3});
  CHECK_FALSE(flat.regular);
  REQUIRE(flat.singular_signs.has_value());
  double signed_sum = 0.0;
  for (int i = 0; i < 3; ++i) signed_sum += (*flat.singular_signs)[i] * flat.lengths[i];
  CHECK(std::abs(signed_sum) < 1e-12);
  CHECK((*flat.singular_signs)[0] == 1);
}

TEST_CASE("unit lengths are admissible but singular") {
  const LengthSpec unit = make_length_spec({1, 1, 1, 1});
  CHECK(unit.admissible);
  CHECK_FALSE(unit.regular);
  REQUIRE(unit.singular_signs.has_value());
  double signed_sum = 0.0;
  for (int i = 0; i < 4; ++i) signed_sum += (*unit.singular_signs)[i];
  CHECK(signed_sum == 0.0);
}

TEST_CASE("length spec input validation") {
  CHECK_THROWS_AS((void)make_length_spec({1, 1}), ValidationError);
  CHECK_THROWS_AS((void)make_length_spec({1, -1, 1}), NonPositiveLength);
  CHECK_THROWS_AS((void)make_length_spec({1, 0, 1}), NonPositiveLength);
}

TEST_CASE("measured lengths of the unit square") {
  const LengthSpec l = measured_lengths(centered_square());
  for (double v : l.lengths) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l.admissible);
}

TEST_CASE("membership residual of a scaled square") {
  const LengthSpec unit = make_length_spec({1, 1, 1, 1});
  const Polygon scaled = 1.1 * centered_square();
  // Squared lengths are 1.21 against a target of 1.
  CHECK(membership_residual(scaled, unit) == doctest::Approx(0.21).epsilon(1e-12));
  CHECK(membership_residual(centered_square(), unit) < 1e-15);
  // An uncentered polygon violates membership through the sum term.
  const Polygon shifted = centered_square() + VertexField::constant(CycleSize(4), Complex(1, 0));
  CHECK(membership_residual(shifted, unit) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("turning field of the square alternates") {
  const Polygon z = centered_square();
  const EdgeField alpha = turning(z, measured_lengths(z));
  CHECK(std::abs(alpha[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(alpha[1] - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(alpha[2] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(alpha[3] - Complex(-1, 0)) < 1e-15);
}

TEST_CASE("turning rejects collapsed edges") {
  Polygon z(CycleSize(4), {Complex(0, 0), Complex(0, 0), Complex(1, 0), Complex(1, 1)});
  CHECK_THROWS_AS((void)turning(z, make_length_spec({1, 1, 1, 1})), ZeroEdge);
}

TEST_CASE("parameter space projection kills the mean and the singular direction") {
  const Polygon z = regular_ngon(5, 1.3);
  const EdgeField alpha = turning(z, measured_lengths(z));
  VertexField s(CycleSize(5), {Complex(1, 2), Complex(-0.5, 0.3), Complex(0, -1), Complex(2, 2),
                               Complex(0.1, 0)});
  const VertexField sp = project_to_parameter_space(alpha, s);
  CHECK(std::abs(field_sum(sp)) < 1e-12);
  const VertexField u = conj_c(derivative_e2v(alpha));
  CHECK(std::abs(hermitian(sp, u)) < 1e-12);
  // Idempotent.
  const VertexField spp = project_to_parameter_space(alpha, sp);
  CHECK(norm(spp - sp) < 1e-12);
}

TEST_CASE("tangent lift sends the rotation mode to the rotation field") {
  // On a centered polygon the parameter -(i/2) conj(z) lifts to i z, the
  // velocity of a rigid rotation; the opposite sign lifts to -i z.
  for (const Polygon& z : {centered_square(), regular_ngon(7, 0.8)}) {
    const EdgeField alpha = turning(z, measured_lengths(z));
    const VertexField s = Complex(0, -0.5) * conj_c(z);
    CHECK(norm(tangent_lift(alpha, s) - Complex(0, 1) * z) < 1e-12);
    const VertexField s2 = Complex(0, 0.5) * conj_c(z);
    CHECK(norm(tangent_lift(alpha, s2) - Complex(0, -1) * z) < 1e-12);
  }
}

TEST_CASE("tangent lift annihilates constants") {
  const Polygon z = regular_ngon(6);
  const EdgeField alpha = turning(z, measured_lengths(z));
  const VertexField ones = VertexField::constant(CycleSize(6), Complex(1, 0));
  CHECK(norm(tangent_lift(alpha, ones)) < 1e-13);
}

TEST_CASE("tangent dimension counts the generic and collinear cases") {
  const Polygon z = centered_square();
  CHECK(tangent_dimension(turning(z, measured_lengths(z))) == 2);
  // A constant turning field (all edges parallel) loses only the mean.
  CHECK(tangent_dimension(EdgeField::constant(CycleSize(4), Complex(1, 0))) == 3);
}

TEST_CASE("regular polygons are critical points of the area") {
  for (int n : {4, 5, 6, 9}) {
    const Polygon z = regular_ngon(n, 1.7);
    const LengthSpec l = measured_lengths(z);
    const CriticalityData crit = criticality(z, l);
    const double perimeter = polygon_perimeter(z);
    CHECK(crit.residual <= 1e-11 * perimeter);
    CHECK(norm(crit.gradient) <= 1e-10 * perimeter);
    // The raw representative always sums to zero; at critical points a_tilde
    // itself nearly vanishes, so scale the bound by the perimeter too.
    CHECK(std::abs(field_sum(crit.a_tilde)) < 1e-12 * (norm(crit.a_tilde) + perimeter));
  }
}

TEST_CASE("generic constrained polygons are not critical") {
  const LengthSpec l = make_length_spec({1.0, 1.3, 0.8, 1.1, 0.95, 1.2});
  const Polygon z = random_constrained_polygon(l, 99);
  const CriticalityData crit = criticality(z, l);
  CHECK(crit.residual > 1e-6 * l.perimeter());
  // The projected representative lives in the parameter space.
  CHECK(std::abs(field_sum(crit.a)) < 1e-10);
  const VertexField u = conj_c(derivative_e2v(turning(z, l)));
  CHECK(std::abs(hermitian(crit.a, u)) < 1e-9);
}

TEST_CASE("pairing between the differential and the representative") {
  const LengthSpec l = make_length_spec({1.0, 1.2, 0.9, 1.05, 1.15});
  const Polygon z = random_constrained_polygon(l, 7);
  const EdgeField alpha = turning(z, l);
  const CriticalityData crit = criticality(z, l);
  VertexField s(CycleSize(5), {Complex(0.3, -1), Complex(1, 0.4), Complex(-0.2, 0.2),
                               Complex(0, 1.1), Complex(-0.6, -0.7)});
  const VertexField sp = project_to_parameter_space(alpha, s);
  const double lhs = area_differential(z, tangent_lift(alpha, sp));
  const double rhs = real_inner(crit.a, sp);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("criticality gates membership and collinearity") {
  const Polygon z = centered_square();
  CHECK_THROWS_AS((void)criticality(z, make_length_spec({2, 2, 2, 2})), ConstraintViolation);
  const Polygon shifted = z + VertexField::constant(CycleSize(4), Complex(5, 0));
  CHECK_THROWS_AS((void)criticality(shifted, make_length_spec({1, 1, 1, 1})), ConstraintViolation);

  const Polygon flat(CycleSize(4), {Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(0.5, 0)});
  CHECK_THROWS_AS((void)criticality(center(flat), measured_lengths(flat)), CollinearPolygon);
}

TEST_CASE("multipliers of the unit square are all -1") {
  const Polygon z = centered_square();
  const CircleFit fit = fit_circle(z);
  const MultiplierReport report = lagrange_multipliers(z, fit.circle);
  REQUIRE(report.lambda.size() == 4);
  for (double lm : report.lambda) CHECK(lm == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(report.max_imag_part < 1e-12);
  CHECK(report.mu == 0.0);
  CHECK(report.max_stationarity_residual < 1e-12);
}

TEST_CASE("multipliers of the regular hexagon are -sqrt(3)") {
  const Polygon z = regular_ngon(6, 2.5);
  const CircleFit fit = fit_circle(z);
  const MultiplierReport report = lagrange_multipliers(z, fit.circle);
  for (double lm : report.lambda) CHECK(lm == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
  CHECK(report.max_stationarity_residual < 1e-11);
}

TEST_CASE("multipliers refuse off-circle vertices") {
  Polygon z = regular_ngon(5);
  const Circle wrong{Complex(0.4, 0), 1.0};
  CHECK_THROWS_AS((void)lagrange_multipliers(z, wrong), NotCocyclic);
}

TEST_CASE("free edge criticality flags exactly the diameter edge") {
  // Inscribed quadrilateral with one side through the center.
  Polygon z(CycleSize(4),
            {std::polar(1.0, 0.0), std::polar(1.0, std::numbers::pi),
             std::polar(1.0, 4.0 * std::numbers::pi / 3.0), std::polar(1.0, 5.0 * std::numbers::pi / 3.0)});
  CHECK(check_free_edge_critical(z, 0));
  CHECK_FALSE(check_free_edge_critical(z, 1));
  CHECK_FALSE(check_free_edge_critical(z, 2));
  CHECK_FALSE(check_free_edge_critical(z, 3));
  // Off-circle input is refused rather than misclassified.
  Polygon off = z;
  off[2] *= 1.2;
  CHECK_THROWS_AS((void)check_free_edge_critical(off, 0), NotCocyclic);
}

TEST_CASE("perimeter constrained criticality accepts regular stars only") {
  CHECK(check_perimeter_constrained_critical(regular_ngon(5)));

  // Pentagram: winds twice, equal central angle steps of 4 pi / 5.
  Polygon star((CycleSize(5)));
  for (int k = 0; k < 5; ++k) star[k] = std::polar(1.0, 4.0 * std::numbers::pi * k / 5.0);
  CHECK(check_perimeter_constrained_critical(star));

  // Cocyclic but with unequal steps.
  Polygon uneven(CycleSize(4),
                 {std::polar(1.0, 0.0), std::polar(1.0, 0.9), std::polar(1.0, 2.2), std::polar(1.0, 4.0)});
  CHECK_FALSE(check_perimeter_constrained_critical(uneven));
}
