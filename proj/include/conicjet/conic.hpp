#pragma once

// Three-conic configurations in P^2, their affine chart data, the Jacobian
// cubic and the discriminant, plus exact genericity checks.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "conicjet/multipoly.hpp"

namespace conicjet {

// Affine charts {Z_i != 0}. The two affine coordinates are the remaining
// homogeneous coordinates in increasing index order.
enum class Chart : int { Z0 = 0, Z1 = 1, Z2 = 2 };

std::string chart_name(Chart chart);
Chart parse_chart(const std::string& text);
std::array<std::string, 2> chart_variable_names(Chart chart);
// Homogeneous coordinate indices used as (first, second) affine variable.
std::array<std::size_t, 2> chart_coordinates(Chart chart);

// A plane conic with integer coefficients in the fixed order
// (Z0^2, Z1^2, Z2^2, Z0Z1, Z0Z2, Z1Z2).
struct Conic {
    std::array<std::int64_t, 6> coeffs{};

    // Clears denominators and content to a primitive integer vector.
    static Conic from_rationals(const std::array<mpq_class, 6>& values);

    IntPoly homogeneous() const;
    // Determinant of twice the symmetric matrix of the quadratic form.
    mpz_class smoothness_determinant() const;
    bool is_smooth() const { return sgn(smoothness_determinant()) != 0; }
    bool proportional_to(const Conic& other) const;

    bool operator==(const Conic&) const = default;
};

struct ConicTriple {
    Conic a;
    Conic b;
    Conic c;
    std::string label;

    const Conic& operator[](std::size_t i) const { return i == 0 ? a : (i == 1 ? b : c); }

    // Empty iff every conic is smooth and no two are projectively equal.
    std::vector<std::string> validation_issues() const;
    bool is_valid() const { return validation_issues().empty(); }
};

// 2Z0^2+Z1^2+Z2^2, Z0^2+2Z1^2+Z2^2, Z0^2+Z1^2+2Z2^2.
ConicTriple fermat_triple();
// The perturbed triple used for the worked (m,t) = (3,1) case.
ConicTriple case72_triple();
// "fermat" or "case72"; throws ConfigError otherwise.
ConicTriple preset_triple(const std::string& name);

// Dehomogenized chart data in the two affine variables of the chart.
struct ChartData {
    Chart chart;
    IntPoly a, b, c;
    IntPoly a1, a2, b1, b2, c1, c2;
    // det [[a, b, c], [a1, b1, c1], [a2, b2, c2]]
    IntPoly D;
};

IntPoly jacobian_cubic(const ConicTriple& triple);
ChartData chart_data(const ConicTriple& triple, Chart chart);

IntPoly dehomogenize(const IntPoly& form, Chart chart);
IntPoly homogenize(const IntPoly& affine, Chart chart, unsigned degree);

// J = chart_unit_sign(chart) * 2 * homogenize(D, chart, 3) (Euler relation).
int chart_unit_sign(Chart chart);

struct GenericityReport {
    bool snc = false;  // pairwise transverse conics, no point on all three
    bool tp1 = false;  // {J = 0} transverse to each conic
    bool tp2 = false;  // {J = 0} transverse to each coordinate line
};

// Throws DegenerateConic if a conic is singular.
GenericityReport genericity_report(const ConicTriple& triple);

// Exact elimination helpers behind genericity_report.
namespace exact {

// Coefficients c[i] of X^(d-i) Y^i for a binary form of formal degree d.
using BinaryForm = std::vector<mpz_class>;

// Restricts a form in three variables with variable `absent` not occurring.
BinaryForm to_binary_form(const IntPoly& form, std::size_t absent, unsigned formal_degree);
// Number of distinct roots in P^1; throws for the zero form.
std::size_t distinct_roots(const BinaryForm& form);
// Homogeneous (Sylvester) resultant; zero iff a common root in P^1.
mpz_class form_resultant(const BinaryForm& f, const BinaryForm& g);
// Resultant with respect to `var`, by fraction-free elimination of the
// Sylvester matrix.
IntPoly resultant(const IntPoly& f, const IntPoly& g, std::size_t var);
mpz_class determinant(std::vector<std::vector<mpz_class>> m);

// Do the plane curves F = 0 and G = 0 meet in deg F * deg G distinct points?
bool transverse(const IntPoly& F, const IntPoly& G);
// Common zero of three conics, assuming A and B meet transversally.
bool common_point(const IntPoly& A, const IntPoly& B, const IntPoly& C);

}  // namespace exact

}  // namespace conicjet
