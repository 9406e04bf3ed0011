#include <doctest.h>

#include <random>

#include "conicjet/conic.hpp"

using namespace conicjet;

namespace {

IntPoly Z(std::size_t i) { return IntPoly::variable(Integers{}, 3, i); }

// Gradient of Z^T S Z at integer point p, straight from the coefficient
// vector (Z0^2, Z1^2, Z2^2, Z0Z1, Z0Z2, Z1Z2).
std::array<mpz_class, 3> gradient(const Conic& q, const std::array<mpz_class, 3>& p) {
    const auto& c = q.coeffs;
    return {2 * c[0] * p[0] + c[3] * p[1] + c[4] * p[2], c[3] * p[0] + 2 * c[1] * p[1] + c[5] * p[2],
            c[4] * p[0] + c[5] * p[1] + 2 * c[2] * p[2]};
}

mpz_class det3(const std::array<std::array<mpz_class, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Conic random_conic(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-6, 6);
    Conic c;
    for (auto& v : c.coeffs) v = d(rng);
    return c;
}

ConicTriple random_triple(std::mt19937_64& rng) {
    for (;;) {
        ConicTriple t{random_conic(rng), random_conic(rng), random_conic(rng), "random"};
        if (t.is_valid()) return t;
    }
}

}  // namespace

TEST_CASE("Fermat Jacobian is 32 Z0 Z1 Z2") {
    CHECK(jacobian_cubic(fermat_triple()) == (Z(0) * Z(1) * Z(2)).scaled(32));
}

TEST_CASE("Jacobian matches a pointwise gradient determinant") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int trial = 0; trial < 60; ++trial) {
        ConicTriple t = random_triple(rng);
        IntPoly J = jacobian_cubic(t);
        CHECK((J.is_zero() || (J.is_homogeneous() && J.total_degree() == 3)));
        for (int s = 0; s < 5; ++s) {
            std::array<mpz_class, 3> p{d(rng), d(rng), d(rng)};
            std::array<std::array<mpz_class, 3>, 3> m{gradient(t.a, p), gradient(t.b, p), gradient(t.c, p)};
            std::vector<mpz_class> at(p.begin(), p.end());
            CHECK(J.evaluate(at) == det3(m));
        }
    }
}

TEST_CASE("chart discriminants agree after homogenization") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        ConicTriple t = random_triple(rng);
        const IntPoly J = jacobian_cubic(t);
        for (Chart ch : {Chart::Z0, Chart::Z1, Chart::Z2}) {
            const ChartData cd = chart_data(t, ch);
            CHECK(cd.D.total_degree() <= 3);
            CHECK(J == homogenize(cd.D, ch, 3).scaled(2 * chart_unit_sign(ch)));
            CHECK(dehomogenize(homogenize(cd.a, ch, 2), ch) == cd.a);
        }
    }
}

TEST_CASE("chart names and coordinates") {
    CHECK(parse_chart("Z1") == Chart::Z1);
    CHECK(chart_name(Chart::Z2) == "Z2");
    CHECK_THROWS_AS(parse_chart("Z3"), ConfigError);
    CHECK(chart_coordinates(Chart::Z1) == std::array<std::size_t, 2>{0, 2});
}

TEST_CASE("rational input is cleared to a primitive integer vector") {
    std::array<mpq_class, 6> v{mpq_class(1, 2), mpq_class(3, 4), 0, 0, 0, mpq_class(-1, 4)};
    Conic c = Conic::from_rationals(v);
    CHECK(c.coeffs == std::array<std::int64_t, 6>{2, 3, 0, 0, 0, -1});
    Conic d{{4, 6, 0, 0, 0, -2}};
    CHECK(c.proportional_to(d));
}

TEST_CASE("validation issues") {
    ConicTriple t = fermat_triple();
    CHECK(t.is_valid());
    t.c = t.a;
    CHECK_FALSE(t.is_valid());
    t.c = Conic{{1, 0, 0, 0, 0, 0}};
    CHECK_FALSE(t.is_valid());
    CHECK_THROWS_AS(preset_triple("nope"), ConfigError);
}

TEST_CASE("genericity of the presets") {
    const GenericityReport f = genericity_report(fermat_triple());
    CHECK(f.snc);
    CHECK(f.tp1);
    CHECK_FALSE(f.tp2);  // J vanishes identically on every coordinate line

    const GenericityReport c = genericity_report(case72_triple());
    CHECK(c.snc);

    ConicTriple same = fermat_triple();
    same.b = same.a;
    CHECK_FALSE(genericity_report(same).snc);

    ConicTriple singular = fermat_triple();
    singular.c = Conic{{1, 1, 0, 0, 0, 0}};
    CHECK_THROWS_AS(genericity_report(singular), DegenerateConic);
}

TEST_CASE("three conics through one point are not snc") {
    // All pass through [1:1:1].
    ConicTriple t{Conic{{1, 1, -2, 0, 0, 0}}, Conic{{1, -2, 1, 0, 0, 0}}, Conic{{1, 2, -3, 0, 0, 0}}, "pencil"};
    REQUIRE(t.is_valid());
    CHECK_FALSE(genericity_report(t).snc);
}

TEST_CASE("genericity is stable under rescaling") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        ConicTriple t = random_triple(rng);
        const GenericityReport base = genericity_report(t);
        ConicTriple s = t;
        for (auto& v : s.b.coeffs) v *= -3;
        for (auto& v : s.c.coeffs) v *= 7;
        const GenericityReport scaled = genericity_report(s);
        CHECK(base.snc == scaled.snc);
        CHECK(base.tp1 == scaled.tp1);
        CHECK(base.tp2 == scaled.tp2);
    }
}

TEST_CASE("exact elimination helpers") {
    CHECK(exact::determinant({{2, 1}, {7, 4}}) == 1);
    CHECK(exact::determinant({{0, 1, 2}, {3, 4, 5}, {6, 7, 9}}) == -3);
    // X^2 - Y^2 and X - Y share [1:1]; X^2 + Y^2 and X - Y do not.
    CHECK(exact::form_resultant({1, 0, -1}, {1, -1}) == 0);
    CHECK(exact::form_resultant({1, 0, 1}, {1, -1}) != 0);
    CHECK(exact::distinct_roots({1, 0, -1}) == 2);
    CHECK(exact::distinct_roots({1, -2, 1}) == 1);
    CHECK(exact::distinct_roots({0, 1, 0}) == 2);  // X Y, with a root at infinity
    const IntPoly x = IntPoly::variable(Integers{}, 2, 0), y = IntPoly::variable(Integers{}, 2, 1);
    // Res_y(y^2 - x, y - x) = x^2 - x
    IntPoly r = exact::resultant(y * y - x, y - x, 1);
    CHECK((r == x * x - x || r == x - x * x));
}

namespace {

// Two smooth conics meet in four distinct points iff the binary cubic
// det(l*M_A + m*M_B) has three distinct roots (nonzero discriminant).
mpz_class pencil_discriminant(const Conic& A, const Conic& B) {
    auto matrix = [](const Conic& q) {
        const auto& c = q.coeffs;
        return std::array<std::array<long, 3>, 3>{{{2 * c[0], c[3], c[4]}, {c[3], 2 * c[1], c[5]}, {c[4], c[5], 2 * c[2]}}};
    };
    const auto a = matrix(A), b = matrix(B);
    // Coefficients of l^3, l^2 m, l m^2, m^3 by interpolation at four points.
    auto det_at = [&](long l, long m) {
        std::array<std::array<mpz_class, 3>, 3> s;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s[i][j] = l * a[i][j] + m * b[i][j];
        return det3(s);
    };
    const mpz_class p0 = det_at(1, 0), p3 = det_at(0, 1), p1 = det_at(1, 1), pm = det_at(1, -1);
    // p1 = c0 + c1 + c2 + c3, pm = c0 - c1 + c2 - c3
    const mpz_class c0 = p0, c3 = p3;
    const mpz_class c1 = (p1 - pm) / 2 - c3, c2 = (p1 + pm) / 2 - c0;
    return c1 * c1 * c2 * c2 - 4 * c0 * c2 * c2 * c2 - 4 * c1 * c1 * c1 * c3 - 27 * c0 * c0 * c3 * c3 +
           18 * c0 * c1 * c2 * c3;
}

}  // namespace

TEST_CASE("snc agrees with the pencil discriminant oracle") {
    // Tangent pair: difference is -Z1^2, a double line.
    const Conic A{{1, 1, -1, 0, 0, 0}}, B{{1, 2, -1, 0, 0, 0}};
    CHECK(pencil_discriminant(A, B) == 0);
    ConicTriple tangent{A, B, fermat_triple().c, "tangent"};
    REQUIRE(tangent.is_valid());
    CHECK_FALSE(genericity_report(tangent).snc);
    CHECK(exact::transverse(fermat_triple().a.homogeneous(), fermat_triple().b.homogeneous()));

    std::mt19937_64 rng(17);
    int non_transverse = 0;
    for (int trial = 0; trial < 80; ++trial) {
        ConicTriple t = random_triple(rng);
        if (trial % 4 == 0) t.b = Conic{{t.a.coeffs[0], t.a.coeffs[1] + 1, t.a.coeffs[2], t.a.coeffs[3], t.a.coeffs[4], t.a.coeffs[5]}};
        if (!t.is_valid()) continue;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const bool oracle = sgn(pencil_discriminant(t[i], t[j])) != 0;
                CHECK(exact::transverse(t[i].homogeneous(), t[j].homogeneous()) == oracle);
                if (!oracle) {
                    ++non_transverse;
                    CHECK_FALSE(genericity_report(t).snc);
                }
            }
    }
    CHECK(non_transverse > 0);
}
