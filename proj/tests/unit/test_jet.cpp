#include <doctest.h>

#include "conicjet/gfp_linalg.hpp"
#include "conicjet/jet.hpp"
#include "conicjet/linear_system.hpp"
#include "properties.hpp"

using namespace conicjet;

namespace {

IntPoly jv(std::size_t i) { return IntPoly::variable(Integers{}, jetvar::arity, i); }

// Direct enumeration of (j, k, Z-monomial) triples.
std::uint64_t brute_count(unsigned m, unsigned t) {
    std::uint64_t n = 0;
    for (unsigned j = 0; 3 * j <= m; ++j)
        for (unsigned k = 0; k <= m - 3 * j; ++k)
            for (int e0 = 0; e0 <= 3 * int(m); ++e0)
                for (int e1 = 0; e1 <= 3 * int(m); ++e1)
                    for (int e2 = 0; e2 <= 3 * int(m); ++e2)
                        if (e0 + e1 + e2 == 3 * (int(m) - 2 * int(j)) - int(t)) ++n;
    return n;
}

}  // namespace

TEST_CASE("unknown counts") {
    CHECK(AnsatzIndex::count(13, 9) == 12550);
    CHECK(AnsatzIndex::count(3, 3) == 113);
    CHECK(AnsatzIndex::count(3, 0) == 230);
    for (unsigned m = 1; m <= 9; ++m)
        for (unsigned t = 0; t <= 3 * m + 1; ++t) {
            CAPTURE(m);
            CAPTURE(t);
            CHECK(AnsatzIndex::count(m, t) == brute_count(m, t));
            CHECK(AnsatzIndex(m, t).size() == brute_count(m, t));
        }
    CHECK(AnsatzIndex::count(1, 4) == 0);
    CHECK_THROWS(AnsatzIndex(0, 0));
}

TEST_CASE("column layout and lookup") {
    AnsatzIndex idx(4, 2);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const AnsatzColumn& c = idx.column(i);
        REQUIRE(idx.find(c).has_value());
        CHECK(*idx.find(c) == i);
        if (i > 0) {
            const AnsatzColumn& p = idx.column(i - 1);
            const bool ordered = p.j < c.j || (p.j == c.j && (p.k < c.k || (p.k == c.k && p.exp > c.exp)));
            CHECK(ordered);
        }
    }
    CHECK_FALSE(idx.find({0, 0, {1, 1, 1}}).has_value());  // wrong degree
    CHECK(idx.block_offset(0, 1) == 66);  // binom(10 + 2, 2) per block, d_0 = 10
}

TEST_CASE("second-derivative elimination") {
    const IntPoly wr = jv(jetvar::u1) * jv(jetvar::v2) - jv(jetvar::v1) * jv(jetvar::u2);
    CHECK(eliminate_second_derivatives(wr, Elimination::Shortcut) == jv(jetvar::W));
    CHECK(eliminate_second_derivatives(wr, Elimination::Full) == jv(jetvar::W));
    const IntPoly bad = jv(jetvar::u2) * jv(jetvar::u);
    CHECK_THROWS_AS(eliminate_second_derivatives(bad, Elimination::Full), ResidualSecondDerivative);
    CHECK_THROWS_AS(eliminate_second_derivatives(jv(jetvar::u2) * jv(jetvar::v2), Elimination::Shortcut),
                    ResidualSecondDerivative);
}

TEST_CASE("log Wronskian numerator has the documented denominator") {
    const ChartData cd = chart_data(fermat_triple(), Chart::Z0);
    JetForm w = wronskian_form(cd);
    CHECK(w.denominator == std::array<unsigned, 3>{2, 2, 2});
    IntPoly L = eliminate_second_derivatives(w.numerator, Elimination::Full);
    REQUIRE_FALSE(L.is_zero());
    for (const auto& t : L.terms()) {
        CHECK(t.mono.exp[jetvar::u1] + t.mono.exp[jetvar::v1] + 3 * t.mono.exp[jetvar::W] == 3);
        CHECK(t.mono.exp[jetvar::u2] + t.mono.exp[jetvar::v2] == 0);
    }
}

TEST_CASE("rows are weighted homogeneous of weight m") {
    const ConicTriple f = fermat_triple();
    for (unsigned m : {3u, 4u, 5u}) {
        JetExpansion je = expand_ansatz(chart_data(f, Chart::Z2), m, m - 1, PrimeField(5));
        auto rows = obstruction_rows(je);
        REQUIRE_FALSE(rows.empty());
        for (const auto& r : rows) {
            CHECK(r.jet[0] + r.jet[1] + 3 * r.jet[2] == m);
            CHECK((r.mono[0] < m || r.mono[1] < m));
            CHECK(r.row.front().value == 1);
        }
    }
}

TEST_CASE("integer and modular expansion agree") {
    const ConicTriple f = fermat_triple();
    for (auto mt : {std::array<unsigned, 2>{3, 3}, {4, 3}, {3, 0}}) {
        AssembleOptions direct, lifted;
        lifted.expansion.integer_arithmetic = true;
        CHECK(export_sms(assemble(f, mt[0], mt[1], 5, {Chart::Z0, Chart::Z2}, direct)) ==
              export_sms(assemble(f, mt[0], mt[1], 5, {Chart::Z0, Chart::Z2}, lifted)));
    }
}

TEST_CASE("truncation does not change the rows") {
    const ConicTriple f = fermat_triple();
    for (Chart ch : {Chart::Z0, Chart::Z1, Chart::Z2}) {
        ExpansionOptions full;
        full.truncate = false;
        auto a = obstruction_rows(expand_ansatz(chart_data(f, ch), 4, 3, PrimeField(7)));
        auto b = obstruction_rows(expand_ansatz(chart_data(f, ch), 4, 3, PrimeField(7), full));
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].row == b[i].row);
            CHECK(a[i].mono == b[i].mono);
        }
    }
}

TEST_CASE("the global Wronskian solves the (3,0) system on each chart") {
    const AnsatzIndex idx(3, 0);
    const auto w = wronskian_vector(idx);
    std::size_t nonzero = 0;
    for (auto v : w) nonzero += v != 0;
    CHECK(nonzero == 1);
    const auto col = idx.find({1, 0, {1, 1, 1}});
    REQUIRE(col.has_value());
    CHECK(w[*col] == 1);
    for (Chart ch : {Chart::Z0, Chart::Z1, Chart::Z2}) {
        LinearSystem s = assemble(fermat_triple(), 3, 0, 5, {ch});
        CHECK(verify_solution(s, w));
    }
    CHECK_THROWS(wronskian_vector(AnsatzIndex(3, 3)));
}

TEST_CASE("Fermat (3,3) certifies with 113 unknowns") {
    LinearSystem s = assemble(fermat_triple(), 3, 3, 5, {Chart::Z0, Chart::Z2});
    CHECK(s.n_vars == 113);
    CHECK(s.n_rows_raw == 328);
    CHECK(rank_nullity(s).nullity == 0);
    LinearSystem low = assemble(fermat_triple(), 3, 0, 5, {Chart::Z0, Chart::Z2});
    CHECK(low.n_vars == 230);
    CHECK(rank_nullity(low).nullity >= 1);
}

TEST_CASE("non-coordinate-triangle Jacobians are rejected") {
    CHECK_NOTHROW(require_coordinate_triangle(fermat_triple()));
    CHECK_THROWS_AS(require_coordinate_triangle(case72_triple()), UnsupportedConfiguration);
    CHECK_THROWS_AS(assemble(case72_triple(), 3, 1, 5, {Chart::Z0}), UnsupportedConfiguration);
}

TEST_CASE("(m,t) = (3,1) dimension counts") {
    DimCounts d = case_m3_dim_counts();
    CHECK(d.dimV == 186);
    CHECK(d.dimVtilde == 1200);
    CHECK(d.dimW == 480);
    CHECK(d.dimV + d.dimW < d.dimVtilde);
}

TEST_CASE("shortcut and full substitution give the same rows for m <= 4") {
    auto o = conicjet::testing::shortcut_full_equality(4);
    INFO(o.detail);
    CHECK(o.ok);
}

TEST_CASE("solutions at (3,1) embed into (3,0)") {
    auto o = conicjet::testing::twist_monotonicity();
    INFO(o.detail);
    CHECK(o.ok);
    CHECK(o.cases > 0);
}
