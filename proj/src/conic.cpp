#include "conicjet/conic.hpp"

#include <numeric>

namespace conicjet {

namespace {

// Exponent vectors matching the coefficient order (Z0^2, Z1^2, Z2^2, Z0Z1, Z0Z2, Z1Z2).
constexpr std::array<std::array<std::uint16_t, 3>, 6> kConicMonomials{{
    {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1},
}};

IntPoly det3(const std::array<std::array<IntPoly, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

std::string chart_name(Chart chart) { return "Z" + std::to_string(static_cast<int>(chart)); }

Chart parse_chart(const std::string& text) {
    if (text == "Z0" || text == "0") return Chart::Z0;
    if (text == "Z1" || text == "1") return Chart::Z1;
    if (text == "Z2" || text == "2") return Chart::Z2;
    throw ConfigError("unknown chart '" + text + "' (expected Z0, Z1 or Z2)");
}

std::array<std::string, 2> chart_variable_names(Chart chart) {
    switch (chart) {
        case Chart::Z0: return {"x", "y"};
        case Chart::Z1: return {"t", "y"};
        case Chart::Z2: return {"t", "x"};
    }
    return {"u", "v"};
}

std::array<std::size_t, 2> chart_coordinates(Chart chart) {
    switch (chart) {
        case Chart::Z0: return {1, 2};
        case Chart::Z1: return {0, 2};
        case Chart::Z2: return {0, 1};
    }
    return {1, 2};
}

int chart_unit_sign(Chart chart) { return chart == Chart::Z1 ? -1 : 1; }

Conic Conic::from_rationals(const std::array<mpq_class, 6>& values) {
    mpz_class lcm = 1;
    for (const auto& v : values) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    std::array<mpz_class, 6> ints;
    mpz_class content = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        mpq_class scaled = values[i] * lcm;
        ints[i] = scaled.get_num();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (content == 0) throw ConfigError("conic has all six coefficients zero");
    Conic out;
    for (std::size_t i = 0; i < 6; ++i) {
        mpz_class v = ints[i] / content;
        if (!v.fits_slong_p()) throw ConfigError("conic coefficient does not fit in 64 bits");
        out.coeffs[i] = v.get_si();
    }
    return out;
}

IntPoly Conic::homogeneous() const {
    std::vector<IntPoly::Term> terms;
    for (std::size_t i = 0; i < 6; ++i) {
        Monomial m;
        for (std::size_t v = 0; v < 3; ++v) m.exp[v] = kConicMonomials[i][v];
        terms.push_back({m, mpz_class(static_cast<long>(coeffs[i]))});
    }
    return IntPoly::from_terms(Integers{}, 3, std::move(terms));
}

mpz_class Conic::smoothness_determinant() const {
    auto q = [&](std::size_t i) { return mpz_class(static_cast<long>(coeffs[i])); };
    std::vector<std::vector<mpz_class>> m = {
        {2 * q(0), q(3), q(4)},
        {q(3), 2 * q(1), q(5)},
        {q(4), q(5), 2 * q(2)},
    };
    return exact::determinant(std::move(m));
}

bool Conic::proportional_to(const Conic& other) const {
    // Rank of the 2x6 matrix of coefficient vectors is below 2.
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) {
            mpz_class lhs = mpz_class(static_cast<long>(coeffs[i])) * other.coeffs[j];
            mpz_class rhs = mpz_class(static_cast<long>(coeffs[j])) * other.coeffs[i];
            if (lhs != rhs) return false;
        }
    return true;
}

std::vector<std::string> ConicTriple::validation_issues() const {
    std::vector<std::string> issues;
    const char* names[] = {"A", "B", "C"};
    for (std::size_t i = 0; i < 3; ++i) {
        if (std::all_of((*this)[i].coeffs.begin(), (*this)[i].coeffs.end(), [](auto v) { return v == 0; }))
            issues.push_back(std::string("conic ") + names[i] + " is zero");
        else if (!(*this)[i].is_smooth())
            issues.push_back(std::string("conic ") + names[i] + " is singular");
    }
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if ((*this)[i].proportional_to((*this)[j]))
                issues.push_back(std::string("conics ") + names[i] + " and " + names[j] + " coincide");
    return issues;
}

ConicTriple fermat_triple() {
    return {Conic{{2, 1, 1, 0, 0, 0}}, Conic{{1, 2, 1, 0, 0, 0}}, Conic{{1, 1, 2, 0, 0, 0}}, "fermat"};
}

ConicTriple case72_triple() {
    return {Conic{{2, 1, 1, 1, 0, 0}}, Conic{{1, 1, 2, 0, 1, 0}}, Conic{{1, 2, 1, 0, 0, 1}}, "case72"};
}

ConicTriple preset_triple(const std::string& name) {
    if (name == "fermat") return fermat_triple();
    if (name == "case72") return case72_triple();
    throw ConfigError("unknown conic preset '" + name + "' (expected fermat or case72)");
}

IntPoly jacobian_cubic(const ConicTriple& triple) {
    std::array<std::array<IntPoly, 3>, 3> m{{
        {IntPoly(Integers{}, 3), IntPoly(Integers{}, 3), IntPoly(Integers{}, 3)},
        {IntPoly(Integers{}, 3), IntPoly(Integers{}, 3), IntPoly(Integers{}, 3)},
        {IntPoly(Integers{}, 3), IntPoly(Integers{}, 3), IntPoly(Integers{}, 3)},
    }};
    for (std::size_t col = 0; col < 3; ++col) {
        IntPoly f = triple[col].homogeneous();
        for (std::size_t row = 0; row < 3; ++row) m[row][col] = f.derivative(row);
    }
    return det3(m);
}

IntPoly dehomogenize(const IntPoly& form, Chart chart) {
    if (form.arity() != 3) throw Error("dehomogenize expects a form in Z0, Z1, Z2");
    auto coords = chart_coordinates(chart);
    std::vector<IntPoly::Term> terms;
    for (const auto& t : form.terms()) {
        Monomial m;
        m.exp[0] = t.mono.exp[coords[0]];
        m.exp[1] = t.mono.exp[coords[1]];
        terms.push_back({m, t.coeff});
    }
    return IntPoly::from_terms(Integers{}, 2, std::move(terms));
}

IntPoly homogenize(const IntPoly& affine, Chart chart, unsigned degree) {
    if (affine.arity() != 2) throw Error("homogenize expects a polynomial in two affine variables");
    auto coords = chart_coordinates(chart);
    std::vector<IntPoly::Term> terms;
    for (const auto& t : affine.terms()) {
        unsigned d = t.mono.degree();
        if (d > degree) throw DegreeMismatch("homogenize: term degree exceeds target degree");
        Monomial m;
        m.exp[coords[0]] = t.mono.exp[0];
        m.exp[coords[1]] = t.mono.exp[1];
        m.exp[static_cast<std::size_t>(chart)] = static_cast<std::uint16_t>(degree - d);
        terms.push_back({m, t.coeff});
    }
    return IntPoly::from_terms(Integers{}, 3, std::move(terms));
}

ChartData chart_data(const ConicTriple& triple, Chart chart) {
    IntPoly a = dehomogenize(triple.a.homogeneous(), chart);
    IntPoly b = dehomogenize(triple.b.homogeneous(), chart);
    IntPoly c = dehomogenize(triple.c.homogeneous(), chart);
    ChartData cd{chart,           a, b, c, a.derivative(0), a.derivative(1), b.derivative(0), b.derivative(1),
                 c.derivative(0), c.derivative(1), IntPoly(Integers{}, 2)};
    cd.D = det3({{{cd.a, cd.b, cd.c}, {cd.a1, cd.b1, cd.c1}, {cd.a2, cd.b2, cd.c2}}});
    return cd;
}

}  // namespace conicjet
