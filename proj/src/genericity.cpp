// Exact transversality decisions over the integers.
//
// A curve pair is projected from a center O = (i, i^3, 1); the resultant in the
// fiber variable is a binary form whose roots are the images of the
// intersection points, with multiplicity. The centers lie on a cuspidal cubic,
// so no three are collinear: a line through two of the (at most B = deg F *
// deg G) intersection points contains at most two centers, and among
// 2*binom(B, 2) + 1 admissible centers one separates all the points. The
// maximum distinct-root count over those centers therefore equals the number
// of distinct intersection points, which is B exactly when every intersection
// is transverse.

#include <algorithm>

#include "conicjet/conic.hpp"

namespace conicjet {

namespace {

using UPoly = std::vector<mpq_class>;  // low degree first

void trim(UPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

UPoly derivative(const UPoly& p) {
    UPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
    trim(d);
    return d;
}

UPoly remainder(UPoly a, const UPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

UPoly gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::size_t distinct_affine_roots(UPoly p) {
    trim(p);
    if (p.size() <= 1) return 0;
    UPoly g = gcd(p, derivative(p));
    return (p.size() - 1) - (g.empty() ? 0 : g.size() - 1);
}

IntPoly shifted_to_center(const IntPoly& f, long o0, long o1) {
    const Integers zz;
    IntPoly w2 = IntPoly::variable(zz, 3, 2);
    IntPoly g = f.substitute(0, IntPoly::variable(zz, 3, 0) + w2.scaled(mpz_class(o0)));
    return g.substitute(1, IntPoly::variable(zz, 3, 1) + w2.scaled(mpz_class(o1)));
}

struct Center {
    long o0;
    long o1;
};

Center center(long i) { return {i, i * i * i}; }

bool vanishes_at(const IntPoly& f, const Center& c) {
    std::vector<mpz_class> values = {mpz_class(c.o0), mpz_class(c.o1), mpz_class(1)};
    return sgn(f.evaluate(values)) == 0;
}

unsigned form_degree(const IntPoly& f) {
    if (f.is_zero() || !f.is_homogeneous()) throw DegreeMismatch("expected a nonzero homogeneous form");
    return static_cast<unsigned>(f.total_degree());
}

}  // namespace

namespace exact {

mpz_class determinant(std::vector<std::vector<mpz_class>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m[k][k]) == 0) {
            std::size_t i = k + 1;
            while (i < n && sgn(m[i][k]) == 0) ++i;
            if (i == n) return 0;
            std::swap(m[i], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

IntPoly resultant(const IntPoly& f, const IntPoly& g, std::size_t var) {
    f.check_compatible(g);
    const Integers zz;
    const std::size_t arity = f.arity();
    if (f.is_zero() || g.is_zero()) return IntPoly(zz, arity);
    const int df = f.degree(var), dg = g.degree(var);
    const std::size_t n = static_cast<std::size_t>(df + dg);
    if (n == 0) return IntPoly::constant(zz, arity, 1);

    auto coeff = [&](const IntPoly& p, int e) {
        std::size_t vars[] = {var};
        unsigned exps[] = {static_cast<unsigned>(e)};
        return coefficient_of(p, std::span<const std::size_t>(vars), std::span<const unsigned>(exps));
    };
    std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n, IntPoly(zz, arity)));
    for (int r = 0; r < dg; ++r)
        for (int e = df; e >= 0; --e) m[r][r + (df - e)] = coeff(f, e);
    for (int r = 0; r < df; ++r)
        for (int e = dg; e >= 0; --e) m[dg + r][r + (dg - e)] = coeff(g, e);

    int sign = 1;
    IntPoly prev = IntPoly::constant(zz, arity, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t i = k + 1;
            while (i < n && m[i][k].is_zero()) ++i;
            if (i == n) return IntPoly(zz, arity);
            std::swap(m[i], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

BinaryForm to_binary_form(const IntPoly& form, std::size_t absent, unsigned formal_degree) {
    if (form.arity() != 3 || absent > 2) throw Error("to_binary_form expects a ternary form");
    std::size_t vx = absent == 0 ? 1 : 0;
    std::size_t vy = absent == 2 ? 1 : 2;
    BinaryForm out(formal_degree + 1, mpz_class(0));
    for (const auto& t : form.terms()) {
        if (t.mono.exp[absent] != 0 || t.mono.degree() != formal_degree)
            throw DegreeMismatch("to_binary_form: term outside the binary form of degree " +
                                 std::to_string(formal_degree));
        out[t.mono.exp[vy]] = t.coeff;
        (void)vx;
    }
    return out;
}

std::size_t distinct_roots(const BinaryForm& form) {
    std::size_t lead = 0;
    while (lead < form.size() && sgn(form[lead]) == 0) ++lead;
    if (lead == form.size()) throw Error("distinct_roots of the zero form");
    const std::size_t d = form.size() - 1;
    // f(s) = F(s, 1): coefficient of s^k is form[d - k].
    UPoly p(d + 1);
    for (std::size_t k = 0; k <= d; ++k) p[k] = form[d - k];
    return distinct_affine_roots(std::move(p)) + (lead > 0 ? 1 : 0);
}

mpz_class form_resultant(const BinaryForm& f, const BinaryForm& g) {
    const std::size_t df = f.size() - 1, dg = g.size() - 1;
    const std::size_t n = df + dg;
    if (n == 0) return 1;
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, mpz_class(0)));
    for (std::size_t r = 0; r < dg; ++r)
        for (std::size_t i = 0; i <= df; ++i) m[r][r + i] = f[i];
    for (std::size_t r = 0; r < df; ++r)
        for (std::size_t i = 0; i <= dg; ++i) m[dg + r][r + i] = g[i];
    return determinant(std::move(m));
}

bool transverse(const IntPoly& F, const IntPoly& G) {
    if (F.is_zero() || G.is_zero()) return false;
    const unsigned bezout = form_degree(F) * form_degree(G);
    if (bezout == 0) return false;
    const std::size_t needed = static_cast<std::size_t>(bezout) * (bezout - 1) + 1;
    std::size_t tried = 0;
    for (long i = 1; tried < needed; ++i) {
        Center o = center(i);
        if (vanishes_at(F, o) || vanishes_at(G, o)) continue;
        ++tried;
        IntPoly r = resultant(shifted_to_center(F, o.o0, o.o1), shifted_to_center(G, o.o0, o.o1), 2);
        if (r.is_zero()) return false;  // common component
        if (distinct_roots(to_binary_form(r, 2, bezout)) == bezout) return true;
    }
    return false;
}

bool common_point(const IntPoly& A, const IntPoly& B, const IntPoly& C) {
    const Integers zz;
    std::size_t tried = 0;
    for (long i = 1; tried < 13; ++i) {
        Center o = center(i);
        if (vanishes_at(A, o) || vanishes_at(B, o)) continue;
        ++tried;
        IntPoly sa = shifted_to_center(A, o.o0, o.o1);
        IntPoly sb = shifted_to_center(B, o.o0, o.o1);
        IntPoly r = resultant(sa, sb, 2);
        if (r.is_zero()) throw Error("common_point: A and B share a component");
        BinaryForm rf = to_binary_form(r, 2, 4);
        if (distinct_roots(rf) != 4) continue;

        // The projection separates the four points of A.B, so over each root
        // of r the two quadratics in W2 share exactly one root, -s0/s1.
        IntPoly sc = shifted_to_center(C, o.o0, o.o1);
        auto coeff = [&](const IntPoly& p, unsigned e) {
            std::size_t vars[] = {2};
            unsigned exps[] = {e};
            return coefficient_of(p, std::span<const std::size_t>(vars), std::span<const unsigned>(exps));
        };
        IntPoly a2 = coeff(sa, 2), a1 = coeff(sa, 1), a0 = coeff(sa, 0);
        IntPoly b2 = coeff(sb, 2), b1 = coeff(sb, 1), b0 = coeff(sb, 0);
        IntPoly c2 = coeff(sc, 2), c1 = coeff(sc, 1), c0 = coeff(sc, 0);
        IntPoly s1 = a2 * b1 - a1 * b2;
        IntPoly s0 = a2 * b0 - a0 * b2;
        IntPoly q = c2 * s0 * s0 - c1 * s0 * s1 + c0 * s1 * s1;
        if (q.is_zero()) return true;
        return sgn(form_resultant(rf, to_binary_form(q, 2, 4))) == 0;
    }
    throw Error("common_point: A and B do not meet transversally");
}

}  // namespace exact

GenericityReport genericity_report(const ConicTriple& triple) {
    for (std::size_t i = 0; i < 3; ++i)
        if (!triple[i].is_smooth())
            throw DegenerateConic("conic " + std::string(1, static_cast<char>('A' + i)) + " is singular");

    const IntPoly A = triple.a.homogeneous(), B = triple.b.homogeneous(), C = triple.c.homogeneous();
    GenericityReport report;
    report.snc = exact::transverse(A, B) && exact::transverse(A, C) && exact::transverse(B, C) &&
                 !exact::common_point(A, B, C);

    const IntPoly J = jacobian_cubic(triple);
    if (J.is_zero()) return report;
    report.tp1 = exact::transverse(J, A) && exact::transverse(J, B) && exact::transverse(J, C);

    report.tp2 = true;
    const Integers zz;
    for (std::size_t i = 0; i < 3 && report.tp2; ++i) {
        IntPoly restricted = J.substitute(i, IntPoly(zz, 3));
        report.tp2 = !restricted.is_zero() && exact::distinct_roots(exact::to_binary_form(restricted, i, 3)) == 3;
    }
    return report;
}

}  // namespace conicjet
