#include "conicjet/tower.hpp"

namespace conicjet {

namespace {

unsigned codim(const Monomial& m) { return m.exp[towervar::u1] + m.exp[towervar::u2] + m.exp[towervar::h]; }

}  // namespace

TowerRing::TowerRing()
    : gamma_(RatPoly::variable(Rationals{}, towervar::arity, towervar::gamma)),
      beta_(RatPoly::variable(Rationals{}, towervar::arity, towervar::beta)) {}

TowerRing::TowerRing(const mpq_class& gamma, const mpq_class& beta)
    : gamma_(RatPoly::constant(Rationals{}, towervar::arity, gamma)),
      beta_(RatPoly::constant(Rationals{}, towervar::arity, beta)) {}

TowerElement TowerRing::constant(const mpq_class& c) const {
    return RatPoly::constant(Rationals{}, towervar::arity, c);
}

TowerElement TowerRing::reduce(const TowerElement& e) const {
    const TowerElement rule_u1 = -(cbar1() * u1()) - cbar2();
    const TowerElement rule_u2 = -((cbar1() + u1()) * u2()) - (constant(2) * cbar2() + cbar1() * u1());
    TowerElement done(Rationals{}, towervar::arity);
    TowerElement pending = e;
    while (!pending.is_zero()) {
        std::vector<RatPoly::Term> keep;
        TowerElement next(Rationals{}, towervar::arity);
        for (const auto& t : pending.terms()) {
            Monomial m = t.mono;
            if (m.exp[towervar::h] >= 3) continue;
            if (m.exp[towervar::u1] >= 2) {
                m.exp[towervar::u1] -= 2;
                next += rule_u1.mul_term(m, t.coeff);
            } else if (m.exp[towervar::u2] >= 2) {
                m.exp[towervar::u2] -= 2;
                next += rule_u2.mul_term(m, t.coeff);
            } else {
                keep.push_back(t);
            }
        }
        done += RatPoly::from_terms(Rationals{}, towervar::arity, std::move(keep));
        pending = std::move(next);
    }
    return done;
}

RatPoly TowerRing::integrate(const TowerElement& e) const {
    for (const auto& t : e.terms())
        if (codim(t.mono) != 4)
            throw DegreeMismatch("integrate expects a class of codimension 4, found a term of codimension " +
                                 std::to_string(codim(t.mono)));
    const TowerElement nf = reduce(e);
    std::size_t vars[] = {towervar::u1, towervar::u2, towervar::h};
    unsigned exps[] = {1, 1, 2};
    return coefficient_of(nf, std::span<const std::size_t>(vars), std::span<const unsigned>(exps));
}

mpq_class TowerRing::integrate_number(const TowerElement& e) const {
    RatPoly v = integrate(e);
    if (v.is_zero()) return 0;
    if (v.size() != 1 || v.leading().mono.degree() != 0)
        throw Error("integrate_number: result still depends on parameters: " + v.to_string());
    return v.leading().coeff;
}

RatPoly TowerRing::z_cube_polynomial(long m, long t, long b1, long b2) const {
    if (b1 + b2 != m)
        throw SplitMismatch("split (" + std::to_string(b1) + ", " + std::to_string(b2) + ") does not sum to m = " +
                            std::to_string(m));
    TowerElement base = constant(2) * u1() + u2() - tau() * h();
    TowerElement last = constant(b1) * u1() + constant(b2) * u2() - constant(t) * h();
    return integrate(base * base * base * last);
}

mpq_class TowerRing::z_cube_intersection(long m, long t, const mpq_class& tau_value, long b1, long b2) const {
    RatPoly v = z_cube_polynomial(m, t, b1, b2).substitute(towervar::tau, constant(tau_value));
    if (v.is_zero()) return 0;
    if (v.size() != 1 || v.leading().mono.degree() != 0)
        throw Error("z_cube_intersection: result depends on symbolic Chern classes");
    return v.leading().coeff;
}

mpq_class z_cube_closed_form(long m, long t, const mpq_class& tau) {
    return 3 * (m * tau * tau - 3 * (4 * m - t) * tau + 12 * (m - t));
}

std::string tower_monomial_name(unsigned a, unsigned b, unsigned c) {
    std::string out;
    auto add = [&](const char* name, unsigned e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += name;
        if (e > 1) out += "^" + std::to_string(e);
    };
    add("u1", a);
    add("u2", b);
    add("h", c);
    return out.empty() ? "1" : out;
}

}  // namespace conicjet
