#include <doctest.h>

#include <random>

#include "conicjet/tower.hpp"

using namespace conicjet;

namespace {

// Reduces with the relations applied in a random order, one term at a time.
TowerElement random_order_reduce(const TowerRing& ring, TowerElement e, std::mt19937_64& rng) {
    const TowerElement rule_u1 = -(ring.cbar1() * ring.u1()) - ring.cbar2();
    const TowerElement rule_u2 =
        -((ring.cbar1() + ring.u1()) * ring.u2()) - (ring.constant(2) * ring.cbar2() + ring.cbar1() * ring.u1());
    for (;;) {
        std::vector<std::size_t> reducible;
        for (std::size_t i = 0; i < e.terms().size(); ++i) {
            const auto& m = e.terms()[i].mono;
            if (m.exp[towervar::h] >= 3 || m.exp[towervar::u1] >= 2 || m.exp[towervar::u2] >= 2) reducible.push_back(i);
        }
        if (reducible.empty()) return e;
        const auto term = e.terms()[reducible[rng() % reducible.size()]];
        Monomial m = term.mono;
        std::vector<int> options;
        if (m.exp[towervar::h] >= 3) options.push_back(0);
        if (m.exp[towervar::u1] >= 2) options.push_back(1);
        if (m.exp[towervar::u2] >= 2) options.push_back(2);
        const int pick = options[rng() % options.size()];
        TowerElement replacement(Rationals{}, towervar::arity);
        if (pick == 1) {
            m.exp[towervar::u1] -= 2;
            replacement = rule_u1.mul_term(m, term.coeff);
        } else if (pick == 2) {
            m.exp[towervar::u2] -= 2;
            replacement = rule_u2.mul_term(m, term.coeff);
        }
        e = e - TowerElement::monomial(Rationals{}, towervar::arity, term.mono, term.coeff) + replacement;
    }
}

TowerElement power(const TowerElement& x, unsigned n) { return x.pow(n); }

}  // namespace

TEST_CASE("quartic monomials for three conics") {
    const TowerRing r = TowerRing::three_conics();
    const mpq_class expect[] = {0, 0, 9, -18, 36};
    for (unsigned b = 0; b <= 4; ++b) {
        CAPTURE(b);
        CHECK(r.integrate_number(power(r.u1(), 4 - b) * power(r.u2(), b)) == expect[b]);
    }
}

TEST_CASE("quartic monomials with symbolic Chern classes") {
    const TowerRing r = TowerRing::symbolic();
    const RatPoly g = RatPoly::variable(Rationals{}, towervar::arity, towervar::gamma);
    const RatPoly b = RatPoly::variable(Rationals{}, towervar::arity, towervar::beta);
    const RatPoly zero(Rationals{}, towervar::arity);
    const RatPoly expect[] = {zero, g * g - b, b, g * g - b.scaled(3), b.scaled(5) - g * g};
    for (unsigned k = 0; k <= 4; ++k) CHECK(r.integrate(power(r.u1(), 4 - k) * power(r.u2(), k)) == expect[k]);
}

TEST_CASE("mixed rules with h") {
    const TowerRing r = TowerRing::three_conics();
    const TowerElement h = r.h(), u1 = r.u1(), u2 = r.u2();
    CHECK(r.integrate_number(u1 * u1 * h * h) == 0);
    CHECK(r.integrate_number(u1 * u2 * h * h) == 1);
    CHECK(r.integrate_number(u2 * u2 * h * h) == -1);
    CHECK(r.integrate_number(u1 * u1 * u1 * h) == 0);
    CHECK(r.integrate_number(u1 * u1 * u2 * h) == 3);  // -gamma
    CHECK(r.integrate_number(u1 * u2 * u2 * h) == 0);
    CHECK(r.integrate_number(u2 * u2 * u2 * h) == 0);
    CHECK(r.integrate_number(h * h * h * u1) == 0);
}

TEST_CASE("reduction is confluent on random quartics") {
    std::mt19937_64 rng(42);
    for (const TowerRing& r : {TowerRing::three_conics(), TowerRing::symbolic()}) {
        for (int trial = 0; trial < 200; ++trial) {
            unsigned e[3] = {0, 0, 0};
            for (int i = 0; i < 4; ++i) ++e[rng() % 3];
            TowerElement mono = power(r.u1(), e[0]) * power(r.u2(), e[1]) * power(r.h(), e[2]);
            CHECK(random_order_reduce(r, mono, rng) == r.reduce(mono));
        }
    }
}

TEST_CASE("z-cube intersection matches the closed form for every split") {
    const TowerRing r = TowerRing::three_conics();
    const mpq_class taus[] = {0, mpq_class(1, 2), 1};
    for (long m = 1; m <= 10; ++m)
        for (long t = 0; t <= m; ++t)
            for (const auto& tau : taus)
                for (long b1 = 0; b1 <= m; ++b1)
                    CHECK(r.z_cube_intersection(m, t, tau, b1, m - b1) == z_cube_closed_form(m, t, tau));
    CHECK(z_cube_closed_form(3, 1, 0) == 72);
    CHECK_THROWS_AS(r.z_cube_intersection(3, 1, 0, 1, 1), SplitMismatch);
}

TEST_CASE("split independence with symbolic Chern classes") {
    const TowerRing r = TowerRing::symbolic();
    for (long m = 1; m <= 6; ++m)
        for (long b1 = 1; b1 <= m; ++b1)
            CHECK(r.z_cube_polynomial(m, 2, b1, m - b1) == r.z_cube_polynomial(m, 2, 0, m));
}

TEST_CASE("integration needs codimension 4") {
    const TowerRing r = TowerRing::three_conics();
    CHECK_THROWS_AS(r.integrate(r.u1() * r.u2()), DegreeMismatch);
    CHECK(r.integrate_number(r.u1() * r.u2() * r.h() * r.h() * r.constant(0)) == 0);
    CHECK(tower_monomial_name(1, 2, 0) == "u1*u2^2");
    CHECK(tower_monomial_name(0, 0, 0) == "1");
}
