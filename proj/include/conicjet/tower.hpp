#pragma once

// Intersection ring of the two-step Demailly-Semple tower X2 -> X1 -> P^2
// over a log surface with Chern classes cbar1 = gamma*h, cbar2 = beta*h^2.
//
// Classes: u1 (pulled back from X1), u2 = O_{X2}(1), h = O_{P^2}(1). The only
// relations used are
//     h^3 = 0,
//     u1^2 = -cbar1 u1 - cbar2,
//     u2^2 = -(cbar1 + u1) u2 - (2 cbar2 + cbar1 u1),
// whose leading terms u1^2, u2^2, h^3 are pairwise coprime, so rewriting is
// confluent. Normal forms live in span{u1^a u2^b h^c : a, b <= 1, c <= 2} and
// the degree of a top class is its coefficient of u1 u2 h^2.
//
// Elements are polynomials in (u1, u2, h, tau, gamma, beta); the last three
// are parameters that are never rewritten, so identities can be checked with
// gamma and beta left symbolic.

#include <string>

#include "conicjet/multipoly.hpp"

namespace conicjet {

namespace towervar {
inline constexpr std::size_t u1 = 0, u2 = 1, h = 2, tau = 3, gamma = 4, beta = 5;
inline constexpr std::size_t arity = 6;
}  // namespace towervar

using TowerElement = RatPoly;

class TowerRing {
public:
    // Three conics in P^2: cbar1 = -3h, cbar2 = 9h^2.
    static TowerRing three_conics() { return TowerRing(mpq_class(-3), mpq_class(9)); }
    // gamma and beta left as the parameter variables.
    static TowerRing symbolic() { return TowerRing(); }
    TowerRing(const mpq_class& gamma, const mpq_class& beta);

    TowerElement u1() const { return var(towervar::u1); }
    TowerElement u2() const { return var(towervar::u2); }
    TowerElement h() const { return var(towervar::h); }
    TowerElement tau() const { return var(towervar::tau); }
    TowerElement constant(const mpq_class& c) const;
    TowerElement cbar1() const { return gamma_ * h(); }
    TowerElement cbar2() const { return beta_ * h() * h(); }

    TowerElement reduce(const TowerElement& e) const;
    // Degree of a class of codimension 4 (parameters may remain). Throws
    // DegreeMismatch if e has a term of other codimension.
    RatPoly integrate(const TowerElement& e) const;
    // integrate() for parameter-free results.
    mpq_class integrate_number(const TowerElement& e) const;

    // (2u1 + u2 - tau h)^3 (b1 u1 + b2 u2 - t h). Throws SplitMismatch unless
    // b1 + b2 = m.
    mpq_class z_cube_intersection(long m, long t, const mpq_class& tau, long b1, long b2) const;
    // The same with tau left symbolic.
    RatPoly z_cube_polynomial(long m, long t, long b1, long b2) const;

private:
    TowerRing();
    TowerElement var(std::size_t i) const { return RatPoly::variable(Rationals{}, towervar::arity, i); }

    TowerElement gamma_, beta_;
};

// 3(m tau^2 - 3(4m - t) tau + 12(m - t))
mpq_class z_cube_closed_form(long m, long t, const mpq_class& tau);

std::string tower_monomial_name(unsigned a, unsigned b, unsigned c);

}  // namespace conicjet
