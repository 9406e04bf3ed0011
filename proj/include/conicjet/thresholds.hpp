#pragma once

// Closed-form thresholds: the one-jet ratio delta_1 for three curves of given
// degrees, the two-jet Euler characteristic polynomial, the roots tau_1 <
// tau_2 of m tau^2 - 3(4m - t) tau + 12(m - t), and the enumerator of the
// (m, t) pairs left uncovered by both analytic regimes.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "conicjet/errors.hpp"

namespace conicjet {

// Exact real number p + q * sqrt(r), p and q rational, r a squarefree
// positive integer (r = 1 only when q = 0).
class QuadSurd {
public:
    QuadSurd() : p_(0), q_(0), r_(1) {}
    explicit QuadSurd(mpq_class p) : p_(std::move(p)), q_(0), r_(1) { p_.canonicalize(); }
    // Pulls square factors out of the radicand; radicand must be >= 0.
    QuadSurd(mpq_class p, mpq_class q, mpz_class radicand);

    const mpq_class& rational_part() const { return p_; }
    const mpq_class& surd_coefficient() const { return q_; }
    const mpz_class& radicand() const { return r_; }
    bool is_rational() const { return sgn(q_) == 0; }

    QuadSurd operator+(const QuadSurd& o) const;
    QuadSurd operator-(const QuadSurd& o) const;
    QuadSurd operator*(const QuadSurd& o) const;
    QuadSurd operator/(const QuadSurd& o) const;
    QuadSurd operator-() const { return QuadSurd(-p_, -q_, r_); }
    QuadSurd inverse() const;
    bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }
    int sign() const;
    bool operator==(const QuadSurd& o) const { return p_ == o.p_ && q_ == o.q_ && r_ == o.r_; }
    bool operator<(const QuadSurd& o) const { return (*this - o).sign() < 0; }

    // e.g. "(6 - sqrt(33))/12", "4", "(4 + sqrt(10))/9".
    std::string to_string() const;
    // Decimal expansion with `digits` significant digits after the point.
    std::string decimal(int digits = 30) const;
    double to_double() const;

private:
    mpq_class p_, q_;
    mpz_class r_;
};

// Sorted so that d1 >= d2 >= d3 >= 1.
struct DegreeTriple {
    DegreeTriple(long a, long b, long c);
    long d1, d2, d3;
    long d() const { return d1 + d2 + d3; }
    long e2() const { return d1 * d2 + d2 * d3 + d3 * d1; }
};

struct Delta1Report {
    DegreeTriple degrees;
    mpz_class radicand;                   // 9(d-1)^2 - 12 e2
    bool negative_radicand = false;       // delta_1 undefined
    bool hypothesis_ok = false;           // d1 >= 3 and d3 >= 2
    std::optional<QuadSurd> delta1;
    std::optional<QuadSurd> constant;     // 1/((d-3) delta_1), when delta_1 != 0
    std::optional<QuadSurd> phi_at_delta1;
};

// Throws DegenerateTotalDegree when d = 3.
Delta1Report delta1(const DegreeTriple& dt);
// (d-3)^2 x^2 - (d-3)^2 x + e2/3 - d + 2
QuadSurd phi(const DegreeTriple& dt, const QuadSurd& x);

// 54 x^2 - 48 x + 4
mpq_class two_jet_phi(const mpq_class& x);
QuadSurd two_jet_phi(const QuadSurd& x);
std::pair<QuadSurd, QuadSurd> two_jet_roots();

// Roots of m tau^2 - 3(4m - t) tau + 12(m - t), tau_1 <= tau_2. Rational m, t
// allowed so that ratios can be probed directly.
std::pair<QuadSurd, QuadSurd> tau_roots(const mpq_class& m, const mpq_class& t);
// tau_1 for the ratio s = t/m as a double.
double tau1_ratio(double s);
// min over s = k/N, k = 1..N-1, of 2 / tau_1(s).
double tau_inverse_grid_infimum(long grid_points);
// 6 - 2 sqrt(6), the limit of tau_1 as t/m -> 0.
QuadSurd tau1_limit();

// g(c) = 2(3c^2 - 6c + 1) / (3c(2c - 1)).
mpq_class region_constant(const mpq_class& c);
// Is c > (3 + sqrt 6)/3?
bool constant_admissible(const mpq_class& c);

struct ExceptionalPair {
    unsigned m;
    unsigned t;
    bool operator==(const ExceptionalPair&) const = default;
};

// For m = 3..m_max, the least integer t >= 1 with g(c) m <= t < m/c + 7.
// Throws ConstantTooSmall unless constant_admissible(c).
std::vector<ExceptionalPair> exceptional_pairs(const mpq_class& c, unsigned m_max);

// floor(g(5) m) = floor(92 m / 135) for m = m_lo..m_hi.
std::vector<long> floor_table(const mpq_class& c, unsigned m_lo, unsigned m_hi);

// Parses "5", "19", "7/2" or "3.25".
mpq_class parse_rational(const std::string& text);

}  // namespace conicjet
