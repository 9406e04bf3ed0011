#pragma once

// Sparse multivariate polynomials over an exact coefficient ring.
//
// Terms are kept sorted by the graded lexicographic order (total degree
// first, then lexicographic with variable 0 largest), leading term first, with
// no stored zero coefficients. Two equal polynomials therefore have identical
// term vectors, and all iteration (rendering, equation emission) follows the
// same order on every run.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "conicjet/errors.hpp"
#include "conicjet/rings.hpp"

namespace conicjet {

inline constexpr std::size_t kMaxVars = 8;

struct Monomial {
    std::array<std::uint16_t, kMaxVars> exp{};

    unsigned degree() const {
        unsigned d = 0;
        for (auto e : exp) d += e;
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            unsigned s = unsigned(exp[i]) + o.exp[i];
            if (s > 0xFFFF) throw Error("monomial exponent overflow");
            r.exp[i] = static_cast<std::uint16_t>(s);
        }
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exp[i] > o.exp[i]) return false;
        return true;
    }

    // Precondition: divides(o).
    Monomial quotient_into(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(o.exp[i] - exp[i]);
        return r;
    }

    bool operator==(const Monomial&) const = default;
};

// true iff a > b in graded lexicographic order.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return a.exp > b.exp;
}

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto e : m.exp) {
            h ^= e;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

template <class Ring>
class MultiPoly {
public:
    using Coeff = typename Ring::value_type;

    struct Term {
        Monomial mono;
        Coeff coeff;
    };

    MultiPoly(Ring ring, std::size_t arity) : ring_(std::move(ring)), arity_(arity) {
        if (arity > kMaxVars) throw Error("MultiPoly arity exceeds " + std::to_string(kMaxVars));
    }

    static MultiPoly constant(const Ring& ring, std::size_t arity, const Coeff& c) {
        MultiPoly r(ring, arity);
        if (!ring.is_zero(c)) r.terms_.push_back({Monomial{}, c});
        return r;
    }

    static MultiPoly variable(const Ring& ring, std::size_t arity, std::size_t var) {
        MultiPoly r(ring, arity);
        r.check_var(var);
        Monomial m;
        m.exp[var] = 1;
        r.terms_.push_back({m, ring.one()});
        return r;
    }

    static MultiPoly monomial(const Ring& ring, std::size_t arity, const Monomial& m, const Coeff& c) {
        MultiPoly r(ring, arity);
        for (std::size_t i = arity; i < kMaxVars; ++i)
            if (m.exp[i] != 0) throw Error("monomial uses a variable beyond the polynomial arity");
        if (!ring.is_zero(c)) r.terms_.push_back({m, c});
        return r;
    }

    // Builds a polynomial from arbitrary (possibly repeated, unordered) terms.
    static MultiPoly from_terms(const Ring& ring, std::size_t arity, std::vector<Term> terms) {
        MultiPoly r(ring, arity);
        std::unordered_map<Monomial, Coeff, MonomialHash> acc;
        acc.reserve(terms.size());
        for (auto& t : terms) {
            auto [it, inserted] = acc.try_emplace(t.mono, t.coeff);
            if (!inserted) it->second = ring.add(it->second, t.coeff);
        }
        r.adopt(acc);
        return r;
    }

    const Ring& ring() const noexcept { return ring_; }
    std::size_t arity() const noexcept { return arity_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    const Term& leading() const { return terms_.front(); }

    int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.degree()); }

    int degree(std::size_t var) const {
        check_var(var);
        int d = -1;
        for (const auto& t : terms_) d = std::max<int>(d, t.mono.exp[var]);
        return d;
    }

    bool is_homogeneous() const {
        for (const auto& t : terms_)
            if (t.mono.degree() != terms_.front().mono.degree()) return false;
        return true;
    }

    Coeff coefficient(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.mono == m) return t.coeff;
        return ring_.zero();
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.coeff = ring_.neg(t.coeff);
        return r;
    }

    MultiPoly operator+(const MultiPoly& o) const { return merge(o, false); }
    MultiPoly operator-(const MultiPoly& o) const { return merge(o, true); }
    MultiPoly& operator+=(const MultiPoly& o) { return *this = merge(o, false); }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = merge(o, true); }

    MultiPoly operator*(const MultiPoly& o) const {
        check_compatible(o);
        MultiPoly r(ring_, arity_);
        if (is_zero() || o.is_zero()) return r;
        if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
        if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
        std::unordered_map<Monomial, Coeff, MonomialHash> acc;
        acc.reserve(std::min<std::size_t>(terms_.size() * o.terms_.size(), std::size_t{1} << 22));
        for (const auto& a : terms_) {
            for (const auto& b : o.terms_) {
                auto [it, inserted] = acc.try_emplace(a.mono * b.mono, ring_.zero());
                ring_.add_mul(it->second, a.coeff, b.coeff);
            }
        }
        r.adopt(acc);
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly scaled(const Coeff& c) const {
        MultiPoly r(ring_, arity_);
        if (ring_.is_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            Coeff v = ring_.mul(t.coeff, c);
            if (!ring_.is_zero(v)) r.terms_.push_back({t.mono, std::move(v)});
        }
        return r;
    }

    // Multiplication by c * m; the grlex order is preserved by monomial shifts.
    MultiPoly mul_term(const Monomial& m, const Coeff& c) const {
        MultiPoly r(ring_, arity_);
        if (ring_.is_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            Coeff v = ring_.mul(t.coeff, c);
            if (!ring_.is_zero(v)) r.terms_.push_back({t.mono * m, std::move(v)});
        }
        return r;
    }

    MultiPoly pow(unsigned n) const {
        MultiPoly result = constant(ring_, arity_, ring_.one());
        MultiPoly base = *this;
        while (n) {
            if (n & 1) result = result * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return result;
    }

    MultiPoly derivative(std::size_t var) const {
        check_var(var);
        std::vector<Term> out;
        for (const auto& t : terms_) {
            if (t.mono.exp[var] == 0) continue;
            Term d{t.mono, ring_.mul(t.coeff, ring_.from_int(t.mono.exp[var]))};
            d.mono.exp[var] -= 1;
            if (!ring_.is_zero(d.coeff)) out.push_back(std::move(d));
        }
        return from_terms(ring_, arity_, std::move(out));
    }

    // f(..., var := g, ...). g must have the same ring and arity.
    MultiPoly substitute(std::size_t var, const MultiPoly& g) const {
        check_var(var);
        check_compatible(g);
        int dmax = degree(var);
        if (dmax <= 0) return *this;
        std::vector<MultiPoly> powers;
        powers.reserve(dmax + 1);
        powers.push_back(constant(ring_, arity_, ring_.one()));
        for (int e = 1; e <= dmax; ++e) powers.push_back(powers.back() * g);
        std::vector<std::vector<Term>> by_power(dmax + 1);
        for (const auto& t : terms_) {
            Term s = t;
            s.mono.exp[var] = 0;
            by_power[t.mono.exp[var]].push_back(std::move(s));
        }
        MultiPoly r(ring_, arity_);
        for (int e = 0; e <= dmax; ++e) {
            if (by_power[e].empty()) continue;
            r += from_terms(ring_, arity_, std::move(by_power[e])) * powers[e];
        }
        return r;
    }

    // Evaluates every variable; values.size() must equal arity.
    Coeff evaluate(std::span<const Coeff> values) const {
        if (values.size() != arity_) throw RingMismatch("evaluate: wrong number of values");
        Coeff sum = ring_.zero();
        for (const auto& t : terms_) {
            Coeff v = t.coeff;
            for (std::size_t i = 0; i < arity_; ++i)
                for (unsigned e = 0; e < t.mono.exp[i]; ++e) v = ring_.mul(v, values[i]);
            sum = ring_.add(sum, v);
        }
        return sum;
    }

    template <class Target, class Fn>
    MultiPoly<Target> map_coefficients(const Target& target, Fn&& fn) const {
        std::vector<typename MultiPoly<Target>::Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) out.push_back({t.mono, fn(t.coeff)});
        return MultiPoly<Target>::from_terms(target, arity_, std::move(out));
    }

    // Canonical rendering in the fixed term order, e.g. "32*Z0*Z1*Z2" or "x^2 - y^2".
    std::string to_string(std::span<const std::string> names = {}) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& t : terms_) {
            bool negative = ring_.is_negative(t.coeff);
            std::string c = ring_.to_string(negative ? ring_.neg(t.coeff) : t.coeff);
            if (first) {
                if (negative) out += "-";
            } else {
                out += negative ? " - " : " + ";
            }
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < arity_; ++i) {
                if (t.mono.exp[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += i < names.size() ? names[i] : "x" + std::to_string(i);
                if (t.mono.exp[i] > 1) mono += "^" + std::to_string(t.mono.exp[i]);
            }
            if (mono.empty()) {
                out += c;
            } else if (c == "1") {
                out += mono;
            } else {
                out += c + "*" + mono;
            }
        }
        return out;
    }

    bool operator==(const MultiPoly& o) const {
        if (!(ring_ == o.ring_) || arity_ != o.arity_ || terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (!(terms_[i].mono == o.terms_[i].mono) || !(terms_[i].coeff == o.terms_[i].coeff)) return false;
        return true;
    }

    void check_compatible(const MultiPoly& o) const {
        if (!(ring_ == o.ring_))
            throw RingMismatch("ring mismatch: " + ring_.name() + " vs " + o.ring_.name());
        if (arity_ != o.arity_)
            throw RingMismatch("arity mismatch: " + std::to_string(arity_) + " vs " + std::to_string(o.arity_));
    }

    void check_var(std::size_t var) const {
        if (var >= arity_) throw Error("variable index " + std::to_string(var) + " out of range");
    }

private:
    void adopt(std::unordered_map<Monomial, Coeff, MonomialHash>& acc) {
        terms_.clear();
        terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!ring_.is_zero(c)) terms_.push_back({m, std::move(c)});
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
    }

    MultiPoly merge(const MultiPoly& o, bool subtract) const {
        check_compatible(o);
        MultiPoly r(ring_, arity_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && grlex_greater(terms_[i].mono, o.terms_[j].mono))) {
                r.terms_.push_back(terms_[i++]);
            } else if (i == terms_.size() || grlex_greater(o.terms_[j].mono, terms_[i].mono)) {
                const auto& t = o.terms_[j++];
                r.terms_.push_back({t.mono, subtract ? ring_.neg(t.coeff) : t.coeff});
            } else {
                Coeff v = subtract ? ring_.sub(terms_[i].coeff, o.terms_[j].coeff)
                                   : ring_.add(terms_[i].coeff, o.terms_[j].coeff);
                if (!ring_.is_zero(v)) r.terms_.push_back({terms_[i].mono, std::move(v)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    Ring ring_;
    std::size_t arity_;
    std::vector<Term> terms_;
};

using IntPoly = MultiPoly<Integers>;
using RatPoly = MultiPoly<Rationals>;
using ModPoly = MultiPoly<PrimeField>;

// Quotient q with f = q * g; throws NonDivisible carrying the first nonzero
// remainder met during grlex division.
template <class Ring>
MultiPoly<Ring> exact_div(const MultiPoly<Ring>& f, const MultiPoly<Ring>& g) {
    f.check_compatible(g);
    if (g.is_zero()) throw Error("exact_div by the zero polynomial");
    const Ring& ring = f.ring();
    if (g.size() == 1) {
        const auto& lt = g.leading();
        std::vector<typename MultiPoly<Ring>::Term> out;
        out.reserve(f.size());
        for (const auto& t : f.terms()) {
            auto c = ring.div(t.coeff, lt.coeff);
            if (!lt.mono.divides(t.mono) || !c) {
                std::vector<typename MultiPoly<Ring>::Term> rest;
                for (const auto& u : f.terms()) {
                    auto cu = ring.div(u.coeff, lt.coeff);
                    if (!lt.mono.divides(u.mono) || !cu) rest.push_back(u);
                }
                auto rem = MultiPoly<Ring>::from_terms(ring, f.arity(), std::move(rest));
                throw NonDivisible(rem.to_string(), rem.size());
            }
            out.push_back({lt.mono.quotient_into(t.mono), std::move(*c)});
        }
        return MultiPoly<Ring>::from_terms(ring, f.arity(), std::move(out));
    }
    MultiPoly<Ring> q(ring, f.arity());
    MultiPoly<Ring> r = f;
    const auto& lt = g.leading();
    while (!r.is_zero()) {
        const auto& lr = r.leading();
        auto c = ring.div(lr.coeff, lt.coeff);
        if (!lt.mono.divides(lr.mono) || !c) throw NonDivisible(r.to_string(), r.size());
        Monomial m = lt.mono.quotient_into(lr.mono);
        auto step = MultiPoly<Ring>::monomial(ring, f.arity(), m, *c);
        q += step;
        r -= g.mul_term(m, *c);
    }
    return q;
}

// The part of f that blocks divisibility by var_a^e_a * var_b^e_b: the terms
// whose var_a-degree is below e_a or whose var_b-degree is below e_b.
template <class Ring>
MultiPoly<Ring> obstruction(const MultiPoly<Ring>& f, std::size_t var_a, unsigned e_a, std::size_t var_b,
                            unsigned e_b) {
    f.check_var(var_a);
    f.check_var(var_b);
    if (var_a == var_b) throw Error("obstruction: the two variables must differ");
    std::vector<typename MultiPoly<Ring>::Term> out;
    for (const auto& t : f.terms())
        if (t.mono.exp[var_a] < e_a || t.mono.exp[var_b] < e_b) out.push_back(t);
    // Subsequence of a sorted term list: already canonical.
    return MultiPoly<Ring>::from_terms(f.ring(), f.arity(), std::move(out));
}

// Coefficient of prod vars[i]^exps[i] in f, as a polynomial in the remaining
// variables (same arity; the extracted variables no longer occur).
template <class Ring>
MultiPoly<Ring> coefficient_of(const MultiPoly<Ring>& f, std::span<const std::size_t> vars,
                               std::span<const unsigned> exps) {
    if (vars.size() != exps.size()) throw Error("coefficient_of: vars and exps differ in length");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        f.check_var(vars[i]);
        for (std::size_t j = 0; j < i; ++j)
            if (vars[i] == vars[j]) throw Error("coefficient_of: repeated variable");
    }
    std::vector<typename MultiPoly<Ring>::Term> out;
    for (const auto& t : f.terms()) {
        bool match = true;
        for (std::size_t i = 0; i < vars.size() && match; ++i) match = t.mono.exp[vars[i]] == exps[i];
        if (!match) continue;
        auto s = t;
        for (auto v : vars) s.mono.exp[v] = 0;
        out.push_back(std::move(s));
    }
    return MultiPoly<Ring>::from_terms(f.ring(), f.arity(), std::move(out));
}

inline ModPoly reduce_mod(const IntPoly& f, const PrimeField& field) {
    return f.map_coefficients(field, [&](const mpz_class& c) { return field.from_mpz(c); });
}

inline RatPoly to_rational(const IntPoly& f) {
    return f.map_coefficients(Rationals{}, [](const mpz_class& c) { return mpq_class(c); });
}

}  // namespace conicjet
