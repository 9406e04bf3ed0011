#pragma once

// Coefficient rings for MultiPoly. Each ring is a small value type carrying
// whatever runtime context it needs (the prime for GF(p)); two rings compare
// equal iff their elements are interchangeable.

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "conicjet/errors.hpp"

namespace conicjet {

bool is_prime(std::uint64_t n);

class Integers {
public:
    using value_type = mpz_class;

    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type from_int(long long v) { return mpz_class(static_cast<long>(v)); }
    static value_type from_mpz(const mpz_class& v) { return v; }

    static bool is_zero(const value_type& a) { return sgn(a) == 0; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type sub(const value_type& a, const value_type& b) { return a - b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static value_type neg(const value_type& a) { return -a; }
    static void add_mul(value_type& acc, const value_type& a, const value_type& b) {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }

    // Exact quotient a/b if b divides a.
    static std::optional<value_type> div(const value_type& a, const value_type& b) {
        if (sgn(b) == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) {
            return std::nullopt;
        }
        value_type q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }

    static std::string to_string(const value_type& a) { return a.get_str(); }
    static bool is_negative(const value_type& a) { return sgn(a) < 0; }
    static std::string name() { return "ZZ"; }

    bool operator==(const Integers&) const { return true; }
};

class Rationals {
public:
    using value_type = mpq_class;

    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type from_int(long long v) { return mpq_class(static_cast<long>(v)); }
    static value_type from_mpz(const mpz_class& v) { return mpq_class(v); }

    static bool is_zero(const value_type& a) { return sgn(a) == 0; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type sub(const value_type& a, const value_type& b) { return a - b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static value_type neg(const value_type& a) { return -a; }
    static void add_mul(value_type& acc, const value_type& a, const value_type& b) { acc += a * b; }

    static std::optional<value_type> div(const value_type& a, const value_type& b) {
        if (sgn(b) == 0) return std::nullopt;
        return value_type(a / b);
    }

    static std::string to_string(const value_type& a) { return a.get_str(); }
    static bool is_negative(const value_type& a) { return sgn(a) < 0; }
    static std::string name() { return "QQ"; }

    bool operator==(const Rationals&) const { return true; }
};

// GF(p) for a prime p < 2^61; elements are canonical representatives 0..p-1.
class PrimeField {
public:
    using value_type = std::uint64_t;

    static constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 61);

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 2 || p >= kMaxPrime || !is_prime(p)) {
            throw RingMismatch("GF(p) requires a prime p < 2^61, got " + std::to_string(p));
        }
    }

    std::uint64_t prime() const noexcept { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        return static_cast<value_type>(r < 0 ? r + static_cast<long long>(p_) : r);
    }
    value_type from_mpz(const mpz_class& v) const {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
        return r.get_ui();
    }

    bool is_zero(value_type a) const { return a == 0; }
    value_type add(value_type a, value_type b) const {
        value_type s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const {
        if (p_ < (std::uint64_t{1} << 32)) return (a * b) % p_;
        return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p_);
    }
    void add_mul(value_type& acc, value_type a, value_type b) const { acc = add(acc, mul(a, b)); }

    value_type pow(value_type a, std::uint64_t e) const {
        value_type r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    value_type inv(value_type a) const {
        if (a == 0) throw Error("inverse of zero in GF(" + std::to_string(p_) + ")");
        return pow(a, p_ - 2);
    }
    std::optional<value_type> div(value_type a, value_type b) const {
        if (b == 0) return std::nullopt;
        return mul(a, inv(b));
    }

    std::string to_string(value_type a) const { return std::to_string(a); }
    bool is_negative(value_type) const { return false; }
    std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint64_t p_;
};

}  // namespace conicjet
