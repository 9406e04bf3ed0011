#include "conicjet/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conicjet {

namespace {

// r = s^2 * core with core squarefree, by trial division. Radicands here are
// small; for large ones only a perfect-square check is made.
std::pair<mpz_class, mpz_class> split_square(const mpz_class& r) {
    if (sgn(r) == 0) return {0, 1};
    if (mpz_perfect_square_p(r.get_mpz_t())) {
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), r.get_mpz_t());
        return {s, 1};
    }
    mpz_class core = r, out = 1;
    if (mpz_sizeinbase(r.get_mpz_t(), 2) <= 64) {
        for (mpz_class f = 2; f * f <= core; ++f) {
            mpz_class sq = f * f;
            while (mpz_divisible_p(core.get_mpz_t(), sq.get_mpz_t())) {
                core /= sq;
                out *= f;
            }
        }
    }
    return {out, core};
}

void require_same_radicand(const QuadSurd& a, const QuadSurd& b) {
    if (!a.is_rational() && !b.is_rational() && a.radicand() != b.radicand())
        throw Error("QuadSurd arithmetic across different radicands");
}

const mpz_class& common_radicand(const QuadSurd& a, const QuadSurd& b) {
    return a.is_rational() ? b.radicand() : a.radicand();
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

mpq_class frac(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

QuadSurd::QuadSurd(mpq_class p, mpq_class q, mpz_class radicand) : p_(std::move(p)), q_(std::move(q)), r_(1) {
    p_.canonicalize();
    q_.canonicalize();
    if (sgn(radicand) < 0) throw Error("negative radicand " + radicand.get_str());
    auto [s, core] = split_square(radicand);
    if (sgn(s) == 0 || sgn(q_) == 0) {
        q_ = 0;
        return;
    }
    if (core == 1) {
        p_ += q_ * s;
        q_ = 0;
        return;
    }
    q_ *= s;
    r_ = core;
}

QuadSurd QuadSurd::operator+(const QuadSurd& o) const {
    require_same_radicand(*this, o);
    return QuadSurd(p_ + o.p_, q_ + o.q_, common_radicand(*this, o));
}

QuadSurd QuadSurd::operator-(const QuadSurd& o) const { return *this + (-o); }

QuadSurd QuadSurd::operator*(const QuadSurd& o) const {
    require_same_radicand(*this, o);
    const mpz_class& r = common_radicand(*this, o);
    return QuadSurd(p_ * o.p_ + q_ * o.q_ * mpq_class(r), p_ * o.q_ + q_ * o.p_, r);
}

QuadSurd QuadSurd::inverse() const {
    mpq_class norm = p_ * p_ - q_ * q_ * mpq_class(r_);
    if (sgn(norm) == 0) throw Error("QuadSurd: division by zero");
    return QuadSurd(p_ / norm, -q_ / norm, r_);
}

QuadSurd QuadSurd::operator/(const QuadSurd& o) const { return *this * o.inverse(); }

int QuadSurd::sign() const {
    // sign(p + q sqrt r) decided exactly by comparing p^2 with q^2 r.
    int sp = sgn(p_), sq = sgn(q_);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    mpq_class lhs = p_ * p_, rhs = q_ * q_ * mpq_class(r_);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sp : sq;
}

std::string QuadSurd::to_string() const {
    if (is_rational()) return rational_text(p_);
    mpz_class den;
    mpz_lcm(den.get_mpz_t(), p_.get_den_mpz_t(), q_.get_den_mpz_t());
    mpq_class pa = p_ * den, qb = q_ * den;
    mpz_class a = pa.get_num(), b = qb.get_num();
    std::string root = "sqrt(" + r_.get_str() + ")";
    mpz_class babs = abs(b);
    std::string surd = (babs == 1 ? "" : babs.get_str() + "*") + root;
    std::string body;
    if (sgn(a) == 0)
        body = (sgn(b) < 0 ? "-" : "") + surd;
    else
        body = a.get_str() + (sgn(b) < 0 ? " - " : " + ") + surd;
    if (den == 1) return body;
    return "(" + body + ")/" + den.get_str();
}

std::string QuadSurd::decimal(int digits) const {
    const mp_bitcnt_t bits = static_cast<mp_bitcnt_t>(digits * 3.33) + 64;
    mpf_class root(0, bits), p(p_, bits), q(q_, bits), r(r_, bits);
    root = sqrt(r);
    mpf_class v(p + q * root, bits);
    mp_exp_t exp;
    std::string mant = v.get_str(exp, 10, static_cast<std::size_t>(digits) + 20);
    // Render as fixed point with `digits` fractional digits.
    bool negative = !mant.empty() && mant[0] == '-';
    if (negative) mant.erase(0, 1);
    std::string int_part, frac_part;
    if (exp <= 0) {
        int_part = "0";
        frac_part = std::string(static_cast<std::size_t>(-exp), '0') + mant;
    } else if (static_cast<std::size_t>(exp) >= mant.size()) {
        int_part = mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
    } else {
        int_part = mant.substr(0, static_cast<std::size_t>(exp));
        frac_part = mant.substr(static_cast<std::size_t>(exp));
    }
    frac_part.resize(static_cast<std::size_t>(digits), '0');
    if (mant.empty()) return "0." + std::string(static_cast<std::size_t>(digits), '0');
    return (negative ? "-" : "") + int_part + "." + frac_part;
}

double QuadSurd::to_double() const { return p_.get_d() + q_.get_d() * std::sqrt(r_.get_d()); }

DegreeTriple::DegreeTriple(long a, long b, long c) {
    if (a < 1 || b < 1 || c < 1) throw Error("curve degrees must be positive");
    long v[3] = {a, b, c};
    std::sort(v, v + 3, [](long x, long y) { return x > y; });
    d1 = v[0];
    d2 = v[1];
    d3 = v[2];
}

QuadSurd phi(const DegreeTriple& dt, const QuadSurd& x) {
    const mpq_class a = mpq_class((dt.d() - 3) * (dt.d() - 3));
    const mpq_class b = frac(dt.e2(), 3) - dt.d() + 2;
    return QuadSurd(a) * x * x - QuadSurd(a) * x + QuadSurd(b);
}

Delta1Report delta1(const DegreeTriple& dt) {
    const long d = dt.d();
    if (d == 3) throw DegenerateTotalDegree("delta_1 is undefined for total degree 3");
    Delta1Report rep{dt, mpz_class(9 * (d - 1) * (d - 1) - 12 * dt.e2()), false, false, {}, {}, {}};
    rep.hypothesis_ok = dt.d1 >= 3 && dt.d3 >= 2;
    if (sgn(rep.radicand) < 0) {
        rep.negative_radicand = true;
        return rep;
    }
    QuadSurd v(frac(1, 2), frac(-1, 6 * (d - 3)), rep.radicand);
    rep.delta1 = v;
    rep.phi_at_delta1 = phi(dt, v);
    if (!v.is_zero()) rep.constant = (QuadSurd(mpq_class(d - 3)) * v).inverse();
    return rep;
}

mpq_class two_jet_phi(const mpq_class& x) { return 54 * x * x - 48 * x + 4; }

QuadSurd two_jet_phi(const QuadSurd& x) {
    return QuadSurd(mpq_class(54)) * x * x - QuadSurd(mpq_class(48)) * x + QuadSurd(mpq_class(4));
}

std::pair<QuadSurd, QuadSurd> two_jet_roots() {
    // (48 -+ sqrt(48^2 - 4*54*4)) / 108
    const mpz_class disc = 48 * 48 - 4 * 54 * 4;
    return {QuadSurd(frac(48, 108), frac(-1, 108), disc), QuadSurd(frac(48, 108), frac(1, 108), disc)};
}

std::pair<QuadSurd, QuadSurd> tau_roots(const mpq_class& m, const mpq_class& t) {
    if (sgn(m) <= 0) throw Error("tau_roots requires m > 0");
    const mpq_class b = 3 * (4 * m - t);
    const mpq_class disc = b * b - 48 * m * (m - t);
    // sqrt(num/den) = sqrt(num * den) / den
    const mpz_class num = disc.get_num(), den = disc.get_den();
    const mpq_class scale = mpq_class(1) / (2 * m * mpq_class(den));
    QuadSurd lo(b / (2 * m), -scale, num * den), hi(b / (2 * m), scale, num * den);
    return {lo, hi};
}

double tau1_ratio(double s) { return (3.0 * (4.0 - s) - std::sqrt(96.0 - 24.0 * s + 9.0 * s * s)) / 2.0; }

double tau_inverse_grid_infimum(long grid_points) {
    double best = INFINITY;
    for (long k = 1; k < grid_points; ++k) {
        const double v = 2.0 / tau1_ratio(static_cast<double>(k) / static_cast<double>(grid_points));
        if (v < best) best = v;
    }
    return best;
}

QuadSurd tau1_limit() { return QuadSurd(mpq_class(6), mpq_class(-2), mpz_class(6)); }

mpq_class region_constant(const mpq_class& c) {
    if (sgn(c) == 0 || 2 * c == 1) throw Error("region constant undefined at c = 0 or c = 1/2");
    return 2 * (3 * c * c - 6 * c + 1) / (3 * c * (2 * c - 1));
}

bool constant_admissible(const mpq_class& c) {
    const mpq_class x = 3 * c - 3;
    return sgn(x) > 0 && x * x > 6;
}

std::vector<ExceptionalPair> exceptional_pairs(const mpq_class& c, unsigned m_max) {
    if (!constant_admissible(c))
        throw ConstantTooSmall("c = " + c.get_str() + " does not exceed (3 + sqrt(6))/3");
    const mpq_class g = region_constant(c);
    std::vector<ExceptionalPair> out;
    for (unsigned m = 3; m <= m_max; ++m) {
        mpz_class lo;
        mpq_class gm = g * m;
        mpz_cdiv_q(lo.get_mpz_t(), gm.get_num_mpz_t(), gm.get_den_mpz_t());
        if (lo < 1) lo = 1;
        if (mpq_class(lo) < mpq_class(m) / c + 7) out.push_back({m, static_cast<unsigned>(lo.get_ui())});
    }
    return out;
}

std::vector<long> floor_table(const mpq_class& c, unsigned m_lo, unsigned m_hi) {
    const mpq_class g = region_constant(c);
    std::vector<long> out;
    for (unsigned m = m_lo; m <= m_hi; ++m) {
        mpq_class gm = g * m;
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), gm.get_num_mpz_t(), gm.get_den_mpz_t());
        out.push_back(f.get_si());
    }
    return out;
}

mpq_class parse_rational(const std::string& text) {
    try {
        auto dot = text.find('.');
        if (dot == std::string::npos) {
            mpq_class q(text, 10);
            if (sgn(q.get_den()) == 0) throw ConfigError("zero denominator in '" + text + "'");
            q.canonicalize();
            return q;
        }
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        mpz_class num(digits.empty() ? "0" : digits, 10), den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ConfigError("not a rational number: '" + text + "'");
    }
}

}  // namespace conicjet
