#include "properties.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "conicjet/conic.hpp"
#include "conicjet/jet.hpp"

namespace conicjet::testing {

namespace {

std::uint64_t next(std::uint64_t& state) {
    // splitmix64
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long uniform(std::uint64_t& state, long lo, long hi) {
    return lo + static_cast<long>(next(state) % static_cast<std::uint64_t>(hi - lo + 1));
}

// a*b mod p without relying on the library field.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

std::size_t oracle_rank_dense(std::vector<std::vector<std::uint64_t>> m, std::size_t cols, std::uint64_t p) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t r = rank;
        while (r < m.size() && m[r][c] == 0) ++r;
        if (r == m.size()) continue;
        std::swap(m[r], m[rank]);
        const std::uint64_t inv = powmod(m[rank][c], p - 2, p);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            const std::uint64_t f = p - mulmod(m[i][c], inv, p);
            for (std::size_t k = c; k < cols; ++k)
                if (m[rank][k]) m[i][k] = (m[i][k] + mulmod(f, m[rank][k], p)) % p;
        }
        ++rank;
    }
    return rank;
}

bool oracle_solves(const LinearSystem& s, const std::vector<std::uint64_t>& v) {
    for (const auto& row : s.rows) {
        std::uint64_t acc = 0;
        for (const auto& e : row) acc = (acc + mulmod(e.value, v[e.col], s.prime)) % s.prime;
        if (acc != 0) return false;
    }
    return true;
}

template <class Poly>
bool divisible_by(const Poly& f, unsigned a, unsigned b) {
    for (const auto& t : f.terms())
        if (t.mono.exp[0] < a || t.mono.exp[1] < b) return false;
    return true;
}

std::string sorted_rows_text(const LinearSystem& s) {
    std::vector<std::string> rows;
    for (const auto& r : s.rows) {
        std::ostringstream os;
        for (const auto& e : r) os << e.col << ':' << e.value << ' ';
        rows.push_back(os.str());
    }
    std::sort(rows.begin(), rows.end());
    std::string out;
    for (const auto& r : rows) out += r + '\n';
    return out;
}

std::string mt_label(unsigned m, unsigned t) { return "(" + std::to_string(m) + "," + std::to_string(t) + ")"; }

}  // namespace

IntPoly random_int_poly(std::uint64_t& state, std::size_t arity, unsigned max_exp, unsigned max_terms, long bound) {
    std::vector<IntPoly::Term> terms;
    const long n = uniform(state, 0, max_terms);
    for (long i = 0; i < n; ++i) {
        Monomial m;
        for (std::size_t v = 0; v < arity; ++v) m.exp[v] = static_cast<std::uint16_t>(uniform(state, 0, max_exp));
        terms.push_back({m, mpz_class(uniform(state, -bound, bound))});
    }
    return IntPoly::from_terms(Integers{}, arity, std::move(terms));
}

std::size_t oracle_rank(const LinearSystem& s) {
    std::vector<std::vector<std::uint64_t>> m(s.rows.size(), std::vector<std::uint64_t>(s.n_vars, 0));
    for (std::size_t r = 0; r < s.rows.size(); ++r)
        for (const auto& e : s.rows[r]) m[r][e.col] = e.value % s.prime;
    return oracle_rank_dense(std::move(m), s.n_vars, s.prime);
}

LinearSystem random_system(std::uint64_t seed, std::size_t rows, std::size_t cols, double density, std::uint64_t p) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> value(1, p - 1);
    std::vector<SparseRow> out;
    for (std::size_t r = 0; r < rows; ++r) {
        SparseRow row;
        for (std::size_t c = 0; c < cols; ++c)
            if (coin(rng) < density) row.push_back({static_cast<std::uint32_t>(c), value(rng)});
        if (!row.empty()) out.push_back(std::move(row));
    }
    // A few planted dependencies so that the rank is not simply min(rows, cols).
    const PrimeField field(p);
    for (std::size_t k = 0; k + 1 < out.size() && k < rows / 4; k += 2) {
        std::vector<std::uint64_t> dense(cols, 0);
        for (const auto& e : out[k]) dense[e.col] = e.value;
        for (const auto& e : out[k + 1]) dense[e.col] = field.add(dense[e.col], field.mul(3 % p, e.value));
        SparseRow combo;
        for (std::size_t c = 0; c < cols; ++c)
            if (dense[c]) combo.push_back({static_cast<std::uint32_t>(c), dense[c]});
        if (normalize_row(combo, field)) out.push_back(std::move(combo));
    }
    for (auto& row : out) normalize_row(row, field);
    return from_rows(p, cols, std::move(out));
}

Outcome ring_homomorphism(unsigned instances, std::uint64_t seed) {
    Outcome o;
    std::uint64_t state = seed;
    const std::uint64_t primes[] = {2, 5, 7, 101, 2305843009213693951ULL};
    for (unsigned i = 0; i < instances; ++i) {
        const PrimeField field(primes[i % 5]);
        const std::size_t arity = static_cast<std::size_t>(uniform(state, 2, 4));
        IntPoly f = random_int_poly(state, arity, 3, 6, 30);
        IntPoly g = random_int_poly(state, arity, 2, 4, 30);
        const ModPoly fp = reduce_mod(f, field), gp = reduce_mod(g, field);
        ++o.cases;
        if (!(reduce_mod(f * g, field) == fp * gp)) o.fail("mul does not commute with reduction");
        if (!(reduce_mod(f + g, field) == fp + gp)) o.fail("add does not commute with reduction");
        if (!g.is_zero() && !gp.is_zero()) {
            const IntPoly h = f * g;
            if (!(exact_div(h, g) == f)) o.fail("exact_div(f*g, g) != f over ZZ");
            if (!(exact_div(reduce_mod(h, field), gp) == fp)) o.fail("exact_div does not commute with reduction");
        }
        const std::size_t va = static_cast<std::size_t>(uniform(state, 0, long(arity) - 1));
        const std::size_t vb = (va + static_cast<std::size_t>(uniform(state, 1, long(arity) - 1))) % arity;
        const unsigned ea = static_cast<unsigned>(uniform(state, 0, 3)), eb = static_cast<unsigned>(uniform(state, 0, 3));
        const IntPoly ob = obstruction(f, va, ea, vb, eb);
        if (!(reduce_mod(ob, field) == obstruction(fp, va, ea, vb, eb)))
            o.fail("obstruction does not commute with reduction");
        if (!(obstruction(ob, va, ea, vb, eb) == ob)) o.fail("obstruction is not idempotent");
        // The complement is divisible; together they reconstruct f.
        const IntPoly rest = f - ob;
        for (const auto& t : rest.terms())
            if (t.mono.exp[va] < ea || t.mono.exp[vb] < eb) o.fail("obstruction left a blocking term behind");
    }
    return o;
}

Outcome unit_irrelevance(unsigned instances, std::uint64_t seed) {
    Outcome o;
    std::uint64_t state = seed;
    for (unsigned i = 0; i < instances; ++i) {
        const unsigned a = static_cast<unsigned>(uniform(state, 0, 3)), b = static_cast<unsigned>(uniform(state, 0, 3));
        IntPoly f = random_int_poly(state, 2, 4, 5, 9);
        if (i % 2 == 0) {
            Monomial mono;
            mono.exp[0] = static_cast<std::uint16_t>(a);
            mono.exp[1] = static_cast<std::uint16_t>(b);
            // Divisible, plus occasionally one blocking term.
            f = f.mul_term(mono, mpz_class(1));
            if (i % 4 == 0) f += IntPoly::constant(Integers{}, 2, mpz_class(uniform(state, 1, 5)));
        }
        IntPoly g = random_int_poly(state, 2, 3, 4, 9);
        long c0 = uniform(state, 1, 9) * (uniform(state, 0, 1) ? 1 : -1);
        g = g - IntPoly::constant(Integers{}, 2, g.coefficient(Monomial{})) + IntPoly::constant(Integers{}, 2, mpz_class(c0));
        ++o.cases;
        if (divisible_by(f * g, a, b) != divisible_by(f, a, b))
            o.fail("divisibility by x^" + std::to_string(a) + " y^" + std::to_string(b) + " changed under a unit");
    }
    return o;
}

Outcome sparse_dense_agreement(std::size_t max_cols) {
    Outcome o;
    auto check = [&](const LinearSystem& s, const std::string& label) {
        const std::size_t expect = oracle_rank(s);
        for (int variant = 0; variant < 3; ++variant) {
            EliminationOptions eo;
            eo.want_nullspace = true;
            if (variant == 1) eo.allow_dense = false;
            if (variant == 2) eo.dense_threshold = 0.0;
            const EliminationResult r = rank_nullity(s, eo);
            ++o.cases;
            if (r.rank != expect || r.nullity != s.n_vars - expect) {
                o.fail(label + ": rank " + std::to_string(r.rank) + " vs oracle " + std::to_string(expect));
                return;
            }
            if (r.nullspace.size() != r.nullity) o.fail(label + ": nullspace basis has the wrong size");
            for (const auto& v : r.nullspace)
                if (!oracle_solves(s, v)) o.fail(label + ": nullspace vector is not a solution");
            if (oracle_rank_dense(r.nullspace, s.n_vars, s.prime) != r.nullity)
                o.fail(label + ": nullspace basis is dependent");
        }
    };

    const std::uint64_t primes[] = {2, 5, 7, 65537, 2305843009213693951ULL};
    const std::size_t shapes[][2] = {{1, 1}, {5, 9}, {40, 30}, {30, 40}, {120, 100}, {300, 250}, {600, 500}, {200, 500}};
    const double densities[] = {0.01, 0.05, 0.3};
    std::uint64_t seed = 1;
    for (const auto& shape : shapes)
        for (double d : densities)
            for (std::uint64_t p : primes) {
                if (shape[1] > max_cols) continue;
                if (shape[1] >= 250 && p != 5 && p != 2305843009213693951ULL) continue;
                LinearSystem s = random_system(seed++, shape[0], shape[1], d, p);
                check(s, "random " + std::to_string(shape[0]) + "x" + std::to_string(shape[1]) + " p=" +
                             std::to_string(p));
            }

    const ConicTriple fermat = fermat_triple();
    for (unsigned m = 1; m <= 5; ++m)
        for (unsigned t = 0; t <= 3 * m; ++t) {
            if (AnsatzIndex::count(m, t) > max_cols) continue;
            LinearSystem s = assemble(fermat, m, t, 5, {Chart::Z0, Chart::Z2});
            check(s, "fermat " + mt_label(m, t));
        }
    return o;
}

Outcome shortcut_full_equality(unsigned max_m) {
    Outcome o;
    const ConicTriple fermat = fermat_triple();
    for (unsigned m = 1; m <= max_m; ++m)
        for (unsigned t = 0; t <= 3 * m; ++t) {
            AssembleOptions shortcut, full;
            full.expansion.elimination = Elimination::Full;
            const std::vector<Chart> charts{Chart::Z0, Chart::Z1, Chart::Z2};
            LinearSystem a = assemble(fermat, m, t, 5, charts, shortcut);
            LinearSystem b = assemble(fermat, m, t, 5, charts, full);
            ++o.cases;
            if (a.n_vars != b.n_vars || sorted_rows_text(a) != sorted_rows_text(b))
                o.fail("row sets differ at " + mt_label(m, t));
        }
    return o;
}

Outcome twist_monotonicity() {
    Outcome o;
    const ConicTriple fermat = fermat_triple();
    const std::vector<Chart> charts{Chart::Z0, Chart::Z1, Chart::Z2};
    LinearSystem high = assemble(fermat, 3, 1, 5, charts);
    LinearSystem low = assemble(fermat, 3, 0, 5, charts);
    const AnsatzIndex hi_index(3, 1), lo_index(3, 0);
    const auto basis = nullspace_basis(high);
    if (basis.empty()) o.fail("(3,1) has no solutions to embed");
    for (unsigned var = 0; var < 3; ++var)
        for (const auto& v : basis) {
            std::vector<std::uint64_t> image(lo_index.size(), 0);
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i] == 0) continue;
                AnsatzColumn col = hi_index.column(i);
                ++col.exp[var];
                const auto target = lo_index.find(col);
                if (!target) {
                    o.fail("no (3,0) column for a shifted (3,1) column");
                    return o;
                }
                image[*target] = v[i];
            }
            ++o.cases;
            if (!oracle_solves(low, image)) o.fail("Z" + std::to_string(var) + " * solution fails at (3,0)");
        }
    return o;
}

Outcome sms_round_trip() {
    Outcome o;
    const ConicTriple fermat = fermat_triple();
    std::vector<LinearSystem> systems;
    systems.push_back(assemble(fermat, 3, 3, 5, {Chart::Z0, Chart::Z2}));
    systems.push_back(assemble(fermat, 3, 0, 5, {Chart::Z0, Chart::Z1, Chart::Z2}));
    systems.push_back(assemble(fermat, 4, 3, 7, {Chart::Z1}));
    systems.push_back(random_system(99, 50, 40, 0.2, 2305843009213693951ULL));
    systems.push_back(from_rows(5, 3, {}));
    for (const auto& s : systems) {
        const std::string first = export_sms(s);
        std::istringstream in(first);
        const LinearSystem back = import_sms(in, s.prime);
        ++o.cases;
        if (export_sms(back) != first) o.fail("SMS export changed after a round trip");
        if (back.rows != s.rows || back.n_vars != s.n_vars) o.fail("SMS import altered the rows");
    }
    return o;
}

Outcome parallel_determinism() {
    Outcome o;
    const ConicTriple fermat = fermat_triple();
    const unsigned cases[][2] = {{3, 0}, {4, 3}, {5, 4}, {6, 5}};
    for (const auto& mt : cases) {
        AssembleOptions serial, parallel;
        parallel.threads = 4;
        parallel.expansion.threads = 4;
        LinearSystem a = assemble(fermat, mt[0], mt[1], 5, {Chart::Z0, Chart::Z2}, serial);
        LinearSystem b = assemble(fermat, mt[0], mt[1], 5, {Chart::Z0, Chart::Z2}, parallel);
        ++o.cases;
        if (export_sms(a) != export_sms(b)) o.fail("assembly differs at " + mt_label(mt[0], mt[1]));
        EliminationOptions e1, e4;
        e1.want_nullspace = e4.want_nullspace = true;
        e4.threads = 4;
        const EliminationResult r1 = rank_nullity(a, e1), r4 = rank_nullity(a, e4);
        if (r1.pivots != r4.pivots || r1.rank != r4.rank || r1.nullspace != r4.nullspace)
            o.fail("elimination differs at " + mt_label(mt[0], mt[1]));
    }
    return o;
}

}  // namespace conicjet::testing
