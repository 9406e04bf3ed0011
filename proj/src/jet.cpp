#include "conicjet/jet.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <unordered_map>

namespace conicjet {

namespace {

using namespace jetvar;

IntPoly lift(const IntPoly& chart_poly) {
    if (chart_poly.arity() != 2) throw Error("expected a polynomial in the two chart variables");
    std::vector<IntPoly::Term> terms(chart_poly.terms().begin(), chart_poly.terms().end());
    return IntPoly::from_terms(Integers{}, arity, std::move(terms));
}

IntPoly var(std::size_t i) { return IntPoly::variable(Integers{}, arity, i); }

// f' = f_u u1 + f_v v1 for a lifted chart polynomial f.
IntPoly d1(const IntPoly& f) { return f.derivative(u) * var(u1) + f.derivative(v) * var(v1); }

// f'' = f_u u2 + f_v v2 + f_uu u1^2 + 2 f_uv u1 v1 + f_vv v1^2.
IntPoly d2(const IntPoly& f) {
    IntPoly fu = f.derivative(u), fv = f.derivative(v);
    IntPoly out = fu * var(u2) + fv * var(v2);
    out += fu.derivative(u) * var(u1) * var(u1);
    out += fu.derivative(v) * var(u1) * var(v1) * IntPoly::constant(Integers{}, arity, 2);
    out += fv.derivative(v) * var(v1) * var(v1);
    return out;
}

struct Lifted {
    IntPoly a, b, c;
};

Lifted lifted(const ChartData& cd) { return {lift(cd.a), lift(cd.b), lift(cd.c)}; }

// (log f/g)' numerator over f g.
IntPoly log_ratio_d1(const IntPoly& f, const IntPoly& g) { return d1(f) * g - d1(g) * f; }

// (log f/g)'' numerator over f^2 g^2: (f'' f - f'^2) g^2 - (g'' g - g'^2) f^2.
IntPoly log_ratio_d2(const IntPoly& f, const IntPoly& g) {
    IntPoly f1 = d1(f), g1 = d1(g);
    return (d2(f) * f - f1 * f1) * g * g - (d2(g) * g - g1 * g1) * f * f;
}

IntPoly coefficient_in(const IntPoly& f, std::initializer_list<std::size_t> vars,
                       std::initializer_list<unsigned> exps) {
    std::vector<std::size_t> vs(vars);
    std::vector<unsigned> es(exps);
    return coefficient_of(f, std::span<const std::size_t>(vs), std::span<const unsigned>(es));
}

bool truncated_away(const Monomial& mono, unsigned m) { return mono.exp[u] >= m && mono.exp[v] >= m; }

template <class Ring>
MultiPoly<Ring> mul_trunc(const MultiPoly<Ring>& f, const MultiPoly<Ring>& g, unsigned m, bool truncate) {
    if (!truncate) return f * g;
    const Ring& ring = f.ring();
    std::unordered_map<Monomial, typename Ring::value_type, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(f.size() * g.size(), std::size_t{1} << 20));
    for (const auto& a : f.terms()) {
        for (const auto& b : g.terms()) {
            Monomial mono = a.mono * b.mono;
            if (truncated_away(mono, m)) continue;
            auto [it, inserted] = acc.try_emplace(mono, ring.zero());
            ring.add_mul(it->second, a.coeff, b.coeff);
        }
    }
    std::vector<typename MultiPoly<Ring>::Term> terms;
    terms.reserve(acc.size());
    for (auto& [mono, c] : acc)
        if (!ring.is_zero(c)) terms.push_back({mono, std::move(c)});
    return MultiPoly<Ring>::from_terms(ring, f.arity(), std::move(terms));
}

template <class Ring>
class PowerTable {
public:
    PowerTable(MultiPoly<Ring> base, unsigned m, bool truncate)
        : m_(m), truncate_(truncate), powers_{MultiPoly<Ring>::constant(base.ring(), base.arity(), base.ring().one())},
          base_(std::move(base)) {}

    const MultiPoly<Ring>& operator()(unsigned e) {
        while (powers_.size() <= e) powers_.push_back(mul_trunc(powers_.back(), base_, m_, truncate_));
        return powers_[e];
    }

private:
    unsigned m_;
    bool truncate_;
    std::vector<MultiPoly<Ring>> powers_;
    MultiPoly<Ring> base_;
};

struct BlockSpec {
    unsigned j, k;
    std::array<unsigned, 3> abc_power;
};

template <class Ring>
std::vector<MultiPoly<Ring>> expand_blocks(const Ring& ring, const std::array<IntPoly, 6>& inputs,
                                           const std::vector<BlockSpec>& blocks, unsigned m, bool truncate,
                                           unsigned threads) {
    auto conv = [&](const IntPoly& f) {
        return f.map_coefficients(ring, [&](const mpz_class& c) { return ring.from_mpz(c); });
    };
    // inputs: a, b, c, A~, B~, L~
    std::array<MultiPoly<Ring>, 6> base{conv(inputs[0]), conv(inputs[1]), conv(inputs[2]),
                                        conv(inputs[3]), conv(inputs[4]), conv(inputs[5])};

    std::vector<MultiPoly<Ring>> out(blocks.size(), MultiPoly<Ring>(ring, arity));
    auto work = [&](std::size_t first, std::size_t stride) {
        // Each worker keeps its own power tables so no state is shared.
        std::vector<PowerTable<Ring>> tables;
        for (const auto& b : base) tables.emplace_back(b, m, truncate);
        for (std::size_t i = first; i < blocks.size(); i += stride) {
            const BlockSpec& s = blocks[i];
            const unsigned n = m - 3 * s.j;
            Monomial uv;
            uv.exp[u] = uv.exp[v] = static_cast<std::uint16_t>(2 * s.j);
            MultiPoly<Ring> e = MultiPoly<Ring>::monomial(ring, arity, uv, ring.one());
            e = mul_trunc(e, tables[3](s.k), m, truncate);
            e = mul_trunc(e, tables[4](n - s.k), m, truncate);
            e = mul_trunc(e, tables[5](s.j), m, truncate);
            e = mul_trunc(e, tables[0](s.abc_power[0]), m, truncate);
            e = mul_trunc(e, tables[1](s.abc_power[1]), m, truncate);
            e = mul_trunc(e, tables[2](s.abc_power[2]), m, truncate);
            out[i] = std::move(e);
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks.size())));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        for (auto& th : pool) th.join();
    }
    return out;
}

std::uint32_t jet_key(const Monomial& mono) {
    return (std::uint32_t(mono.exp[u1]) << 20) | (std::uint32_t(mono.exp[v1]) << 10) | mono.exp[W];
}

std::array<unsigned, 3> unpack_jet_key(std::uint32_t key) { return {key >> 20, (key >> 10) & 1023u, key & 1023u}; }

std::uint32_t uv_key(unsigned x, unsigned y) { return (x << 16) | y; }

// grlex descending on (u, v): total degree first, then u-degree.
bool uv_before(std::uint32_t a, std::uint32_t b) {
    unsigned xa = a >> 16, ya = a & 0xFFFF, xb = b >> 16, yb = b & 0xFFFF;
    if (xa + ya != xb + yb) return xa + ya > xb + yb;
    return xa > xb;
}

struct UvTerm {
    std::uint16_t x, y;
    std::uint64_t coeff;
};

// Per basis: jet key -> (u, v)-terms.
using JetGroups = std::map<std::uint32_t, std::vector<UvTerm>>;

JetGroups group_by_jet(const ModPoly& poly) {
    JetGroups groups;
    for (const auto& t : poly.terms()) groups[jet_key(t.mono)].push_back({t.mono.exp[u], t.mono.exp[v], t.coeff});
    return groups;
}

struct ChartUnknown {
    std::uint32_t offset;  // within its (j, k) block
    unsigned fu, fv;
};

std::vector<std::vector<ChartUnknown>> chart_unknowns(const AnsatzIndex& index, Chart chart) {
    const auto coords = chart_coordinates(chart);
    std::vector<std::vector<ChartUnknown>> per_stratum(index.max_stratum() + 1);
    for (unsigned j = 0; j <= index.max_stratum(); ++j) {
        if (index.stratum_degree(j) < 0) continue;
        const std::size_t start = index.block_offset(j, 0);
        for (std::size_t c = start; c < index.size(); ++c) {
            const auto& col = index.column(c);
            if (col.j != j || col.k != 0) break;
            per_stratum[j].push_back({static_cast<std::uint32_t>(c - start), col.exp[coords[0]], col.exp[coords[1]]});
        }
    }
    return per_stratum;
}

// Rows of one jet coefficient, keyed by chart monomial. With `only_obstruction`
// the monomials divisible by u^m v^m are skipped.
std::vector<std::pair<std::uint32_t, SparseRow>> accumulate(const JetExpansion& je,
                                                            const std::vector<JetGroups>& groups,
                                                            const std::vector<std::vector<ChartUnknown>>& unknowns,
                                                            std::uint32_t key, bool only_obstruction) {
    const unsigned m = je.m;
    std::unordered_map<std::uint32_t, SparseRow> rows;
    for (std::size_t bi = 0; bi < je.bases.size(); ++bi) {
        auto git = groups[bi].find(key);
        if (git == groups[bi].end()) continue;
        const auto& basis = je.bases[bi];
        const std::size_t offset = je.index.block_offset(basis.j, basis.k);
        // Columns increase with (block, unknown), so entries arrive sorted.
        for (const auto& unk : unknowns[basis.j]) {
            if (only_obstruction && unk.fu >= m && unk.fv >= m) continue;
            const std::uint32_t col = static_cast<std::uint32_t>(offset + unk.offset);
            for (const auto& term : git->second) {
                const unsigned x = term.x + unk.fu, y = term.y + unk.fv;
                if (only_obstruction && x >= m && y >= m) continue;
                rows[uv_key(x, y)].push_back({col, term.coeff});
            }
        }
    }
    std::vector<std::pair<std::uint32_t, SparseRow>> out(rows.begin(), rows.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return uv_before(a.first, b.first); });
    return out;
}

std::vector<JetGroups> grouped_bases(const JetExpansion& je) {
    std::vector<JetGroups> groups;
    groups.reserve(je.bases.size());
    for (const auto& b : je.bases) groups.push_back(group_by_jet(b.poly));
    return groups;
}

}  // namespace

std::array<std::string, jetvar::arity> jet_variable_names(Chart chart) {
    auto names = chart_variable_names(chart);
    return {names[0], names[1], names[0] + "1", names[1] + "1", "W", names[0] + "2", names[1] + "2"};
}

LogJetForms log_jet_forms(const ChartData& cd) {
    Lifted l = lifted(cd);
    return {
        {log_ratio_d1(l.a, l.c), {1, 0, 1}},
        {log_ratio_d1(l.b, l.c), {0, 1, 1}},
        {log_ratio_d2(l.a, l.c), {2, 0, 2}},
        {log_ratio_d2(l.b, l.c), {0, 2, 2}},
    };
}

JetForm wronskian_form(const ChartData& cd) {
    Lifted l = lifted(cd);
    LogJetForms f = log_jet_forms(cd);
    // Over a^2 b^2 c^3: a * ac1 * bc2 - b * ac2 * bc1. The c^3 always drops to c^2.
    IntPoly n = l.a * f.ac1.numerator * f.bc2.numerator - l.b * f.ac2.numerator * f.bc1.numerator;
    return {exact_div(n, l.c), {2, 2, 2}};
}

IntPoly eliminate_second_derivatives(const IntPoly& numerator, Elimination mode) {
    if (numerator.arity() != arity) throw Error("eliminate_second_derivatives expects a jet polynomial");
    for (const auto& t : numerator.terms())
        if (t.mono.exp[u2] + t.mono.exp[v2] > 1 || t.mono.exp[W] != 0)
            throw ResidualSecondDerivative("jet numerator is not linear in the second derivatives");
    IntPoly p = coefficient_in(numerator, {u2, v2}, {0, 0});
    IntPoly q = coefficient_in(numerator, {u2, v2}, {1, 0});
    IntPoly r = coefficient_in(numerator, {u2, v2}, {0, 1});
    IntPoly x1 = var(u1);
    if (mode == Elimination::Full) {
        // u1 * N(v2 = (W + u2 v1)/u1) = u1 P + W R + u2 (u1 Q + v1 R)
        IntPoly residual = x1 * q + var(v1) * r;
        if (!residual.is_zero())
            throw ResidualSecondDerivative("u2 survives the substitution: " + residual.to_string());
    }
    return exact_div(x1 * p + var(W) * r, x1);
}

AnsatzIndex::AnsatzIndex(unsigned m, unsigned t) : m_(m), t_(t) {
    if (m == 0) throw Error("the weighted degree m must be positive");
    if (m > 300 || t > 3000) throw Error("(m, t) out of the supported range");
    for (unsigned j = 0; j <= m / 3; ++j) {
        stratum_offset_.push_back(columns_.size());
        const int d = stratum_degree(j);
        if (d < 0) continue;
        for (unsigned k = 0; k <= m - 3 * j; ++k)
            for (int e0 = d; e0 >= 0; --e0)
                for (int e1 = d - e0; e1 >= 0; --e1)
                    columns_.push_back({j, k, {unsigned(e0), unsigned(e1), unsigned(d - e0 - e1)}});
    }
}

std::optional<std::size_t> AnsatzIndex::find(const AnsatzColumn& c) const {
    if (c.j > max_stratum() || c.k > m_ - 3 * c.j) return std::nullopt;
    const int d = stratum_degree(c.j);
    if (d < 0 || int(c.exp[0] + c.exp[1] + c.exp[2]) != d) return std::nullopt;
    // Position of (e0, e1) within the lex-descending enumeration.
    const int e0 = int(c.exp[0]), e1 = int(c.exp[1]);
    std::size_t before = 0;
    for (int f0 = d; f0 > e0; --f0) before += std::size_t(d - f0 + 1);
    before += std::size_t(d - e0 - e1);
    return block_offset(c.j, c.k) + before;
}

std::size_t AnsatzIndex::block_offset(unsigned j, unsigned k) const {
    if (j > max_stratum()) throw Error("stratum out of range");
    const int d = stratum_degree(j);
    const std::size_t block = d < 0 ? 0 : std::size_t(d + 1) * std::size_t(d + 2) / 2;
    return stratum_offset_[j] + std::size_t(k) * block;
}

std::uint64_t AnsatzIndex::count(unsigned m, unsigned t) {
    std::uint64_t total = 0;
    for (unsigned j = 0; j <= m / 3; ++j) {
        const long long d = 3 * (static_cast<long long>(m) - 2 * j) - t;
        if (d < 0) continue;
        total += std::uint64_t(m - 3 * j + 1) * std::uint64_t(d + 2) * std::uint64_t(d + 1) / 2;
    }
    return total;
}

std::vector<std::pair<std::array<unsigned, 2>, SparseRow>> JetExpansion::numerator(unsigned alpha, unsigned beta,
                                                                                  unsigned kappa) const {
    Monomial key_mono;
    key_mono.exp[u1] = static_cast<std::uint16_t>(alpha);
    key_mono.exp[v1] = static_cast<std::uint16_t>(beta);
    key_mono.exp[W] = static_cast<std::uint16_t>(kappa);
    auto rows = accumulate(*this, grouped_bases(*this), chart_unknowns(index, chart), jet_key(key_mono), false);
    std::vector<std::pair<std::array<unsigned, 2>, SparseRow>> out;
    for (auto& [k, row] : rows) {
        SparseRow clean;
        for (const auto& e : row)
            if (e.value != 0) clean.push_back(e);
        if (!clean.empty()) out.push_back({{k >> 16, k & 0xFFFF}, std::move(clean)});
    }
    return out;
}

void require_coordinate_triangle(const ConicTriple& triple) {
    IntPoly J = jacobian_cubic(triple);
    Monomial xyz;
    xyz.exp = {1, 1, 1};
    if (J.size() != 1 || !(J.leading().mono == xyz))
        throw UnsupportedConfiguration(
            "the Jacobian cubic must be a nonzero multiple of Z0*Z1*Z2 for the monomial-pole ansatz, got " +
            J.to_string(std::vector<std::string>{"Z0", "Z1", "Z2"}));
}

JetExpansion expand_ansatz(const ChartData& cd, unsigned m, unsigned t, const PrimeField& field,
                           const ExpansionOptions& options) {
    {
        Monomial uv;
        uv.exp[0] = uv.exp[1] = 1;
        if (cd.D.size() != 1 || !(cd.D.leading().mono == uv))
            throw UnsupportedConfiguration("the chart discriminant must be a multiple of the product of the chart "
                                           "coordinates, got " +
                                           cd.D.to_string());
    }
    JetExpansion je{cd.chart, m, t, field, options.truncate, AnsatzIndex(m, t), {}};

    Lifted l = lifted(cd);
    LogJetForms forms = log_jet_forms(cd);
    IntPoly L = eliminate_second_derivatives(wronskian_form(cd).numerator, options.elimination);
    std::array<IntPoly, 6> inputs{l.a, l.b, l.c, forms.ac1.numerator, forms.bc1.numerator, L};

    std::vector<BlockSpec> blocks;
    for (unsigned j = 0; j <= m / 3; ++j) {
        if (je.index.stratum_degree(j) < 0) continue;
        const unsigned n = m - 3 * j;
        for (unsigned k = 0; k <= n; ++k) blocks.push_back({j, k, {m - k - 2 * j, m - (n - k) - 2 * j, j}});
    }

    std::vector<ModPoly> polys;
    if (options.integer_arithmetic) {
        auto exact = expand_blocks(Integers{}, inputs, blocks, m, options.truncate, options.threads);
        for (const auto& e : exact) polys.push_back(reduce_mod(e, field));
    } else {
        polys = expand_blocks(field, inputs, blocks, m, options.truncate, options.threads);
    }
    for (std::size_t i = 0; i < blocks.size(); ++i)
        je.bases.push_back({blocks[i].j, blocks[i].k, blocks[i].abc_power, std::move(polys[i])});
    return je;
}

std::vector<ObstructionRow> obstruction_rows(const JetExpansion& je, unsigned threads) {
    const auto groups = grouped_bases(je);
    const auto unknowns = chart_unknowns(je.index, je.chart);
    std::vector<std::uint32_t> keys;
    for (const auto& g : groups)
        for (const auto& [k, terms] : g) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    std::vector<std::vector<ObstructionRow>> per_key(keys.size());
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < keys.size(); i += stride) {
            const auto jet = unpack_jet_key(keys[i]);
            for (auto& [mono, row] : accumulate(je, groups, unknowns, keys[i], true)) {
                if (!normalize_row(row, je.field)) continue;
                per_key[i].push_back({je.chart, jet, {mono >> 16, mono & 0xFFFF}, std::move(row)});
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(keys.size())));
    if (workers <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        for (auto& th : pool) th.join();
    }
    std::vector<ObstructionRow> out;
    for (auto& rows : per_key)
        for (auto& r : rows) out.push_back(std::move(r));
    return out;
}

std::vector<std::uint64_t> wronskian_vector(const AnsatzIndex& index) {
    auto col = index.find({1, 0, {1, 1, 1}});
    if (!col) throw Error("the Wronskian column (j = 1, k = 0, Z0*Z1*Z2) is not part of this ansatz");
    std::vector<std::uint64_t> v(index.size(), 0);
    v[*col] = 1;
    return v;
}

DimCounts case_m3_dim_counts() {
    // Monomials in two variables of degree at most d.
    auto plane_monomials = [](unsigned d) {
        std::uint64_t n = 0;
        for (unsigned p = 0; p <= d; ++p)
            for (unsigned q = 0; p + q <= d; ++q) ++n;
        return n;
    };
    // Target: four numerators of degree at most 24 divisible by the second
    // affine coordinate; the subspace: that coordinate times D^3 q, deg q <= 14.
    return {AnsatzIndex::count(3, 1), 4 * plane_monomials(23), 4 * plane_monomials(14)};
}

}  // namespace conicjet
