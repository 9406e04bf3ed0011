#pragma once

// Invariant log 2-jet ansatz on an affine chart and the linear conditions for
// its coefficient functions to extend across the coordinate lines.
//
// Jet polynomials use a fixed arity-7 layout: the chart coordinates (u, v),
// first derivatives (u1, v1), the Wronskian variable W = u1*v2 - v1*u2 and the
// second derivatives (u2, v2). After elimination only the first five occur.
//
// A section of weighted degree m with twist t is written
//     sum_j sum_k K_{j,k} / (Z0 Z1 Z2)^(m-2j) * wA^k * wB^(m-3j-k) * Lambda^j
// with wA = (log a/c)', wB = (log b/c)', Lambda their Wronskian and K_{j,k}
// homogeneous of degree 3(m-2j) - t. On a chart, multiplying by
// (u v a b c)^m turns each summand into K times a polynomial basis element
// E_{j,k}; a, b, c are units along u = 0 and v = 0, so the section is regular
// there iff u^m v^m divides every jet coefficient of sum K*E.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "conicjet/conic.hpp"
#include "conicjet/multipoly.hpp"
#include "conicjet/sparse_row.hpp"

namespace conicjet {

namespace jetvar {
inline constexpr std::size_t u = 0, v = 1, u1 = 2, v1 = 3, W = 4, u2 = 5, v2 = 6;
inline constexpr std::size_t arity = 7;
}  // namespace jetvar

std::array<std::string, jetvar::arity> jet_variable_names(Chart chart);

// numerator / (a^den[0] b^den[1] c^den[2])
struct JetForm {
    IntPoly numerator;
    std::array<unsigned, 3> denominator{};
};

struct LogJetForms {
    JetForm ac1;  // (log a/c)'
    JetForm bc1;  // (log b/c)'
    JetForm ac2;  // (log a/c)''
    JetForm bc2;  // (log b/c)''
};

LogJetForms log_jet_forms(const ChartData& cd);

// (log a/c)' (log b/c)'' - (log a/c)'' (log b/c)', still in u2 and v2.
JetForm wronskian_form(const ChartData& cd);

enum class Elimination {
    Shortcut,  // u2 := 0, v2 := W/u1
    Full,      // v2 := (W + u2 v1)/u1, every u2 term must cancel
};

// Rewrites a jet numerator of weight 3 into u, v, u1, v1, W. Throws
// NonDivisible if the u1 clearing fails and ResidualSecondDerivative if u2
// survives the full substitution.
IntPoly eliminate_second_derivatives(const IntPoly& numerator, Elimination mode);

struct AnsatzColumn {
    unsigned j;
    unsigned k;
    std::array<unsigned, 3> exp;  // exponents of Z0, Z1, Z2

    bool operator==(const AnsatzColumn&) const = default;
};

// Column layout of the unknowns: (j asc, k asc, exponent vector lex desc).
class AnsatzIndex {
public:
    AnsatzIndex(unsigned m, unsigned t);

    unsigned m() const noexcept { return m_; }
    unsigned t() const noexcept { return t_; }
    std::size_t size() const noexcept { return columns_.size(); }
    const std::vector<AnsatzColumn>& columns() const noexcept { return columns_; }
    const AnsatzColumn& column(std::size_t i) const { return columns_.at(i); }
    std::optional<std::size_t> find(const AnsatzColumn& c) const;

    // d_j = 3(m - 2j) - t, negative when the stratum is empty.
    int stratum_degree(unsigned j) const { return 3 * (int(m_) - 2 * int(j)) - int(t_); }
    unsigned max_stratum() const noexcept { return m_ / 3; }
    // First column of the block (j, k); blocks of one stratum have equal size.
    std::size_t block_offset(unsigned j, unsigned k) const;

    // sum_j (m - 3j + 1) * binom(d_j + 2, 2) over strata with d_j >= 0.
    static std::uint64_t count(unsigned m, unsigned t);

private:
    unsigned m_, t_;
    std::vector<AnsatzColumn> columns_;
    std::vector<std::size_t> stratum_offset_;
};

struct ExpansionOptions {
    Elimination elimination = Elimination::Shortcut;
    // Expand over the integers and reduce at the end instead of working mod p.
    bool integer_arithmetic = false;
    // Drop terms divisible by u^m v^m; they never produce conditions.
    bool truncate = true;
    unsigned threads = 1;
};

struct JetExpansion {
    struct Basis {
        unsigned j;
        unsigned k;
        // Exponents of a, b, c left in E_{j,k} after clearing (a b c)^m.
        std::array<unsigned, 3> abc_power;
        ModPoly poly;
    };

    Chart chart;
    unsigned m;
    unsigned t;
    PrimeField field;
    bool truncated;
    AnsatzIndex index;
    std::vector<Basis> bases;  // ordered by (j, k)

    // Coefficient of u1^alpha v1^beta W^kappa in sum K*E, as linear forms in
    // the unknowns indexed by chart monomial u^X v^Y (grlex descending).
    std::vector<std::pair<std::array<unsigned, 2>, SparseRow>> numerator(unsigned alpha, unsigned beta,
                                                                        unsigned kappa) const;
};

// Requires the Jacobian cubic of the triple behind cd to be c*Z0*Z1*Z2.
JetExpansion expand_ansatz(const ChartData& cd, unsigned m, unsigned t, const PrimeField& field,
                           const ExpansionOptions& options = {});

// Throws UnsupportedConfiguration unless J is a nonzero multiple of Z0*Z1*Z2.
void require_coordinate_triangle(const ConicTriple& triple);

struct ObstructionRow {
    Chart chart;
    std::array<unsigned, 3> jet;    // (alpha, beta, kappa)
    std::array<unsigned, 2> mono;   // (X, Y): u^X v^Y
    SparseRow row;                  // normalized, nonzero
};

// Ordered by (alpha, beta, kappa) then monomial; zero rows dropped.
std::vector<ObstructionRow> obstruction_rows(const JetExpansion& je, unsigned threads = 1);

// The unknown vector of the global Wronskian: stratum j = 1, k = 0,
// coefficient Z0*Z1*Z2. Only defined when that column exists ((m, t) = (3, 0)).
std::vector<std::uint64_t> wronskian_vector(const AnsatzIndex& index);

struct DimCounts {
    std::uint64_t dimV;
    std::uint64_t dimVtilde;
    std::uint64_t dimW;
};

// The (m, t) = (3, 1) case.
DimCounts case_m3_dim_counts();

}  // namespace conicjet
