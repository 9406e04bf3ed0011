#pragma once

// Exact elimination over GF(p).
//
// The sparse phase repeatedly takes the active column with the fewest
// nonzeros and, inside it, the shortest row (Markowitz cost (r-1)(c-1) with c
// fixed), breaking ties by (column, row). When the active part has become
// dense the remainder is handed to a dense kernel with the same tie-breaking.
// Every pivot is logged; back-substitution in reverse pivot order yields the
// nullspace.

#include <cstdint>
#include <vector>

#include "conicjet/linear_system.hpp"

namespace conicjet {

struct Pivot {
    std::uint32_t col;
    std::uint32_t row;  // index into the input rows

    bool operator==(const Pivot&) const = default;
};

struct EliminationOptions {
    // Row updates split across worker threads; the pivot sequence and the
    // result do not depend on the thread count.
    unsigned threads = 1;
    // Switch to dense elimination once the active block has at least this
    // fraction of nonzeros (and is not tiny).
    double dense_threshold = 0.15;
    bool allow_dense = true;
    bool want_nullspace = false;
};

struct EliminationResult {
    std::size_t rank = 0;
    std::size_t nullity = 0;
    std::vector<Pivot> pivots;
    std::vector<std::vector<std::uint64_t>> nullspace;  // dense vectors of length n_vars
    std::size_t dense_rows = 0;                          // size of the dense handoff, 0 if none
    std::size_t dense_cols = 0;
};

EliminationResult rank_nullity(const LinearSystem& s, const EliminationOptions& options = {});
std::vector<std::vector<std::uint64_t>> nullspace_basis(const LinearSystem& s, const EliminationOptions& options = {});
bool verify_solution(const LinearSystem& s, const std::vector<std::uint64_t>& v);

// Textbook dense Gauss-Jordan, first-nonzero pivoting. Kept as an oracle.
std::size_t dense_rank(const LinearSystem& s);

// Is v in the span of the given vectors?
bool in_span(const std::vector<std::vector<std::uint64_t>>& basis, const std::vector<std::uint64_t>& v,
             std::uint64_t p);

}  // namespace conicjet
