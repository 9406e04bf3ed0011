#pragma once

// Sparse vectors over GF(p): (column, value) pairs with strictly increasing
// columns and values in 1..p-1.

#include <cstdint>
#include <vector>

#include "conicjet/rings.hpp"

namespace conicjet {

struct SparseEntry {
    std::uint32_t col;
    std::uint64_t value;

    bool operator==(const SparseEntry&) const = default;
};

using SparseRow = std::vector<SparseEntry>;

// Scales so that the first entry is 1. Returns false for the empty row.
inline bool normalize_row(SparseRow& row, const PrimeField& field) {
    if (row.empty()) return false;
    if (row.front().value == 1) return true;
    std::uint64_t inv = field.inv(row.front().value);
    for (auto& e : row) e.value = field.mul(e.value, inv);
    return true;
}

inline std::uint64_t dot(const SparseRow& row, const std::vector<std::uint64_t>& v, const PrimeField& field) {
    std::uint64_t acc = 0;
    for (const auto& e : row) field.add_mul(acc, e.value, v.at(e.col));
    return acc;
}

}  // namespace conicjet
