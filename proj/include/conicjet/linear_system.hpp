#pragma once

// Deduplicated sparse GF(p) systems assembled from the obstruction rows of
// several charts, with SMS text serialization.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "conicjet/conic.hpp"
#include "conicjet/jet.hpp"
#include "conicjet/sparse_row.hpp"

namespace conicjet {

struct RowTag {
    Chart chart;
    std::array<unsigned, 3> jet;
    std::array<unsigned, 2> mono;

    bool operator==(const RowTag&) const = default;
};

struct LinearSystem {
    std::uint64_t prime = 5;
    std::size_t n_vars = 0;
    std::vector<SparseRow> rows;
    // Empty for systems read back from SMS.
    std::vector<RowTag> tags;
    std::size_t n_rows_raw = 0;  // nonzero rows before deduplication
    // Unknown layout; empty for imported systems.
    std::vector<AnsatzColumn> columns;

    PrimeField field() const { return PrimeField(prime); }
    // Checks the row invariants; throws Error on violation.
    void validate() const;
};

struct AssembleOptions {
    ExpansionOptions expansion;
    unsigned threads = 1;
};

LinearSystem assemble(const ConicTriple& triple, unsigned m, unsigned t, std::uint64_t p, std::vector<Chart> charts,
                      const AssembleOptions& options = {});

// Builds a system from already emitted rows (deduplicating in order).
LinearSystem from_rows(std::uint64_t p, std::size_t n_vars, std::vector<SparseRow> rows,
                       std::vector<RowTag> tags = {});

void export_sms(const LinearSystem& s, std::ostream& out);
std::string export_sms(const LinearSystem& s);
void export_sms_file(const LinearSystem& s, const std::string& path);
LinearSystem import_sms(std::istream& in, std::uint64_t p);
LinearSystem import_sms_file(const std::string& path, std::uint64_t p);

// Lowercase hex SHA-256 of the SMS export.
std::string checksum(const LinearSystem& s);

}  // namespace conicjet
