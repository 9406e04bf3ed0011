#include "conicjet/linear_system.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include <openssl/evp.h>

namespace conicjet {

namespace {

std::size_t row_hash(const SparseRow& row) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& e : row) {
        h ^= e.col + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= e.value + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

}  // namespace

void LinearSystem::validate() const {
    const PrimeField f = field();
    if (!tags.empty() && tags.size() != rows.size()) throw Error("row tags do not match the rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i].value == 0 || row[i].value >= f.prime())
                throw Error("row " + std::to_string(r) + " has a coefficient outside 1..p-1");
            if (row[i].col >= n_vars) throw Error("row " + std::to_string(r) + " has a column out of range");
            if (i > 0 && row[i - 1].col >= row[i].col)
                throw Error("row " + std::to_string(r) + " has columns out of order");
        }
    }
}

LinearSystem from_rows(std::uint64_t p, std::size_t n_vars, std::vector<SparseRow> rows, std::vector<RowTag> tags) {
    LinearSystem s;
    s.prime = p;
    s.n_vars = n_vars;
    const PrimeField field(p);
    const bool tagged = !tags.empty();
    if (tagged && tags.size() != rows.size()) throw Error("from_rows: tag count differs from row count");
    std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SparseRow& row = rows[i];
        if (!normalize_row(row, field)) continue;
        ++s.n_rows_raw;
        auto& bucket = seen[row_hash(row)];
        bool duplicate = false;
        for (std::size_t idx : bucket)
            if (s.rows[idx] == row) {
                duplicate = true;
                break;
            }
        if (duplicate) continue;
        bucket.push_back(s.rows.size());
        s.rows.push_back(std::move(row));
        if (tagged) s.tags.push_back(tags[i]);
    }
    return s;
}

LinearSystem assemble(const ConicTriple& triple, unsigned m, unsigned t, std::uint64_t p, std::vector<Chart> charts,
                      const AssembleOptions& options) {
    if (charts.empty()) throw ConfigError("at least one chart is required");
    const PrimeField field(p);
    require_coordinate_triangle(triple);
    std::sort(charts.begin(), charts.end());
    charts.erase(std::unique(charts.begin(), charts.end()), charts.end());

    AnsatzIndex index(m, t);
    std::vector<SparseRow> rows;
    std::vector<RowTag> tags;
    for (Chart chart : charts) {
        ExpansionOptions eo = options.expansion;
        eo.threads = std::max(eo.threads, options.threads);
        JetExpansion je = expand_ansatz(chart_data(triple, chart), m, t, field, eo);
        for (auto& r : obstruction_rows(je, options.threads)) {
            tags.push_back({r.chart, r.jet, r.mono});
            rows.push_back(std::move(r.row));
        }
    }
    LinearSystem s = from_rows(p, index.size(), std::move(rows), std::move(tags));
    s.columns = index.columns();
    return s;
}

void export_sms(const LinearSystem& s, std::ostream& out) {
    out << s.rows.size() << ' ' << s.n_vars << " M\n";
    for (std::size_t r = 0; r < s.rows.size(); ++r)
        for (const auto& e : s.rows[r]) out << (r + 1) << ' ' << (e.col + 1) << ' ' << e.value << '\n';
    out << "0 0 0\n";
    if (!out) throw IoFailure("failed to write the SMS stream");
}

std::string export_sms(const LinearSystem& s) {
    std::ostringstream out;
    export_sms(s, out);
    return out.str();
}

void export_sms_file(const LinearSystem& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open '" + path + "' for writing");
    export_sms(s, out);
    out.flush();
    if (!out) throw IoFailure("failed writing '" + path + "'");
}

LinearSystem import_sms(std::istream& in, std::uint64_t p) {
    const PrimeField field(p);
    std::size_t nrows = 0, ncols = 0;
    std::string tag;
    if (!(in >> nrows >> ncols >> tag) || tag != "M") throw IoFailure("SMS header must read 'nrows ncols M'");
    std::vector<SparseRow> rows(nrows);
    while (true) {
        std::size_t r = 0, c = 0;
        long long value = 0;
        if (!(in >> r >> c >> value)) throw IoFailure("SMS stream ended before the '0 0 0' terminator");
        if (r == 0 && c == 0 && value == 0) break;
        if (r == 0 || r > nrows || c == 0 || c > ncols) throw IoFailure("SMS entry index out of range");
        std::uint64_t v = field.from_int(value);
        if (v != 0) rows[r - 1].push_back({static_cast<std::uint32_t>(c - 1), v});
    }
    for (auto& row : rows) {
        std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
        SparseRow merged;
        for (const auto& e : row) {
            if (!merged.empty() && merged.back().col == e.col) {
                merged.back().value = field.add(merged.back().value, e.value);
                if (merged.back().value == 0) merged.pop_back();
            } else {
                merged.push_back(e);
            }
        }
        row = std::move(merged);
    }
    LinearSystem s;
    s.prime = p;
    s.n_vars = ncols;
    s.rows = std::move(rows);
    s.n_rows_raw = s.rows.size();
    return s;
}

LinearSystem import_sms_file(const std::string& path, std::uint64_t p) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open '" + path + "'");
    return import_sms(in, p);
}

std::string checksum(const LinearSystem& s) {
    const std::string bytes = export_sms(s);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

}  // namespace conicjet
