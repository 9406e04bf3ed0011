#include "conicjet/gfp_linalg.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace conicjet {

namespace {

struct Dense {
    std::vector<std::uint32_t> cols;           // global column of each dense column
    std::vector<std::uint32_t> rows;           // input row index of each dense row
    std::vector<std::vector<std::uint64_t>> m;  // rows x cols
};

// rows[i] <- rows[i] - f * pivot, with f = rows[i][c] / pivot[c].
SparseRow eliminate_row(const SparseRow& row, const SparseRow& pivot, std::uint64_t pivot_inv, std::uint32_t c,
                        const PrimeField& field) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const SparseEntry& e, std::uint32_t col) { return e.col < col; });
    const std::uint64_t f = field.neg(field.mul(it->value, pivot_inv));
    SparseRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].col < pivot[j].col)) {
            out.push_back(row[i++]);
        } else if (i == row.size() || pivot[j].col < row[i].col) {
            out.push_back({pivot[j].col, field.mul(f, pivot[j].value)});
            ++j;
        } else {
            std::uint64_t v = field.add(row[i].value, field.mul(f, pivot[j].value));
            if (v != 0) out.push_back({row[i].col, v});
            ++i;
            ++j;
        }
    }
    return out;
}

bool contains(const SparseRow& row, std::uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const SparseEntry& e, std::uint32_t col) { return e.col < col; });
    return it != row.end() && it->col == c;
}

std::uint64_t entry(const SparseRow& row, std::uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const SparseEntry& e, std::uint32_t col) { return e.col < col; });
    return (it != row.end() && it->col == c) ? it->value : 0;
}

class Eliminator {
public:
    Eliminator(const LinearSystem& s, const EliminationOptions& options)
        : field_(s.prime), n_(s.n_vars), options_(options), rows_(s.rows), active_(s.rows.size(), true),
          col_rows_(s.n_vars), count_(s.n_vars, 0), pivoted_(s.n_vars, false), mark_(s.rows.size(), 0) {
        for (std::uint32_t r = 0; r < rows_.size(); ++r) {
            if (rows_[r].empty()) active_[r] = false;
            for (const auto& e : rows_[r]) {
                col_rows_[e.col].push_back(r);
                ++count_[e.col];
            }
            nnz_ += rows_[r].size();
            if (!rows_[r].empty()) ++active_rows_;
        }
        for (std::uint32_t c = 0; c < n_; ++c)
            if (count_[c] > 0) queue_.insert({count_[c], c});
    }

    EliminationResult run() {
        while (!queue_.empty()) {
            if (options_.allow_dense && should_go_dense()) {
                dense_phase();
                break;
            }
            sparse_step();
        }
        EliminationResult res;
        res.rank = pivots_.size();
        res.nullity = n_ - res.rank;
        res.pivots = pivots_;
        res.dense_rows = dense_rows_;
        res.dense_cols = dense_cols_;
        if (options_.want_nullspace) res.nullspace = nullspace();
        return res;
    }

private:
    bool should_go_dense() const {
        const std::size_t cols = queue_.size();
        if (cols < 64 || active_rows_ == 0) return false;
        return double(nnz_) >= options_.dense_threshold * double(active_rows_) * double(cols);
    }

    void set_count(std::uint32_t c, std::size_t value) {
        if (pivoted_[c]) return;
        if (count_[c] > 0) queue_.erase({count_[c], c});
        count_[c] = value;
        if (value > 0) queue_.insert({value, c});
    }

    std::vector<std::uint32_t> rows_with(std::uint32_t c) {
        ++epoch_;
        std::vector<std::uint32_t> out;
        std::vector<std::uint32_t> kept;
        for (std::uint32_t r : col_rows_[c]) {
            if (mark_[r] == epoch_) continue;
            mark_[r] = epoch_;
            if (!active_[r] || !contains(rows_[r], c)) continue;
            out.push_back(r);
        }
        std::sort(out.begin(), out.end());
        col_rows_[c] = out;
        return out;
    }

    void sparse_step() {
        const std::uint32_t c = queue_.begin()->second;
        std::vector<std::uint32_t> candidates = rows_with(c);
        std::uint32_t pr = candidates.front();
        for (std::uint32_t r : candidates)
            if (rows_[r].size() < rows_[pr].size()) pr = r;

        const SparseRow& pivot = rows_[pr];
        const std::uint64_t inv = field_.inv(entry(pivot, c));
        std::vector<std::uint32_t> targets;
        for (std::uint32_t r : candidates)
            if (r != pr) targets.push_back(r);

        std::vector<SparseRow> updated(targets.size());
        auto work = [&](std::size_t first, std::size_t stride) {
            for (std::size_t i = first; i < targets.size(); i += stride)
                updated[i] = eliminate_row(rows_[targets[i]], pivot, inv, c, field_);
        };
        const unsigned workers =
            std::max(1u, std::min<unsigned>(options_.threads, static_cast<unsigned>(targets.size() / 16)));
        if (workers == 1) {
            work(0, 1);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
            for (auto& th : pool) th.join();
        }

        // Bookkeeping runs serially in row order.
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const std::uint32_t r = targets[i];
            const SparseRow& before = rows_[r];
            const SparseRow& after = updated[i];
            std::size_t a = 0, b = 0;
            while (a < before.size() || b < after.size()) {
                if (b == after.size() || (a < before.size() && before[a].col < after[b].col)) {
                    set_count(before[a].col, count_[before[a].col] - 1);
                    ++a;
                } else if (a == before.size() || after[b].col < before[a].col) {
                    set_count(after[b].col, count_[after[b].col] + 1);
                    col_rows_[after[b].col].push_back(r);
                    ++b;
                } else {
                    ++a;
                    ++b;
                }
            }
            nnz_ = nnz_ - before.size() + after.size();
            rows_[r] = std::move(updated[i]);
            if (rows_[r].empty()) {
                active_[r] = false;
                --active_rows_;
            }
        }

        active_[pr] = false;
        --active_rows_;
        nnz_ -= pivot.size();
        for (const auto& e : pivot)
            if (e.col != c) set_count(e.col, count_[e.col] - 1);
        queue_.erase({count_[c], c});
        count_[c] = 0;
        pivoted_[c] = true;
        pivots_.push_back({c, pr});
        pivot_rows_.push_back(pivot);
    }

    void dense_phase() {
        Dense d;
        std::vector<std::int64_t> local(n_, -1);
        for (std::uint32_t c = 0; c < n_; ++c)
            if (!pivoted_[c] && count_[c] > 0) {
                local[c] = static_cast<std::int64_t>(d.cols.size());
                d.cols.push_back(c);
            }
        for (std::uint32_t r = 0; r < rows_.size(); ++r)
            if (active_[r]) d.rows.push_back(r);
        dense_rows_ = d.rows.size();
        dense_cols_ = d.cols.size();
        const std::size_t C = d.cols.size();

        // Rows are streamed in index order and reduced against the pivots found
        // so far; the pivot of a new row is its first nonzero column.
        std::vector<std::vector<std::uint64_t>> basis;
        std::vector<std::size_t> basis_col;
        std::vector<std::int64_t> pivot_of(C, -1);
        const std::uint64_t p = field_.prime();
        for (std::uint32_t r : d.rows) {
            if (basis.size() == C) break;
            std::vector<std::uint64_t> row(C, 0);
            for (const auto& e : rows_[r]) row[static_cast<std::size_t>(local[e.col])] = e.value;
            for (std::size_t b = 0; b < basis.size(); ++b) {
                const std::uint64_t v = row[basis_col[b]];
                if (v == 0) continue;
                const std::uint64_t f = p - v;  // basis rows have 1 at their pivot
                const auto& br = basis[b];
                for (std::size_t k = basis_col[b]; k < C; ++k)
                    if (br[k] != 0) row[k] = field_.add(row[k], field_.mul(f, br[k]));
            }
            std::size_t lead = 0;
            while (lead < C && row[lead] == 0) ++lead;
            if (lead == C) continue;
            const std::uint64_t inv = field_.inv(row[lead]);
            for (std::size_t k = lead; k < C; ++k)
                if (row[k] != 0) row[k] = field_.mul(row[k], inv);
            pivot_of[lead] = static_cast<std::int64_t>(basis.size());
            basis.push_back(row);
            basis_col.push_back(lead);
            pivots_.push_back({d.cols[lead], r});
            SparseRow sparse;
            for (std::size_t k = 0; k < C; ++k)
                if (row[k] != 0) sparse.push_back({d.cols[k], row[k]});
            pivot_rows_.push_back(std::move(sparse));
            pivoted_[d.cols[lead]] = true;
        }
        queue_.clear();
    }

    std::vector<std::vector<std::uint64_t>> nullspace() const {
        std::vector<std::vector<std::uint64_t>> out;
        for (std::uint32_t f = 0; f < n_; ++f) {
            if (pivoted_[f]) continue;
            std::vector<std::uint64_t> x(n_, 0);
            x[f] = 1;
            for (std::size_t k = pivots_.size(); k-- > 0;) {
                const std::uint32_t c = pivots_[k].col;
                std::uint64_t acc = 0, lead = 0;
                for (const auto& e : pivot_rows_[k]) {
                    if (e.col == c)
                        lead = e.value;
                    else
                        field_.add_mul(acc, e.value, x[e.col]);
                }
                x[c] = field_.mul(field_.neg(acc), field_.inv(lead));
            }
            out.push_back(std::move(x));
        }
        return out;
    }

    PrimeField field_;
    std::uint32_t n_;
    EliminationOptions options_;
    std::vector<SparseRow> rows_;
    std::vector<bool> active_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<std::size_t> count_;
    std::vector<bool> pivoted_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    std::set<std::pair<std::size_t, std::uint32_t>> queue_;
    std::size_t nnz_ = 0;
    std::size_t active_rows_ = 0;
    std::vector<Pivot> pivots_;
    std::vector<SparseRow> pivot_rows_;
    std::size_t dense_rows_ = 0, dense_cols_ = 0;
};

std::size_t dense_rank_of(std::vector<std::vector<std::uint64_t>> m, std::size_t cols, const PrimeField& field) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t r = rank;
        while (r < m.size() && m[r][c] == 0) ++r;
        if (r == m.size()) continue;
        std::swap(m[r], m[rank]);
        const std::uint64_t inv = field.inv(m[rank][c]);
        for (std::size_t k = c; k < cols; ++k) m[rank][k] = field.mul(m[rank][k], inv);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][c] == 0) continue;
            const std::uint64_t f = field.neg(m[i][c]);
            for (std::size_t k = c; k < cols; ++k) m[i][k] = field.add(m[i][k], field.mul(f, m[rank][k]));
        }
        ++rank;
    }
    return rank;
}

}  // namespace

EliminationResult rank_nullity(const LinearSystem& s, const EliminationOptions& options) {
    s.validate();
    return Eliminator(s, options).run();
}

std::vector<std::vector<std::uint64_t>> nullspace_basis(const LinearSystem& s, const EliminationOptions& options) {
    EliminationOptions o = options;
    o.want_nullspace = true;
    auto res = rank_nullity(s, o);
    for (const auto& v : res.nullspace)
        if (!verify_solution(s, v)) throw Error("internal error: nullspace vector fails verification");
    return res.nullspace;
}

bool verify_solution(const LinearSystem& s, const std::vector<std::uint64_t>& v) {
    if (v.size() != s.n_vars) throw Error("verify_solution: vector length differs from n_vars");
    const PrimeField field(s.prime);
    for (const auto& row : s.rows)
        if (dot(row, v, field) != 0) return false;
    return true;
}

std::size_t dense_rank(const LinearSystem& s) {
    const PrimeField field(s.prime);
    std::vector<std::vector<std::uint64_t>> m(s.rows.size(), std::vector<std::uint64_t>(s.n_vars, 0));
    for (std::size_t r = 0; r < s.rows.size(); ++r)
        for (const auto& e : s.rows[r]) m[r][e.col] = e.value;
    return dense_rank_of(std::move(m), s.n_vars, field);
}

bool in_span(const std::vector<std::vector<std::uint64_t>>& basis, const std::vector<std::uint64_t>& v,
             std::uint64_t p) {
    const PrimeField field(p);
    auto m = basis;
    const std::size_t before = dense_rank_of(m, v.size(), field);
    m.push_back(v);
    return dense_rank_of(std::move(m), v.size(), field) == before;
}

}  // namespace conicjet
