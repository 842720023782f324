#include "minrank/search.hpp"

#include <algorithm>
#include <random>

#include "minrank/error.hpp"
#include "minrank/linalg.hpp"
#include "minrank/rng.hpp"

namespace minrank {

namespace {

std::vector<std::size_t> complement(const std::vector<std::size_t>& idx, std::size_t n) {
    std::vector<bool> in(n, false);
    for (std::size_t i : idx) in[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

void insert_sorted(std::vector<std::size_t>& v, std::size_t x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

std::size_t selection_rank(const MaskedMatrix& m, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) {
    if (rows.empty() || cols.empty()) return 0;
    return mat_rank(m.gf_submatrix(rows, cols));
}

// Candidate rows outside I1, ordered by (erasure count over I2, index).
std::vector<std::size_t> ordered_candidates(const MaskedMatrix& m,
                                            const std::vector<std::size_t>& in_set,
                                            const std::vector<std::size_t>& over,
                                            std::size_t universe, bool rows) {
    std::vector<std::size_t> cand = complement(in_set, universe);
    std::vector<std::pair<std::size_t, std::size_t>> keyed;
    keyed.reserve(cand.size());
    for (std::size_t i : cand) {
        std::size_t e = rows ? m.row_erasures_over(i, over) : m.col_erasures_over(i, over);
        keyed.emplace_back(e, i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> out;
    out.reserve(keyed.size());
    for (auto& [e, i] : keyed) out.push_back(i);
    return out;
}

bool try_row_improvement(const MaskedMatrix& m, std::vector<std::size_t>& i1,
                         std::vector<std::size_t>& i2, std::size_t& k) {
    for (std::size_t cand : ordered_candidates(m, i1, i2, m.rows(), /*rows=*/true)) {
        std::vector<std::size_t> new_rows = i1;
        insert_sorted(new_rows, cand);
        // Keep only the I2 columns that stay complete once `cand` joins.
        std::vector<std::size_t> new_cols;
        for (std::size_t c : i2)
            if (!m.is_erased(cand, c)) new_cols.push_back(c);
        std::size_t r = selection_rank(m, new_rows, new_cols);
        if (r > k) {
            i1 = std::move(new_rows);
            i2 = std::move(new_cols);
            k = r;
            return true;
        }
    }
    return false;
}

bool try_col_improvement(const MaskedMatrix& m, std::vector<std::size_t>& i1,
                         std::vector<std::size_t>& i2, std::size_t& k) {
    for (std::size_t cand : ordered_candidates(m, i2, i1, m.cols(), /*rows=*/false)) {
        std::vector<std::size_t> new_cols = i2;
        insert_sorted(new_cols, cand);
        std::vector<std::size_t> new_rows;
        for (std::size_t r : i1)
            if (!m.is_erased(r, cand)) new_rows.push_back(r);
        std::size_t r = selection_rank(m, new_rows, new_cols);
        if (r > k) {
            i1 = std::move(new_rows);
            i2 = std::move(new_cols);
            k = r;
            return true;
        }
    }
    return false;
}

// Absorb every row/column that is complete over the current sets. This
// restores maximality, which the strict rank-increase acceptance rule alone
// does not guarantee. Rank can only grow here; it is recomputed at the end.
void maximality_pass(const MaskedMatrix& m, std::vector<std::size_t>& i1,
                     std::vector<std::size_t>& i2) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t r : complement(i1, m.rows())) {
            if (m.row_erasures_over(r, i2) == 0) {
                insert_sorted(i1, r);
                changed = true;
            }
        }
        for (std::size_t c : complement(i2, m.cols())) {
            if (m.col_erasures_over(c, i1) == 0) {
                insert_sorted(i2, c);
                changed = true;
            }
        }
    }
}

}  // namespace

SubmatrixIndex find_max_complete_submatrix(const MaskedMatrix& m, const SearchConfig& cfg) {
    if (m.rows() == 0 || m.cols() == 0)
        throw Error(Errc::domain, "matrix must have at least one row and one column");
    if (cfg.stall_limit < 1) throw Error(Errc::domain, "stall limit must be >= 1");

    std::vector<std::size_t> i1(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) i1[i] = i;
    std::vector<std::size_t> i2;
    std::size_t k = 0;

    std::mt19937_64 gen(cfg.seed);
    std::size_t stall = 0;
    while (stall < cfg.stall_limit) {
        double th = double(i1.size()) / double(i1.size() + i2.size());
        double u = unit_double(gen());
        bool improved = u > th ? try_row_improvement(m, i1, i2, k)
                               : try_col_improvement(m, i1, i2, k);
        stall = improved ? 0 : stall + 1;
    }

    maximality_pass(m, i1, i2);
    k = selection_rank(m, i1, i2);
    return SubmatrixIndex{std::move(i1), std::move(i2), k};
}

}  // namespace minrank
