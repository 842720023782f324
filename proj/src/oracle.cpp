#include "minrank/oracle.hpp"

#include <algorithm>
#include <limits>

#include "minrank/error.hpp"
#include "minrank/linalg.hpp"

namespace minrank {

namespace {

// Echelon state shared across completions with a common row prefix. Basis
// rows are normalized to a leading 1 and kept sorted by pivot, so reducing a
// candidate is a single ascending pass.
struct Echelon {
    const FieldSpec& f;
    std::vector<std::pair<std::size_t, std::vector<std::uint8_t>>> basis;  // (pivot, row)

    explicit Echelon(const FieldSpec& field) : f(field) {}

    std::size_t rank() const { return basis.size(); }

    // Reduce v in place; returns the insertion slot if v is independent.
    std::optional<std::size_t> reduce(std::vector<std::uint8_t>& v) const {
        for (const auto& [p, row] : basis) {
            std::uint8_t c = v[p];
            if (c == 0) continue;
            for (std::size_t j = p; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(c, row[j]));
        }
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] != 0) {
                std::uint8_t s = f.inv(v[j]);
                if (s != 1)
                    for (std::size_t t = j; t < v.size(); ++t) v[t] = f.mul(v[t], s);
                std::size_t slot = 0;
                while (slot < basis.size() && basis[slot].first < j) ++slot;
                return slot;
            }
        }
        return std::nullopt;
    }

    void insert(std::size_t slot, std::size_t pivot, std::vector<std::uint8_t> row) {
        basis.insert(basis.begin() + std::ptrdiff_t(slot), {pivot, std::move(row)});
    }

    void erase(std::size_t slot) { basis.erase(basis.begin() + std::ptrdiff_t(slot)); }
};

struct DfsState {
    const MaskedMatrix& input;
    const FieldSpec& f;
    bool counting;
    MaskedMatrix work;
    std::vector<std::vector<std::size_t>> erased_cols;  // per row
    Echelon echelon;

    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::optional<GFMatrix> witness;
    std::uint64_t optima = 0;

    DfsState(const MaskedMatrix& m, bool count)
        : input(m), f(m.field()), counting(count), work(m), echelon(m.field()) {
        erased_cols.resize(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m.is_erased(i, j)) erased_cols[i].push_back(j);
    }

    void leaf() {
        std::size_t r = echelon.rank();
        if (r < best) {
            best = r;
            witness = work.to_gf();
            optima = 1;
        } else if (counting && r == best) {
            optima += 1;
        }
    }

    void dfs(std::size_t row) {
        if (row == input.rows()) {
            leaf();
            return;
        }
        // Rank only grows with more rows, so a prefix at or above the best
        // known minimum cannot improve it (strictly above, when counting —
        // ties deeper down still have to be counted).
        if (counting ? echelon.rank() > best : echelon.rank() >= best) return;

        const auto& cols = erased_cols[row];
        std::uint64_t fillings = pow_saturating(f.q(), cols.size());
        std::vector<std::uint8_t> digits(cols.size(), 0);
        for (std::uint64_t t = 0; t < fillings; ++t) {
            // Odometer: the last erased position in the row cycles fastest.
            std::uint64_t rest = t;
            for (std::size_t i = cols.size(); i-- > 0;) {
                digits[i] = std::uint8_t(rest % f.q());
                rest /= f.q();
            }
            for (std::size_t i = 0; i < cols.size(); ++i)
                work.set_value(row, cols[i], digits[i]);

            std::vector<std::uint8_t> v(input.cols());
            for (std::size_t j = 0; j < input.cols(); ++j) v[j] = work.value(row, j);
            auto slot = echelon.reduce(v);
            if (slot) {
                std::size_t pivot = 0;
                while (v[pivot] == 0) ++pivot;
                echelon.insert(*slot, pivot, v);
                dfs(row + 1);
                echelon.erase(*slot);
            } else {
                dfs(row + 1);
            }
        }
        for (std::size_t c : cols) work.set_erased(row, c);
    }
};

}  // namespace

OracleResult oracle_min_rank(const MaskedMatrix& m, const OracleConfig& cfg) {
    const FieldSpec& f = m.field();
    std::size_t e = m.erasure_count();
    std::uint64_t space = pow_saturating(f.q(), e);
    if (space > cfg.budget)
        throw Error(Errc::budget, "exhaustive completion needs " + std::to_string(f.q()) + "^" +
                                      std::to_string(e) + " = " + std::to_string(space) +
                                      " enumerations, over the budget of " +
                                      std::to_string(cfg.budget));

    if (cfg.naive) {
        std::vector<std::pair<std::size_t, std::size_t>> positions;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m.is_erased(i, j)) positions.emplace_back(i, j);

        std::size_t best = std::numeric_limits<std::size_t>::max();
        std::optional<GFMatrix> witness;
        std::uint64_t optima = 0;
        MaskedMatrix work = m;
        for (std::uint64_t t = 0; t < space; ++t) {
            std::uint64_t rest = t;
            for (std::size_t i = positions.size(); i-- > 0;) {
                work.set_value(positions[i].first, positions[i].second,
                               std::uint8_t(rest % f.q()));
                rest /= f.q();
            }
            GFMatrix g = work.to_gf();
            std::size_t r = mat_rank(g);
            if (r < best) {
                best = r;
                witness = std::move(g);
                optima = 1;
            } else if (r == best) {
                optima += 1;
            }
        }
        OracleResult out{best, std::move(*witness), std::nullopt, space};
        if (cfg.count_optima) out.optimum_count = optima;
        return out;
    }

    DfsState state(m, cfg.count_optima);
    state.dfs(0);
    OracleResult out{state.best, std::move(*state.witness), std::nullopt, space};
    if (cfg.count_optima) out.optimum_count = state.optima;
    return out;
}

}  // namespace minrank
