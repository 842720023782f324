#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "minrank/linalg.hpp"
#include "minrank/masked.hpp"

namespace testsupport {

// The 5x5 demand matrix used throughout: rows are messages, columns are
// receivers, X marks side information.
inline const char* kDemandMatrixText =
    "1 X 0 0 X\n"
    "X 1 X X 0\n"
    "0 0 1 1 X\n"
    "0 0 X 1 X\n"
    "X X 0 0 1\n";

// All q^k words spanned by the rows of a generator matrix, found by plain
// enumeration of coefficient vectors. This is the reference the projection
// machinery is checked against, so it must stay independent of it.
inline std::set<std::vector<std::uint8_t>> enumerate_rowspan(const minrank::GFMatrix& gen) {
    const minrank::FieldSpec& f = gen.field();
    std::set<std::vector<std::uint8_t>> words;
    std::vector<std::uint8_t> coeff(gen.rows(), 0);
    while (true) {
        std::vector<std::uint8_t> w(gen.cols(), 0);
        for (std::size_t i = 0; i < gen.rows(); ++i) {
            if (coeff[i] == 0) continue;
            for (std::size_t j = 0; j < gen.cols(); ++j)
                w[j] = f.add(w[j], f.mul(coeff[i], gen(i, j)));
        }
        words.insert(std::move(w));
        std::size_t pos = 0;
        while (pos < coeff.size()) {
            if (++coeff[pos] < f.q()) break;
            coeff[pos++] = 0;
        }
        if (pos == coeff.size()) break;
    }
    return words;
}

// Highest rank over every complete sub-matrix, by scanning all row and
// column subsets. Exponential; fine for the 5x5 fixtures it is used on.
inline std::size_t max_complete_submatrix_rank(const minrank::MaskedMatrix& m) {
    std::size_t a = m.rows(), b = m.cols();
    std::size_t best = 0;
    for (std::size_t rbits = 1; rbits < (std::size_t(1) << a); ++rbits) {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < a; ++i)
            if (rbits >> i & 1) rows.push_back(i);
        for (std::size_t cbits = 1; cbits < (std::size_t(1) << b); ++cbits) {
            std::vector<std::size_t> cols;
            for (std::size_t j = 0; j < b; ++j)
                if (cbits >> j & 1) cols.push_back(j);
            if (!m.selection_complete(rows, cols)) continue;
            best = std::max(best, minrank::mat_rank(m.gf_submatrix(rows, cols)));
        }
    }
    return best;
}

inline minrank::GFMatrix random_gf(std::mt19937_64& gen, const minrank::FieldSpec& f,
                                   std::size_t rows, std::size_t cols) {
    minrank::GFMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, std::uint8_t(gen() % f.q()));
    return m;
}

inline minrank::MaskedMatrix random_masked(std::mt19937_64& gen, const minrank::FieldSpec& f,
                                           std::size_t rows, std::size_t cols,
                                           std::size_t erasures) {
    minrank::MaskedMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set_value(i, j, std::uint8_t(gen() % f.q()));
    std::vector<std::size_t> cells(rows * cols);
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
    for (std::size_t i = 0; i < erasures && i < cells.size(); ++i) {
        std::size_t pick = i + std::size_t(gen() % (cells.size() - i));
        std::swap(cells[i], cells[pick]);
        m.set_erased(cells[i] / cols, cells[i] % cols);
    }
    return m;
}

}  // namespace testsupport
