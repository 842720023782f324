#include "minrank/linalg.hpp"

#include <cassert>
#include <limits>

#include "minrank/error.hpp"

namespace minrank {

namespace {

// Bit-packed GF(2) rows, 64 columns per word.
struct PackedRows {
    std::size_t cols = 0;
    std::size_t words = 0;
    std::vector<std::uint64_t> bits;  // rows * words

    PackedRows(const GFMatrix& m) : cols(m.cols()), words((m.cols() + 63) / 64) {
        bits.assign(m.rows() * words, 0);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (m(i, j)) bits[i * words + (j >> 6)] |= std::uint64_t(1) << (j & 63);
    }

    std::uint64_t* row(std::size_t i) { return bits.data() + i * words; }

    bool get(std::size_t i, std::size_t j) const {
        return (bits[i * words + (j >> 6)] >> (j & 63)) & 1;
    }

    void xor_rows(std::size_t dst, std::size_t src) {
        std::uint64_t* d = row(dst);
        const std::uint64_t* s = bits.data() + src * words;
        for (std::size_t w = 0; w < words; ++w) d[w] ^= s[w];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::uint64_t* ra = row(a);
        std::uint64_t* rb = row(b);
        for (std::size_t w = 0; w < words; ++w) std::swap(ra[w], rb[w]);
    }
};

std::size_t rank_gf2(const GFMatrix& m) {
    PackedRows p(m);
    std::size_t nrows = m.rows();
    std::size_t r = 0;
    for (std::size_t col = 0; col < p.cols && r < nrows; ++col) {
        std::size_t pivot = r;
        while (pivot < nrows && !p.get(pivot, col)) ++pivot;
        if (pivot == nrows) continue;
        p.swap_rows(r, pivot);
        for (std::size_t i = r + 1; i < nrows; ++i)
            if (p.get(i, col)) p.xor_rows(i, r);
        ++r;
    }
    return r;
}

std::size_t rank_generic(const GFMatrix& m) {
    const FieldSpec& f = m.field();
    std::size_t nrows = m.rows(), ncols = m.cols();
    std::vector<std::uint8_t> a(nrows * ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) a[i * ncols + j] = m(i, j);

    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
        std::size_t pivot = r;
        while (pivot < nrows && a[pivot * ncols + col] == 0) ++pivot;
        if (pivot == nrows) continue;
        if (pivot != r)
            for (std::size_t j = col; j < ncols; ++j)
                std::swap(a[r * ncols + j], a[pivot * ncols + j]);
        std::uint8_t pinv = f.inv(a[r * ncols + col]);
        for (std::size_t i = r + 1; i < nrows; ++i) {
            std::uint8_t v = a[i * ncols + col];
            if (v == 0) continue;
            std::uint8_t factor = f.mul(v, pinv);
            for (std::size_t j = col; j < ncols; ++j)
                a[i * ncols + j] =
                    f.sub(a[i * ncols + j], f.mul(factor, a[r * ncols + j]));
        }
        ++r;
    }
    return r;
}

RrefResult rref_gf2(const GFMatrix& m) {
    PackedRows p(m);
    std::size_t nrows = m.rows();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < p.cols && r < nrows; ++col) {
        std::size_t pivot = r;
        while (pivot < nrows && !p.get(pivot, col)) ++pivot;
        if (pivot == nrows) continue;
        p.swap_rows(r, pivot);
        for (std::size_t i = 0; i < nrows; ++i)
            if (i != r && p.get(i, col)) p.xor_rows(i, r);
        pivots.push_back(col);
        ++r;
    }
    GFMatrix out(m.field(), nrows, m.cols());
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (p.get(i, j)) out.set(i, j, 1);
    return {std::move(out), std::move(pivots)};
}

RrefResult rref_generic(const GFMatrix& m) {
    const FieldSpec& f = m.field();
    std::size_t nrows = m.rows(), ncols = m.cols();
    std::vector<std::uint8_t> a(nrows * ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) a[i * ncols + j] = m(i, j);

    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
        std::size_t pivot = r;
        while (pivot < nrows && a[pivot * ncols + col] == 0) ++pivot;
        if (pivot == nrows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < ncols; ++j)
                std::swap(a[r * ncols + j], a[pivot * ncols + j]);
        std::uint8_t pinv = f.inv(a[r * ncols + col]);
        if (pinv != 1)
            for (std::size_t j = 0; j < ncols; ++j)
                a[r * ncols + j] = f.mul(a[r * ncols + j], pinv);
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == r) continue;
            std::uint8_t factor = a[i * ncols + col];
            if (factor == 0) continue;
            for (std::size_t j = 0; j < ncols; ++j)
                a[i * ncols + j] =
                    f.sub(a[i * ncols + j], f.mul(factor, a[r * ncols + j]));
        }
        pivots.push_back(col);
        ++r;
    }
    GFMatrix out(f, nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) out.set(i, j, a[i * ncols + j]);
    return {std::move(out), std::move(pivots)};
}

}  // namespace

std::size_t mat_rank(const GFMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return m.field().q() == 2 ? rank_gf2(m) : rank_generic(m);
}

RrefResult rref(const GFMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {m, {}};
    return m.field().q() == 2 ? rref_gf2(m) : rref_generic(m);
}

std::vector<std::vector<std::uint8_t>> nullspace_basis(const GFMatrix& m) {
    const FieldSpec& f = m.field();
    std::size_t n = m.cols();
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<std::uint8_t>> basis;
    basis.reserve(n - r.pivot_cols.size());
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::uint8_t> v(n, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
            v[r.pivot_cols[i]] = f.neg(r.matrix(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (out > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        out *= base;
    }
    return out;
}

std::uint64_t AffineSolutionSet::count() const noexcept {
    if (empty()) return 0;
    return pow_saturating(field_.q(), basis_.size());
}

std::vector<std::uint8_t> AffineSolutionSet::solution(std::uint64_t index) const {
    std::vector<std::uint8_t> v = *particular_;
    std::uint64_t rest = index;
    for (const auto& b : basis_) {
        std::uint8_t coeff = std::uint8_t(rest % field_.q());
        rest /= field_.q();
        if (coeff != 0)
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = field_.add(v[j], field_.mul(coeff, b[j]));
    }
    return v;
}

AffineSolutionSet solve_linear(const GFMatrix& a, std::span<const std::uint8_t> b) {
    if (b.size() != a.rows()) throw Error(Errc::dimension, "right-hand side length mismatch");
    const FieldSpec& f = a.field();
    std::size_t n = a.cols();

    // Eliminate the augmented system [a | b].
    GFMatrix aug(f, a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.set(i, j, a(i, j));
        aug.set(i, n, b[i]);
    }
    RrefResult r = rref(aug);

    // A pivot in the augmented column means 0 = nonzero.
    if (!r.pivot_cols.empty() && r.pivot_cols.back() == n)
        return AffineSolutionSet::empty_set(f, n);

    std::vector<std::uint8_t> particular(n, 0);
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
        particular[r.pivot_cols[i]] = r.matrix(i, n);

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::uint8_t> v(n, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
            v[r.pivot_cols[i]] = f.neg(r.matrix(i, free));
        basis.push_back(std::move(v));
    }
    return AffineSolutionSet(f, n, std::move(particular), std::move(basis));
}

}  // namespace minrank
