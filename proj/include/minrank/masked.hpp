#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minrank/matrix.hpp"

namespace minrank {

/// Matrix over GF(q) whose entries may be erased. This is the completion
/// problem instance: erased cells are free to take any field value.
class MaskedMatrix {
public:
    static constexpr std::int16_t kErased = -1;

    /// All cells start erased.
    MaskedMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), cells_(rows * cols, kErased) {}

    /// Text format: one matrix row per line, tokens separated by spaces/tabs,
    /// each token a decimal integer in [0,q) or the literal "X". Lines whose
    /// first non-blank character is '#' are comments; blank lines are skipped.
    static MaskedMatrix parse(std::string_view text, FieldSpec field);

    static MaskedMatrix from_gf(const GFMatrix& m);

    std::string render() const;

    const FieldSpec& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool is_erased(std::size_t r, std::size_t c) const { return cell(r, c) == kErased; }
    std::uint8_t value(std::size_t r, std::size_t c) const;

    void set_value(std::size_t r, std::size_t c, std::uint8_t v);
    void set_erased(std::size_t r, std::size_t c);

    std::size_t erasure_count() const;
    std::size_t known_count() const { return rows_ * cols_ - erasure_count(); }
    bool complete() const { return erasure_count() == 0; }

    /// Lossless conversion; requires no erasures.
    GFMatrix to_gf() const;

    /// Restriction to the given row/column index lists (0-based), preserving
    /// erasures. Order of the output follows the order of the index lists.
    MaskedMatrix submatrix(std::span<const std::size_t> row_idx,
                           std::span<const std::size_t> col_idx) const;

    /// Restriction converted to GFMatrix; throws Errc::validity if the
    /// selection contains an erased cell.
    GFMatrix gf_submatrix(std::span<const std::size_t> row_idx,
                          std::span<const std::size_t> col_idx) const;

    bool selection_complete(std::span<const std::size_t> row_idx,
                            std::span<const std::size_t> col_idx) const;

    /// Block expansion for vector coding: 1 -> n x n identity, 0 -> zero
    /// block, erased -> all-erased block. Defined only for 0/1/X patterns.
    MaskedMatrix blow_up(std::size_t n) const;

    struct ErasureProfile {
        std::vector<std::size_t> row_counts;
        std::vector<std::size_t> col_counts;
    };
    ErasureProfile erasure_profile() const;

    std::size_t row_erasures_over(std::size_t r, std::span<const std::size_t> col_idx) const;
    std::size_t col_erasures_over(std::size_t c, std::span<const std::size_t> row_idx) const;

    /// True where this matrix agrees with `original` on every cell that is
    /// known in `original` (and has the same shape/field).
    bool agrees_with_mask(const MaskedMatrix& original) const;

    MaskedMatrix transposed() const;

    bool operator==(const MaskedMatrix& other) const {
        return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_ &&
               cells_ == other.cells_;
    }

private:
    std::int16_t cell(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

    FieldSpec field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::int16_t> cells_;
};

/// A complete sub-matrix: row set, column set (both ascending, 0-based) and
/// the rank of the selected block.
struct SubmatrixIndex {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    std::size_t rank = 0;
};

}  // namespace minrank
