#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "minrank/field.hpp"

namespace minrank {

/// Dense matrix over GF(q). Row-major, one byte per entry. Values outside
/// 0..q-1 are rejected at the boundary so internal arithmetic can skip
/// normalization. Immutable use is the norm; set() exists for builders.
class GFMatrix {
public:
    GFMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static GFMatrix identity(FieldSpec field, std::size_t n);
    static GFMatrix from_rows(FieldSpec field,
                              std::initializer_list<std::initializer_list<unsigned>> rows);
    static GFMatrix from_row_vectors(FieldSpec field,
                                     const std::vector<std::vector<std::uint8_t>>& rows,
                                     std::size_t cols);

    const FieldSpec& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::uint8_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void set(std::size_t r, std::size_t c, std::uint8_t v);

    std::span<const std::uint8_t> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    GFMatrix transposed() const;

    /// this * other; dimensions must agree.
    GFMatrix mul(const GFMatrix& other) const;

    /// this * v (column vector).
    std::vector<std::uint8_t> mul_vec(std::span<const std::uint8_t> v) const;

    bool is_zero() const;

    bool operator==(const GFMatrix& other) const {
        return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_ &&
               data_ == other.data_;
    }

    /// One line per row, entries separated by single spaces.
    std::string render() const;

private:
    FieldSpec field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint8_t> data_;
};

}  // namespace minrank
