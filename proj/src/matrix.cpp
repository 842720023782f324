#include "minrank/matrix.hpp"

#include <cassert>
#include <stdexcept>

#include "minrank/error.hpp"

namespace minrank {

GFMatrix GFMatrix::identity(FieldSpec field, std::size_t n) {
    GFMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

GFMatrix GFMatrix::from_rows(FieldSpec field,
                             std::initializer_list<std::initializer_list<unsigned>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    GFMatrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw Error(Errc::dimension, "ragged row in matrix literal");
        std::size_t j = 0;
        for (unsigned v : row) m.set(i, j++, std::uint8_t(v));
        ++i;
    }
    return m;
}

GFMatrix GFMatrix::from_row_vectors(FieldSpec field,
                                    const std::vector<std::vector<std::uint8_t>>& rows,
                                    std::size_t cols) {
    GFMatrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(Errc::dimension, "ragged row vector");
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

void GFMatrix::set(std::size_t r, std::size_t c, std::uint8_t v) {
    if (r >= rows_ || c >= cols_) throw Error(Errc::bounds, "matrix index out of range");
    if (!field_.in_field(v)) throw Error(Errc::field, "entry outside the field alphabet");
    data_[r * cols_ + c] = v;
}

GFMatrix GFMatrix::transposed() const {
    GFMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
    return t;
}

GFMatrix GFMatrix::mul(const GFMatrix& other) const {
    assert(field_ == other.field_);
    if (cols_ != other.rows_) throw Error(Errc::dimension, "matrix product shape mismatch");
    GFMatrix out(field_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint8_t a = data_[i * cols_ + k];
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                std::uint8_t& cell = out.data_[i * other.cols_ + j];
                cell = field_.add(cell, field_.mul(a, other.data_[k * other.cols_ + j]));
            }
        }
    }
    return out;
}

std::vector<std::uint8_t> GFMatrix::mul_vec(std::span<const std::uint8_t> v) const {
    if (v.size() != cols_) throw Error(Errc::dimension, "matrix-vector shape mismatch");
    std::vector<std::uint8_t> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint8_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            acc = field_.add(acc, field_.mul(data_[i * cols_ + j], v[j]));
        out[i] = acc;
    }
    return out;
}

bool GFMatrix::is_zero() const {
    for (std::uint8_t v : data_)
        if (v != 0) return false;
    return true;
}

std::string GFMatrix::render() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out += ' ';
            out += std::to_string(unsigned(data_[i * cols_ + j]));
        }
        out += '\n';
    }
    return out;
}

}  // namespace minrank
