#include "minrank/masked.hpp"

#include <charconv>

#include "minrank/error.hpp"

namespace minrank {

namespace {

bool blank_or_comment(std::string_view line) {
    for (char ch : line) {
        if (ch == ' ' || ch == '\t' || ch == '\r') continue;
        return ch == '#';
    }
    return true;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

}  // namespace

MaskedMatrix MaskedMatrix::parse(std::string_view text, FieldSpec field) {
    std::vector<std::vector<std::int16_t>> rows;
    std::size_t width = 0;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        ++lineno;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        if (blank_or_comment(line)) continue;
        std::vector<std::int16_t> row;
        for (std::string_view tok : split_tokens(line)) {
            if (tok == "X") {
                row.push_back(kErased);
                continue;
            }
            unsigned v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size())
                throw Error(Errc::format, "line " + std::to_string(lineno) + ": bad token '" +
                                              std::string(tok) + "'");
            if (!field.in_field(v))
                throw Error(Errc::field, "line " + std::to_string(lineno) + ": token " +
                                             std::to_string(v) + " outside GF(" +
                                             std::to_string(field.q()) + ")");
            row.push_back(std::int16_t(v));
        }
        if (rows.empty()) {
            width = row.size();
        } else if (row.size() != width) {
            throw Error(Errc::format, "line " + std::to_string(lineno) + ": expected " +
                                          std::to_string(width) + " tokens, got " +
                                          std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(Errc::format, "empty matrix input");

    MaskedMatrix m(field, rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j) m.cells_[i * width + j] = rows[i][j];
    return m;
}

MaskedMatrix MaskedMatrix::from_gf(const GFMatrix& m) {
    MaskedMatrix out(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.cells_[i * m.cols() + j] = m(i, j);
    return out;
}

std::string MaskedMatrix::render() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out += ' ';
            std::int16_t v = cell(i, j);
            if (v == kErased)
                out += 'X';
            else
                out += std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

std::uint8_t MaskedMatrix::value(std::size_t r, std::size_t c) const {
    std::int16_t v = cell(r, c);
    if (v == kErased) throw Error(Errc::domain, "cell is erased");
    return std::uint8_t(v);
}

void MaskedMatrix::set_value(std::size_t r, std::size_t c, std::uint8_t v) {
    if (r >= rows_ || c >= cols_) throw Error(Errc::bounds, "cell index out of range");
    if (!field_.in_field(v)) throw Error(Errc::field, "entry outside the field alphabet");
    cells_[r * cols_ + c] = v;
}

void MaskedMatrix::set_erased(std::size_t r, std::size_t c) {
    if (r >= rows_ || c >= cols_) throw Error(Errc::bounds, "cell index out of range");
    cells_[r * cols_ + c] = kErased;
}

std::size_t MaskedMatrix::erasure_count() const {
    std::size_t n = 0;
    for (std::int16_t v : cells_)
        if (v == kErased) ++n;
    return n;
}

GFMatrix MaskedMatrix::to_gf() const {
    GFMatrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            std::int16_t v = cell(i, j);
            if (v == kErased) throw Error(Errc::validity, "matrix still has erasures");
            out.set(i, j, std::uint8_t(v));
        }
    return out;
}

MaskedMatrix MaskedMatrix::submatrix(std::span<const std::size_t> row_idx,
                                     std::span<const std::size_t> col_idx) const {
    for (std::size_t r : row_idx)
        if (r >= rows_) throw Error(Errc::bounds, "row index out of range");
    for (std::size_t c : col_idx)
        if (c >= cols_) throw Error(Errc::bounds, "column index out of range");
    MaskedMatrix out(field_, row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j)
            out.cells_[i * col_idx.size() + j] = cell(row_idx[i], col_idx[j]);
    return out;
}

GFMatrix MaskedMatrix::gf_submatrix(std::span<const std::size_t> row_idx,
                                    std::span<const std::size_t> col_idx) const {
    MaskedMatrix sub = submatrix(row_idx, col_idx);
    return sub.to_gf();
}

bool MaskedMatrix::selection_complete(std::span<const std::size_t> row_idx,
                                      std::span<const std::size_t> col_idx) const {
    for (std::size_t r : row_idx)
        for (std::size_t c : col_idx)
            if (cell(r, c) == kErased) return false;
    return true;
}

MaskedMatrix MaskedMatrix::blow_up(std::size_t n) const {
    if (n < 1) throw Error(Errc::domain, "block length must be >= 1");
    for (std::int16_t v : cells_)
        if (v != kErased && v != 0 && v != 1)
            throw Error(Errc::domain, "blow-up is defined only for 0/1/X pattern matrices");

    MaskedMatrix out(field_, rows_ * n, cols_ * n);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            std::int16_t v = cell(i, j);
            if (v == kErased) continue;  // block stays all-erased
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t t = 0; t < n; ++t)
                    out.cells_[(i * n + s) * out.cols_ + (j * n + t)] =
                        (v == 1 && s == t) ? 1 : 0;
        }
    }
    return out;
}

MaskedMatrix::ErasureProfile MaskedMatrix::erasure_profile() const {
    ErasureProfile p;
    p.row_counts.assign(rows_, 0);
    p.col_counts.assign(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (cell(i, j) == kErased) {
                ++p.row_counts[i];
                ++p.col_counts[j];
            }
    return p;
}

std::size_t MaskedMatrix::row_erasures_over(std::size_t r,
                                            std::span<const std::size_t> col_idx) const {
    std::size_t n = 0;
    for (std::size_t c : col_idx)
        if (cell(r, c) == kErased) ++n;
    return n;
}

std::size_t MaskedMatrix::col_erasures_over(std::size_t c,
                                            std::span<const std::size_t> row_idx) const {
    std::size_t n = 0;
    for (std::size_t r : row_idx)
        if (cell(r, c) == kErased) ++n;
    return n;
}

bool MaskedMatrix::agrees_with_mask(const MaskedMatrix& original) const {
    if (rows_ != original.rows_ || cols_ != original.cols_ || field_ != original.field_)
        return false;
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (original.cells_[i] != kErased && cells_[i] != original.cells_[i]) return false;
    return true;
}

MaskedMatrix MaskedMatrix::transposed() const {
    MaskedMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.cells_[j * rows_ + i] = cells_[i * cols_ + j];
    return t;
}

}  // namespace minrank
