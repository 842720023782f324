#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "minrank/matrix.hpp"

namespace minrank {

struct RrefResult {
    GFMatrix matrix;
    std::vector<std::size_t> pivot_cols;  // ascending
};

/// Row-space dimension over GF(q). For q=2 rows are packed into 64-bit words
/// and eliminated with XOR; larger fields use byte elimination with the
/// precomputed inverse table.
std::size_t mat_rank(const GFMatrix& m);

/// Unique reduced row echelon form. Pivot selection is the first row with a
/// nonzero entry in the current column, so the result is deterministic.
RrefResult rref(const GFMatrix& m);

/// Basis of the right nullspace { v : m v^T = 0 }; returns cols - rank
/// vectors, one per free column of the RREF, in ascending free-column order.
std::vector<std::vector<std::uint8_t>> nullspace_basis(const GFMatrix& m);

/// Full affine solution set of a linear system. Empty when inconsistent,
/// otherwise particular + span(basis) with exactly q^dimension solutions.
class AffineSolutionSet {
public:
    static AffineSolutionSet empty_set(FieldSpec field, std::size_t unknowns) {
        return AffineSolutionSet(field, unknowns);
    }
    AffineSolutionSet(FieldSpec field, std::size_t unknowns, std::vector<std::uint8_t> particular,
                      std::vector<std::vector<std::uint8_t>> basis)
        : field_(field),
          unknowns_(unknowns),
          particular_(std::move(particular)),
          basis_(std::move(basis)) {}

    bool empty() const noexcept { return !particular_.has_value(); }
    std::size_t unknowns() const noexcept { return unknowns_; }

    /// Number of free variables; only meaningful when non-empty.
    std::size_t dimension() const noexcept { return basis_.size(); }

    const std::vector<std::uint8_t>& particular() const { return *particular_; }
    const std::vector<std::vector<std::uint8_t>>& basis() const noexcept { return basis_; }
    const FieldSpec& field() const noexcept { return field_; }

    /// q^dimension, saturating at uint64 max; 0 when empty.
    std::uint64_t count() const noexcept;

    /// index-th solution in odometer order over the free variables, lowest
    /// free position cycling fastest. Enumerating 0..count()-1 yields every
    /// solution exactly once.
    std::vector<std::uint8_t> solution(std::uint64_t index) const;

private:
    AffineSolutionSet(FieldSpec field, std::size_t unknowns) : field_(field), unknowns_(unknowns) {}

    FieldSpec field_;
    std::size_t unknowns_;
    std::optional<std::vector<std::uint8_t>> particular_;
    std::vector<std::vector<std::uint8_t>> basis_;
};

/// Solve a x = b over GF(q). Inconsistency is a value (empty set), not an
/// error. The particular solution sets all free variables to zero.
AffineSolutionSet solve_linear(const GFMatrix& a, std::span<const std::uint8_t> b);

/// q^e with saturation at uint64 max.
std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp);

}  // namespace minrank
