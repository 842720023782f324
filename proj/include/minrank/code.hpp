#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "minrank/linalg.hpp"
#include "minrank/matrix.hpp"

namespace minrank {

/// Linear block code spanned by the rows of a complete sub-matrix. The
/// generator is kept in RREF; the parity-check rows span the right nullspace
/// of the generator, so G H^T = 0 by construction even when the pivots are
/// not the leading columns.
struct LinearCode {
    GFMatrix generator;                   // k x m, RREF, full row rank
    GFMatrix parity;                      // (m - k) x m, full row rank
    std::vector<std::size_t> pivot_cols;  // k pivot positions of the generator

    std::size_t dim() const noexcept { return generator.rows(); }
    std::size_t length() const noexcept { return generator.cols(); }
};

LinearCode build_code(const GFMatrix& complete_sub);

/// Partially known vector: value in 0..q-1, or -1 for erased.
using PartialVec = std::vector<std::int16_t>;

/// Result of constraining a partially erased vector to lie in the code:
/// the affine set of assignments to the erased positions that satisfy every
/// parity constraint together with the known entries.
class ProjectionOutcome {
public:
    ProjectionOutcome(PartialVec partial, std::vector<std::size_t> erased_positions,
                      AffineSolutionSet solutions)
        : partial_(std::move(partial)),
          erased_positions_(std::move(erased_positions)),
          solutions_(std::move(solutions)) {}

    bool infeasible() const noexcept { return solutions_.empty(); }
    bool unique() const noexcept { return !solutions_.empty() && solutions_.dimension() == 0; }

    const AffineSolutionSet& solutions() const noexcept { return solutions_; }
    const std::vector<std::size_t>& erased_positions() const noexcept {
        return erased_positions_;
    }

    /// q^d completions, 0 when infeasible; computed without enumerating.
    std::uint64_t solution_count() const noexcept { return solutions_.count(); }

    /// index-th full-length completion (known entries merged with the
    /// index-th solution over the erased positions).
    std::vector<std::uint8_t> completion(std::uint64_t index) const;

private:
    PartialVec partial_;
    std::vector<std::size_t> erased_positions_;
    AffineSolutionSet solutions_;
};

/// Solve parity * x^T = 0 with x fixed at the known entries of `partial`;
/// the unknowns are exactly the erased positions.
ProjectionOutcome project_vector(const LinearCode& code, std::span<const std::int16_t> partial);

inline std::uint64_t solution_count(const ProjectionOutcome& outcome) {
    return outcome.solution_count();
}

}  // namespace minrank
