#pragma once

#include <cstdint>

#include "minrank/masked.hpp"

namespace minrank {

struct SearchConfig {
    /// Iterations without an accepted change before the search stops.
    std::size_t stall_limit = 100;
    std::uint64_t seed = 0;
};

/// Randomized iterative search for a maximal complete sub-matrix of highest
/// rank. Starts from (all rows, no columns), alternates row-set and
/// column-set improvement with probability driven by the current set sizes,
/// and accepts a candidate only on a strict rank increase. A deterministic
/// greedy post-pass then absorbs every row/column that can join without
/// breaking completeness, so the returned sets are maximal. Deterministic
/// for a fixed (matrix, seed, stall_limit).
SubmatrixIndex find_max_complete_submatrix(const MaskedMatrix& m, const SearchConfig& cfg);

}  // namespace minrank
