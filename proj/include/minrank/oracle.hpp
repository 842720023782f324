#pragma once

#include <cstdint>
#include <optional>

#include "minrank/masked.hpp"

namespace minrank {

struct OracleResult {
    std::size_t min_rank = 0;
    GFMatrix witness;
    std::optional<std::uint64_t> optimum_count;  // only when counting was requested
    std::uint64_t enumerated = 0;                // q^erasure_count
};

struct OracleConfig {
    std::uint64_t budget = std::uint64_t(1) << 24;
    bool count_optima = false;
    /// Recompute the rank of every candidate from scratch instead of sharing
    /// elimination state across row prefixes. Slow; kept as the reference
    /// implementation the fast path is tested against.
    bool naive = false;
};

/// Exhaustive minimum-rank completion. Exact by construction: if q^erasures
/// exceeds the budget the call refuses (Errc::budget) rather than truncate.
/// The witness is the first minimum in odometer order over the erased
/// positions (row-major positions, last position cycling fastest).
OracleResult oracle_min_rank(const MaskedMatrix& m, const OracleConfig& cfg = {});

}  // namespace minrank
