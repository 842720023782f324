#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "minrank/masked.hpp"
#include "minrank/search.hpp"

namespace minrank {

enum class Direction { horizontal, vertical };

inline Direction flipped(Direction d) {
    return d == Direction::horizontal ? Direction::vertical : Direction::horizontal;
}

/// Decision-tree node: a partial completion, its complete sub-matrix with
/// rank, and the direction of the next projection pass. `id` is the creation
/// order and is the deterministic tie-breaker everywhere.
struct Branch {
    MaskedMatrix matrix;
    SubmatrixIndex sub;
    std::size_t rank = 0;
    Direction direction = Direction::horizontal;
    std::uint64_t id = 0;
};

/// Exact fraction; branch metrics are compared without floating point so
/// that expansion order is reproducible.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return den == 0 ? 0.0 : double(num) / double(den); }

    friend bool operator<(const Rational& a, const Rational& b) {
        return (unsigned __int128)a.num * b.den < (unsigned __int128)b.num * a.den;
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return (unsigned __int128)a.num * b.den == (unsigned __int128)b.num * a.den;
    }
};

/// Completion percentage divided by rank; branches with higher metric are
/// expanded first and survive pruning. Rank 0 uses divisor 1 to keep the
/// metric finite.
Rational branch_metric(const Branch& branch);

inline constexpr std::uint64_t kNoPruning = std::numeric_limits<std::uint64_t>::max();

enum class InitialDirection { smaller_frontier, horizontal, vertical };

struct TreeConfig {
    std::uint64_t prune_threshold = kNoPruning;  // max live branches
    std::uint64_t seed = 0;
    std::size_t algo1_iters = 100;  // stall limit for the sub-matrix search
    InitialDirection initial_direction = InitialDirection::smaller_frontier;
    unsigned threads = 1;
};

struct TreeStats {
    std::size_t initial_rank = 0;  // rank of the Algorithm-1 sub-matrix
    std::uint64_t branches_created = 0;
    std::uint64_t branches_closed = 0;
    std::uint64_t branches_eliminated = 0;
    std::uint64_t branches_pruned = 0;
    std::uint64_t prune_events = 0;
    std::uint64_t expansions = 0;
    std::uint64_t projections = 0;  // individual line projections solved
    unsigned restarts = 0;
    std::uint64_t seed = 0;
    std::uint64_t wall_ms = 0;
};

struct CompletionResult {
    GFMatrix completed;
    std::size_t achieved_rank = 0;
    TreeStats stats;
};

/// One projection pass over the branch. Outcomes:
///  - every line outside the sub-matrix projects uniquely -> one child with
///    all unique lines filled and folded in, direction flipped;
///  - some line cannot fit the span -> rank must increase; the branch is
///    eliminated when rank+1 >= rank_bound, otherwise one child per filling
///    of the cheapest infeasible line, each at rank+1;
///  - otherwise every line has multiple solutions -> one child per
///    enumerated completion of the line with fewest solutions.
struct Expansion {
    bool eliminated = false;
    std::vector<Branch> children;
    std::uint64_t projections = 0;
};

Expansion expand_branch(const Branch& branch, std::size_t rank_bound, unsigned threads = 1);

/// Keep the top prune_threshold branches by metric (ties: oldest id first).
/// Returns survivors in ascending id order; `dropped` reports how many were
/// cut, when non-null.
std::vector<Branch> prune(std::vector<Branch> live, const TreeConfig& cfg,
                          std::uint64_t* dropped = nullptr);

/// Best-first decision-tree search for a minimum-rank completion. Returns
/// the best completion closed by the search; deterministic for a fixed
/// (input, seed, threshold). Unpruned searches always terminate with a
/// completion; under pruning the engine retries once with a doubled
/// threshold and then reports Errc::exhausted.
CompletionResult complete_min_rank(const MaskedMatrix& m, const TreeConfig& cfg);

}  // namespace minrank
