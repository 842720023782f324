#include "minrank/tree.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <optional>
#include <stdexcept>
#include <thread>

#include "minrank/code.hpp"
#include "minrank/error.hpp"
#include "minrank/linalg.hpp"

namespace minrank {

namespace {

// A single expansion enumerating this many children is hopeless; refuse
// loudly instead of exhausting memory.
constexpr std::uint64_t kMaxFanout = std::uint64_t(1) << 20;

std::vector<std::size_t> complement(const std::vector<std::size_t>& idx, std::size_t n) {
    std::vector<bool> in(n, false);
    for (std::size_t i : idx) in[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

void insert_sorted(std::vector<std::size_t>& v, std::size_t x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

// Branch state with the projection direction normalized away: `matrix` is
// transposed for vertical passes so the pass below always completes rows.
struct RowView {
    MaskedMatrix matrix;
    SubmatrixIndex sub;

    static RowView of(const Branch& b) {
        if (b.direction == Direction::horizontal) return {b.matrix, b.sub};
        return {b.matrix.transposed(), SubmatrixIndex{b.sub.cols, b.sub.rows, b.sub.rank}};
    }

    Branch to_branch(const Branch& parent) const {
        if (parent.direction == Direction::horizontal)
            return Branch{matrix, sub, sub.rank, flipped(parent.direction), 0};
        return Branch{matrix.transposed(), SubmatrixIndex{sub.cols, sub.rows, sub.rank},
                      sub.rank, flipped(parent.direction), 0};
    }
};

std::size_t selection_rank(const MaskedMatrix& m, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) {
    if (rows.empty() || cols.empty()) return 0;
    return mat_rank(m.gf_submatrix(rows, cols));
}

// Absorb lines that are complete over the current index sets and lie in the
// span, so the sub-matrix covers everything it can without a rank change.
void absorb_in_span(RowView& v) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t r : complement(v.sub.rows, v.matrix.rows())) {
            if (v.matrix.row_erasures_over(r, v.sub.cols) != 0) continue;
            std::vector<std::size_t> rows = v.sub.rows;
            insert_sorted(rows, r);
            if (selection_rank(v.matrix, rows, v.sub.cols) == v.sub.rank) {
                v.sub.rows = std::move(rows);
                changed = true;
            }
        }
        for (std::size_t c : complement(v.sub.cols, v.matrix.cols())) {
            if (v.matrix.col_erasures_over(c, v.sub.rows) != 0) continue;
            std::vector<std::size_t> cols = v.sub.cols;
            insert_sorted(cols, c);
            if (selection_rank(v.matrix, v.sub.rows, cols) == v.sub.rank) {
                v.sub.cols = std::move(cols);
                changed = true;
            }
        }
    }
}

// Write one enumerated solution into the view at the erased positions of
// line `row` and fold the line into the sub-matrix.
void fill_and_fold(RowView& v, std::size_t row, const ProjectionOutcome& proj,
                   std::uint64_t solution_index) {
    std::vector<std::uint8_t> fill = proj.solutions().solution(solution_index);
    const auto& erased = proj.erased_positions();
    for (std::size_t e = 0; e < erased.size(); ++e)
        v.matrix.set_value(row, v.sub.cols[erased[e]], fill[e]);
    insert_sorted(v.sub.rows, row);
}

// Fill the chosen infeasible line with the filling of the given odometer
// index (lowest erased position fastest) and fold it in at rank+1.
void fill_forced(RowView& v, std::size_t row, const std::vector<std::size_t>& erased_cols,
                 std::uint64_t odometer, std::uint8_t q) {
    std::uint64_t rest = odometer;
    for (std::size_t c : erased_cols) {
        v.matrix.set_value(row, c, std::uint8_t(rest % q));
        rest /= q;
    }
    insert_sorted(v.sub.rows, row);
    v.sub.rank += 1;
}

std::vector<std::optional<ProjectionOutcome>> project_lines(
    const RowView& v, const LinearCode& code, const std::vector<std::size_t>& lines,
    unsigned threads) {
    std::vector<std::optional<ProjectionOutcome>> out(lines.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t n = begin; n < end; ++n) {
            PartialVec partial(v.sub.cols.size());
            for (std::size_t t = 0; t < v.sub.cols.size(); ++t) {
                std::size_t c = v.sub.cols[t];
                partial[t] = v.matrix.is_erased(lines[n], c)
                                 ? MaskedMatrix::kErased
                                 : std::int16_t(v.matrix.value(lines[n], c));
            }
            out[n] = project_vector(code, partial);
        }
    };
    if (threads <= 1 || lines.size() < 2) {
        work(0, lines.size());
        return out;
    }
    std::size_t nthreads = std::min<std::size_t>(threads, lines.size());
    std::vector<std::thread> pool;
    std::size_t chunk = (lines.size() + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
        std::size_t begin = t * chunk;
        std::size_t end = std::min(lines.size(), begin + chunk);
        if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace

Rational branch_metric(const Branch& branch) {
    std::uint64_t total = std::uint64_t(branch.matrix.rows()) * branch.matrix.cols();
    std::uint64_t known = branch.matrix.known_count();
    std::uint64_t divisor = branch.rank == 0 ? 1 : branch.rank;
    return Rational{known, total * divisor};
}

Expansion expand_branch(const Branch& branch, std::size_t rank_bound, unsigned threads) {
    if (branch.matrix.complete())
        throw Error(Errc::domain, "expand_branch requires at least one erasure");

    Expansion exp;
    RowView view = RowView::of(branch);
    std::vector<std::size_t> outside = complement(view.sub.rows, view.matrix.rows());

    if (outside.empty()) {
        // Nothing to project in this direction; flip and carry on.
        exp.children.push_back(view.to_branch(branch));
        return exp;
    }

    LinearCode code = build_code(view.matrix.gf_submatrix(view.sub.rows, view.sub.cols));
    auto outcomes = project_lines(view, code, outside, threads);
    exp.projections = outside.size();

    std::vector<std::size_t> uniques, multiples, infeasibles;
    for (std::size_t n = 0; n < outside.size(); ++n) {
        const ProjectionOutcome& p = *outcomes[n];
        if (p.infeasible())
            infeasibles.push_back(n);
        else if (p.unique())
            uniques.push_back(n);
        else
            multiples.push_back(n);
    }

    if (!uniques.empty()) {
        // Case 1: complete every uniquely determined line in one child.
        RowView child = view;
        for (std::size_t n : uniques) fill_and_fold(child, outside[n], *outcomes[n], 0);
        absorb_in_span(child);
        exp.children.push_back(child.to_branch(branch));
        return exp;
    }

    if (!infeasibles.empty()) {
        // Case 3: the rank has to grow.
        if (branch.rank + 1 >= rank_bound) {
            exp.eliminated = true;
            return exp;
        }
        std::size_t pick = infeasibles[0];
        for (std::size_t n : infeasibles) {
            std::size_t en = outcomes[n]->erased_positions().size();
            std::size_t ep = outcomes[pick]->erased_positions().size();
            if (en < ep || (en == ep && outside[n] < outside[pick])) pick = n;
        }
        std::vector<std::size_t> erased_cols;
        for (std::size_t e : outcomes[pick]->erased_positions())
            erased_cols.push_back(view.sub.cols[e]);
        std::uint64_t fillings = pow_saturating(view.matrix.field().q(), erased_cols.size());
        if (fillings > kMaxFanout)
            throw Error(Errc::budget, "rank-increment fan-out of " + std::to_string(fillings) +
                                          " branches exceeds engine capacity");
        for (std::uint64_t t = 0; t < fillings; ++t) {
            RowView child = view;
            fill_forced(child, outside[pick], erased_cols, t, view.matrix.field().q());
            absorb_in_span(child);
            exp.children.push_back(child.to_branch(branch));
        }
        return exp;
    }

    // Case 2: branch on the line with the fewest solutions.
    std::size_t pick = multiples[0];
    for (std::size_t n : multiples) {
        std::size_t dn = outcomes[n]->solutions().dimension();
        std::size_t dp = outcomes[pick]->solutions().dimension();
        std::size_t en = outcomes[n]->erased_positions().size();
        std::size_t ep = outcomes[pick]->erased_positions().size();
        if (dn < dp || (dn == dp && (en < ep || (en == ep && outside[n] < outside[pick]))))
            pick = n;
    }
    std::uint64_t count = outcomes[pick]->solution_count();
    if (count > kMaxFanout)
        throw Error(Errc::budget, "projection fan-out of " + std::to_string(count) +
                                      " branches exceeds engine capacity");
    for (std::uint64_t t = 0; t < count; ++t) {
        RowView child = view;
        fill_and_fold(child, outside[pick], *outcomes[pick], t);
        absorb_in_span(child);
        exp.children.push_back(child.to_branch(branch));
    }
    return exp;
}

std::vector<Branch> prune(std::vector<Branch> live, const TreeConfig& cfg,
                          std::uint64_t* dropped) {
    if (dropped) *dropped = 0;
    if (live.size() <= cfg.prune_threshold) return live;

    std::vector<std::size_t> order(live.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        Rational ma = branch_metric(live[a]);
        Rational mb = branch_metric(live[b]);
        if (ma == mb) return live[a].id < live[b].id;
        return mb < ma;
    });
    order.resize(cfg.prune_threshold);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return live[a].id < live[b].id; });

    std::vector<Branch> kept;
    kept.reserve(order.size());
    for (std::size_t i : order) kept.push_back(std::move(live[i]));
    if (dropped) *dropped = live.size() - kept.size();
    return kept;
}

namespace {

struct Incumbent {
    GFMatrix completed;
    std::size_t rank;
};

Direction pick_initial_direction(const MaskedMatrix& m, InitialDirection policy) {
    if (policy == InitialDirection::horizontal) return Direction::horizontal;
    if (policy == InitialDirection::vertical) return Direction::vertical;
    auto profile = m.erasure_profile();
    std::size_t inc_rows = 0, inc_cols = 0;
    for (std::size_t e : profile.row_counts) inc_rows += e > 0;
    for (std::size_t e : profile.col_counts) inc_cols += e > 0;
    return inc_rows <= inc_cols ? Direction::horizontal : Direction::vertical;
}

// Frontier entry with the metric cached; a branch's metric never changes
// after creation, so comparisons stay O(1).
struct Entry {
    Rational metric;
    Branch branch;
};

// Max-heap order: highest metric first, oldest id on ties.
struct EntryLess {
    bool operator()(const Entry& a, const Entry& b) const {
        if (a.metric == b.metric) return a.branch.id > b.branch.id;
        return a.metric < b.metric;
    }
};

std::optional<Incumbent> run_tree(const MaskedMatrix& m, const TreeConfig& cfg,
                                  std::uint64_t threshold, TreeStats& stats) {
    SubmatrixIndex sub0 =
        find_max_complete_submatrix(m, SearchConfig{cfg.algo1_iters, cfg.seed});
    stats.initial_rank = sub0.rank;

    std::size_t dim_bound = std::min(m.rows(), m.cols());
    std::uint64_t bound = dim_bound;  // minimum achieved rank so far
    std::optional<Incumbent> incumbent;

    // Before any branch closes there is no incumbent to tie against, so only
    // impossible ranks (> min(a,b)) are cut; afterwards a branch that can at
    // best tie is dropped.
    auto rank_bound = [&]() -> std::size_t {
        return incumbent ? std::size_t(bound) : dim_bound + 1;
    };

    std::uint64_t next_id = 0;
    std::vector<Entry> live;
    EntryLess less;
    auto push = [&](Branch&& b) {
        live.push_back(Entry{branch_metric(b), std::move(b)});
        std::push_heap(live.begin(), live.end(), less);
    };

    push(Branch{m, sub0, sub0.rank, pick_initial_direction(m, cfg.initial_direction),
                next_id++});
    stats.branches_created += 1;

    // Bound drops are rare (at most min(a,b)+1 per run), so the frontier is
    // swept eagerly there; pruning must not see already-dead branches.
    auto sweep = [&]() {
        if (!incumbent) return;
        std::size_t before = live.size();
        std::erase_if(live, [&](const Entry& e) { return e.branch.rank >= bound; });
        if (live.size() != before) {
            stats.branches_eliminated += before - live.size();
            std::make_heap(live.begin(), live.end(), less);
        }
    };

    while (!live.empty()) {
        std::pop_heap(live.begin(), live.end(), less);
        Branch branch = std::move(live.back().branch);
        live.pop_back();

        if (incumbent && branch.rank >= bound) {
            stats.branches_eliminated += 1;
            continue;
        }

        Expansion exp = expand_branch(branch, rank_bound(), cfg.threads);
        stats.expansions += 1;
        stats.projections += exp.projections;
        if (exp.eliminated) {
            stats.branches_eliminated += 1;
            continue;
        }

        for (Branch& child : exp.children) {
            child.id = next_id++;
            stats.branches_created += 1;
            if (child.matrix.complete()) {
                GFMatrix done = child.matrix.to_gf();
                std::size_t r = mat_rank(done);
                stats.branches_closed += 1;
                if (!incumbent || r < incumbent->rank) incumbent = Incumbent{done, r};
                if (r < bound) bound = r;
                sweep();
            } else {
                push(std::move(child));
            }
        }

        if (live.size() > threshold) {
            TreeConfig pruned_cfg = cfg;
            pruned_cfg.prune_threshold = threshold;
            std::uint64_t dropped = 0;
            std::vector<Branch> extracted;
            extracted.reserve(live.size());
            for (Entry& e : live) extracted.push_back(std::move(e.branch));
            std::vector<Branch> kept = prune(std::move(extracted), pruned_cfg, &dropped);
            live.clear();
            for (Branch& b : kept) live.push_back(Entry{branch_metric(b), std::move(b)});
            std::make_heap(live.begin(), live.end(), less);
            stats.branches_pruned += dropped;
            stats.prune_events += 1;
        }
    }
    return incumbent;
}

}  // namespace

CompletionResult complete_min_rank(const MaskedMatrix& m, const TreeConfig& cfg) {
    if (m.rows() == 0 || m.cols() == 0)
        throw Error(Errc::domain, "cannot complete an empty matrix");

    auto t0 = std::chrono::steady_clock::now();
    TreeStats stats;
    stats.seed = cfg.seed;

    if (m.complete()) {
        GFMatrix done = m.to_gf();
        std::size_t r = mat_rank(done);
        stats.initial_rank = r;
        stats.wall_ms = std::uint64_t(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count());
        return CompletionResult{std::move(done), r, stats};
    }

    std::uint64_t threshold = cfg.prune_threshold;
    std::optional<Incumbent> found;
    for (int attempt = 0;; ++attempt) {
        found = run_tree(m, cfg, threshold, stats);
        if (found) break;
        if (attempt == 0 && threshold != kNoPruning) {
            // One retry with a doubled threshold before giving up.
            threshold = threshold > kNoPruning / 2 ? kNoPruning : threshold * 2;
            stats.restarts += 1;
            continue;
        }
        throw Error(Errc::exhausted,
                    "no completion found under pruning (threshold " +
                        std::to_string(cfg.prune_threshold) + ", branches created " +
                        std::to_string(stats.branches_created) + ", pruned " +
                        std::to_string(stats.branches_pruned) + ")");
    }

    CompletionResult result{std::move(found->completed), found->rank, stats};
    result.stats.wall_ms = std::uint64_t(std::chrono::duration_cast<std::chrono::milliseconds>(
                                             std::chrono::steady_clock::now() - t0)
                                             .count());

    // Engine self-check: the answer must respect the mask and its rank.
    if (!MaskedMatrix::from_gf(result.completed).agrees_with_mask(m) ||
        mat_rank(result.completed) != result.achieved_rank)
        throw std::logic_error("completion soundness violation");
    return result;
}

}  // namespace minrank
