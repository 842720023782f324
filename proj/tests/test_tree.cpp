#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "minrank/error.hpp"
#include "minrank/linalg.hpp"
#include "minrank/oracle.hpp"
#include "minrank/tree.hpp"
#include "support.hpp"

using namespace minrank;
using testsupport::kDemandMatrixText;

namespace {

Branch make_branch(MaskedMatrix m, std::vector<std::size_t> rows, std::vector<std::size_t> cols,
                   Direction dir, std::uint64_t id = 0) {
    std::size_t rank =
        rows.empty() || cols.empty() ? 0 : mat_rank(m.gf_submatrix(rows, cols));
    return Branch{std::move(m), SubmatrixIndex{std::move(rows), std::move(cols), rank}, rank,
                  dir, id};
}

}  // namespace

TEST_CASE("branch_metric: worked values and monotonicity") {
    FieldSpec f2(2);
    auto full = MaskedMatrix::parse("1 1 0 0 1\n1 1 1 1 0\n0 0 1 1 1\n0 0 1 1 1\n1 1 0 0 1", f2);
    Branch b1 = make_branch(full, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, Direction::horizontal);
    REQUIRE(b1.rank == 2);
    CHECK(branch_metric(b1).value() == doctest::Approx(0.5));

    auto demand = MaskedMatrix::parse(kDemandMatrixText, f2);
    Branch b2 = make_branch(demand, {0, 2}, {0, 2, 3}, Direction::horizontal);
    REQUIRE(b2.rank == 2);
    CHECK(branch_metric(b2).value() == doctest::Approx(0.3));

    // Same completion state, higher rank scores lower.
    Branch b3 = b1;
    b3.rank = 3;
    CHECK(branch_metric(b3) < branch_metric(b1));

    // Rank 0 stays finite.
    MaskedMatrix blank(f2, 2, 2);
    Branch b4{blank, SubmatrixIndex{{0, 1}, {}, 0}, 0, Direction::horizontal, 0};
    CHECK(branch_metric(b4).value() == doctest::Approx(0.0));
}

TEST_CASE("expand_branch: fixture branch completes the forced row (case 1)") {
    FieldSpec f2(2);
    auto demand = MaskedMatrix::parse(kDemandMatrixText, f2);
    Branch b = make_branch(demand, {0, 2}, {0, 2, 3}, Direction::horizontal);
    REQUIRE(b.rank == 2);

    // Code over columns {1,3,4}: span{(1,0,0),(0,1,1)}. Projecting the three
    // outside rows: row 2 is fully erased there (4 solutions), row 4 is
    // forced to (0,1,1), row 5 is free in its first position (2 solutions).
    // Hand-checked against the parity constraint x2 + x3 = 0 on that code.
    Expansion exp = expand_branch(b, 99);
    CHECK(!exp.eliminated);
    CHECK(exp.projections == 3);
    REQUIRE(exp.children.size() == 1);
    const Branch& child = exp.children[0];
    CHECK(child.direction == Direction::vertical);
    CHECK(child.rank == 2);
    CHECK(child.matrix.value(3, 2) == 1);  // the forced fill
    CHECK(child.sub.rows == std::vector<std::size_t>{0, 2, 3});
    CHECK(child.sub.cols == std::vector<std::size_t>{0, 2, 3});
    CHECK(child.matrix.agrees_with_mask(demand));
}

TEST_CASE("expand_branch: single forced row yields one flipped child") {
    FieldSpec f2(2);
    auto m = MaskedMatrix::parse("1 1\nX 1", f2);
    Branch b = make_branch(m, {0}, {0, 1}, Direction::horizontal);
    REQUIRE(b.rank == 1);
    Expansion exp = expand_branch(b, 99);
    REQUIRE(exp.children.size() == 1);
    CHECK(exp.children[0].matrix.complete());
    CHECK(exp.children[0].matrix.value(1, 0) == 1);
    CHECK(exp.children[0].rank == 1);
    CHECK(exp.children[0].direction == Direction::vertical);
}

TEST_CASE("expand_branch: case 3 honors the rank bound") {
    FieldSpec f2(2);
    auto m = MaskedMatrix::parse("1 0\nX 1", f2);
    Branch b = make_branch(m, {0}, {0, 1}, Direction::horizontal);
    REQUIRE(b.rank == 1);

    // Row 2 violates x2 = 0, so the rank must reach 2.
    Expansion cut = expand_branch(b, 2);  // k+1 >= bound: eliminated
    CHECK(cut.eliminated);

    Expansion ok = expand_branch(b, 3);
    CHECK(!ok.eliminated);
    REQUIRE(ok.children.size() == 2);  // q^e with one erased cell
    for (const Branch& c : ok.children) {
        CHECK(c.rank == 2);
        CHECK(c.matrix.complete());
        CHECK(mat_rank(c.matrix.to_gf()) == 2);
    }
}

TEST_CASE("expand_branch: case-3 fanout is q^erasures of the chosen line") {
    FieldSpec f2(2);
    // Sub-matrix spans only the zero word on columns {1,2}; row 2 has a 1 in
    // column 3, which is outside the span of the all-zero code over {1,2,3}.
    auto m = MaskedMatrix::parse("0 0 0\nX X 1", f2);
    Branch b = make_branch(m, {0}, {0, 1, 2}, Direction::horizontal);
    REQUIRE(b.rank == 0);
    Expansion exp = expand_branch(b, 99);
    CHECK(!exp.eliminated);
    CHECK(exp.children.size() == 4);  // two erased cells
    for (const Branch& c : exp.children) CHECK(c.rank == 1);
}

TEST_CASE("expand_branch: case 2 enumerates the smallest solution set") {
    FieldSpec f2(2);
    // Code over both columns spans {00, 11}; both rows below are fully
    // erased (2 solutions each), so branching picks row 2 (lowest index).
    auto m = MaskedMatrix::parse("1 1\nX X\nX X", f2);
    Branch b = make_branch(m, {0}, {0, 1}, Direction::horizontal);
    Expansion exp = expand_branch(b, 99);
    REQUIRE(exp.children.size() == 2);
    for (const Branch& c : exp.children) {
        CHECK(c.rank == 1);
        CHECK(c.direction == Direction::vertical);
        // Chosen line folded in.
        CHECK(c.sub.rows == std::vector<std::size_t>{0, 1});
        bool zeros = c.matrix.value(1, 0) == 0 && c.matrix.value(1, 1) == 0;
        bool ones = c.matrix.value(1, 0) == 1 && c.matrix.value(1, 1) == 1;
        CHECK((zeros || ones));
    }
}

TEST_CASE("prune keeps the best metrics, oldest first on ties") {
    FieldSpec f2(2);
    auto mk = [&](std::size_t known, std::uint64_t id) {
        MaskedMatrix m(f2, 5, 5);  // start all erased
        for (std::size_t i = 0; i < known; ++i) m.set_value(i / 5, i % 5, 1);
        Branch b{m, SubmatrixIndex{{}, {}, 0}, 1, Direction::horizontal, id};
        return b;
    };
    std::vector<Branch> live;
    live.push_back(mk(25, 0));  // metric 1.0
    live.push_back(mk(15, 1));  // 0.6
    live.push_back(mk(10, 2));  // 0.4
    TreeConfig cfg;
    cfg.prune_threshold = 2;
    std::uint64_t dropped = 0;
    auto kept = prune(std::move(live), cfg, &dropped);
    CHECK(dropped == 1);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].id == 0);
    CHECK(kept[1].id == 1);

    // Threshold larger than the population: identity.
    std::vector<Branch> live2;
    live2.push_back(mk(25, 0));
    TreeConfig loose;
    loose.prune_threshold = kNoPruning;
    CHECK(prune(std::move(live2), loose).size() == 1);

    // Ties broken by creation order.
    std::vector<Branch> live3;
    live3.push_back(mk(10, 5));
    live3.push_back(mk(10, 3));
    live3.push_back(mk(10, 9));
    TreeConfig two;
    two.prune_threshold = 2;
    auto kept3 = prune(std::move(live3), two);
    REQUIRE(kept3.size() == 2);
    CHECK(kept3[0].id == 3);
    CHECK(kept3[1].id == 5);
}

TEST_CASE("complete_min_rank: fixture solves to rank 2") {
    FieldSpec f2(2);
    auto demand = MaskedMatrix::parse(kDemandMatrixText, f2);
    TreeConfig cfg;
    auto res = complete_min_rank(demand, cfg);
    CHECK(res.achieved_rank == 2);
    CHECK(MaskedMatrix::from_gf(res.completed).agrees_with_mask(demand));
    CHECK(mat_rank(res.completed) == 2);
    CHECK(res.stats.branches_created >= 1);

    // The all-ones filling is one of the valid rank-2 completions.
    auto allones = GFMatrix::from_rows(f2, {{1, 1, 0, 0, 1},
                                            {1, 1, 1, 1, 0},
                                            {0, 0, 1, 1, 1},
                                            {0, 0, 1, 1, 1},
                                            {1, 1, 0, 0, 1}});
    CHECK(MaskedMatrix::from_gf(allones).agrees_with_mask(demand));
    CHECK(mat_rank(allones) == 2);
}

TEST_CASE("complete_min_rank: degenerate inputs") {
    FieldSpec f2(2);
    auto id3 = MaskedMatrix::from_gf(GFMatrix::identity(f2, 3));
    auto res = complete_min_rank(id3, TreeConfig{});
    CHECK(res.achieved_rank == 3);
    CHECK(res.stats.projections == 0);

    MaskedMatrix blank(f2, 2, 2);
    auto res2 = complete_min_rank(blank, TreeConfig{});
    CHECK(res2.achieved_rank == 0);
    CHECK(res2.completed == GFMatrix(f2, 2, 2));

    // Minimum rank equal to min(a,b) must still close.
    auto forced = MaskedMatrix::parse("1 X\n0 1", f2);
    auto res3 = complete_min_rank(forced, TreeConfig{});
    CHECK(res3.achieved_rank == 2);

    auto rank1 = MaskedMatrix::parse("1 X\nX 1", f2);
    CHECK(complete_min_rank(rank1, TreeConfig{}).achieved_rank == 1);
}

TEST_CASE("unpruned engine matches the oracle on random instances") {
    std::mt19937_64 gen(53);
    int agree = 0, total = 0;
    for (int it = 0; it < 60; ++it) {
        FieldSpec f2(2);
        std::size_t n = it % 2 ? 4 : 5;
        auto m = testsupport::random_masked(gen, f2, n, n, 6 + gen() % 7);
        TreeConfig cfg;
        cfg.seed = gen();
        auto res = complete_min_rank(m, cfg);
        auto oracle = oracle_min_rank(m);
        CHECK(res.achieved_rank >= oracle.min_rank);
        CHECK(MaskedMatrix::from_gf(res.completed).agrees_with_mask(m));
        CHECK(mat_rank(res.completed) == res.achieved_rank);
        agree += res.achieved_rank == oracle.min_rank;
        ++total;
    }
    // The search is heuristic; near-exactness is measured, not assumed.
    CHECK(double(agree) >= 0.95 * double(total));
}

TEST_CASE("gf(3) instances are handled too") {
    std::mt19937_64 gen(59);
    FieldSpec f3(3);
    for (int it = 0; it < 15; ++it) {
        auto m = testsupport::random_masked(gen, f3, 3, 3, 2 + gen() % 4);
        auto res = complete_min_rank(m, TreeConfig{});
        auto oracle = oracle_min_rank(m);
        CHECK(res.achieved_rank >= oracle.min_rank);
        CHECK(mat_rank(res.completed) == res.achieved_rank);
    }
}

TEST_CASE("determinism: identical seeds give identical runs") {
    std::mt19937_64 gen(61);
    FieldSpec f2(2);
    for (int it = 0; it < 10; ++it) {
        auto m = testsupport::random_masked(gen, f2, 5, 5, 8 + gen() % 5);
        TreeConfig cfg;
        cfg.seed = 17 + it;
        auto a = complete_min_rank(m, cfg);
        auto b = complete_min_rank(m, cfg);
        CHECK(a.completed == b.completed);
        CHECK(a.achieved_rank == b.achieved_rank);
        CHECK(a.stats.branches_created == b.stats.branches_created);
        CHECK(a.stats.projections == b.stats.projections);
        CHECK(a.stats.branches_pruned == b.stats.branches_pruned);
    }
}

TEST_CASE("threads only parallelize projections; results are unchanged") {
    std::mt19937_64 gen(67);
    FieldSpec f2(2);
    for (int it = 0; it < 6; ++it) {
        auto m = testsupport::random_masked(gen, f2, 6, 6, 12 + gen() % 8);
        TreeConfig one;
        one.seed = 5;
        TreeConfig four = one;
        four.threads = 4;
        auto a = complete_min_rank(m, one);
        auto b = complete_min_rank(m, four);
        CHECK(a.completed == b.completed);
        CHECK(a.achieved_rank == b.achieved_rank);
        CHECK(a.stats.branches_created == b.stats.branches_created);
    }
}

TEST_CASE("pruning trades rank for speed but never soundness") {
    std::mt19937_64 gen(71);
    FieldSpec f2(2);
    for (int it = 0; it < 8; ++it) {
        auto m = testsupport::random_masked(gen, f2, 6, 6, 18 + gen() % 6);
        TreeConfig unpruned;
        unpruned.seed = 100 + it;
        TreeConfig tight = unpruned;
        tight.prune_threshold = 2;
        auto a = complete_min_rank(m, unpruned);
        auto b = complete_min_rank(m, tight);
        CHECK(a.achieved_rank <= b.achieved_rank);
        CHECK(MaskedMatrix::from_gf(b.completed).agrees_with_mask(m));
        CHECK(mat_rank(b.completed) == b.achieved_rank);
    }
}
