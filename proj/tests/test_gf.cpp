#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "minrank/error.hpp"
#include "minrank/linalg.hpp"
#include "support.hpp"

using namespace minrank;

TEST_CASE("field construction accepts primes and rejects the rest") {
    for (unsigned q : {2u, 3u, 5u, 7u, 11u, 251u}) CHECK(FieldSpec(q).q() == q);
    for (unsigned q : {0u, 1u, 4u, 6u, 9u, 100u, 252u, 256u})
        CHECK_THROWS_AS(FieldSpec{q}, Error);
}

TEST_CASE("field arithmetic basics") {
    FieldSpec f2(2), f3(3), f5(5);
    CHECK(f2.add(1, 1) == 0);
    CHECK(f5.inv(2) == 3);
    CHECK(f5.mul(2, f5.inv(2)) == 1);
    CHECK(f3.sub(0, 1) == 2);
    CHECK_THROWS_WITH_AS(f5.inv(0), "zero has no inverse", Error);

    // inv(x) * x == 1 across whole fields
    for (unsigned q : {2u, 3u, 5u, 7u, 13u, 251u}) {
        FieldSpec f(q);
        for (unsigned x = 1; x < q; ++x) CHECK(f.mul(std::uint8_t(x), f.inv(std::uint8_t(x))) == 1);
    }
}

TEST_CASE("rank of known matrices") {
    FieldSpec f2(2), f3(3);
    // All erasures of the demand matrix set to 1.
    GFMatrix demand = GFMatrix::from_rows(f2, {{1, 1, 0, 0, 1},
                                            {1, 1, 1, 1, 0},
                                            {0, 0, 1, 1, 1},
                                            {0, 0, 1, 1, 1},
                                            {1, 1, 0, 0, 1}});
    CHECK(mat_rank(demand) == 2);
    CHECK(mat_rank(GFMatrix::identity(f2, 4)) == 4);
    CHECK(mat_rank(GFMatrix(f3, 3, 5)) == 0);
}

TEST_CASE("rank is invariant under transposition and row permutation") {
    std::mt19937_64 gen(7);
    for (int it = 0; it < 100; ++it) {
        FieldSpec f(it % 2 == 0 ? 2 : 5);
        auto m = testsupport::random_gf(gen, f, 1 + gen() % 6, 1 + gen() % 6);
        CHECK(mat_rank(m) == mat_rank(m.transposed()));
        CHECK(mat_rank(m) == mat_rank(rref(m).matrix));
    }
}

TEST_CASE("rref worked examples") {
    FieldSpec f2(2), f5(5);

    auto r1 = rref(GFMatrix::from_rows(f2, {{0, 1}, {1, 0}}));
    CHECK(r1.matrix == GFMatrix::identity(f2, 2));
    CHECK(r1.pivot_cols == std::vector<std::size_t>{0, 1});

    // Already reduced, pivots at columns 1 and 3 (1-based).
    auto m2 = GFMatrix::from_rows(f2, {{1, 1, 0, 0, 1}, {0, 0, 1, 1, 1}});
    auto r2 = rref(m2);
    CHECK(r2.matrix == m2);
    CHECK(r2.pivot_cols == std::vector<std::size_t>{0, 2});

    // Second row is 3 * first over GF(5).
    auto r3 = rref(GFMatrix::from_rows(f5, {{2, 4}, {1, 2}}));
    CHECK(r3.matrix == GFMatrix::from_rows(f5, {{1, 2}, {0, 0}}));
    CHECK(r3.pivot_cols == std::vector<std::size_t>{0});
    // Row spaces agree: brute-force enumeration of both spans.
    CHECK(testsupport::enumerate_rowspan(GFMatrix::from_rows(f5, {{2, 4}, {1, 2}})) ==
          testsupport::enumerate_rowspan(r3.matrix));
}

TEST_CASE("rref is idempotent and canonical for row-equivalent matrices") {
    std::mt19937_64 gen(11);
    for (int it = 0; it < 200; ++it) {
        FieldSpec f(it % 3 == 0 ? 5 : (it % 3 == 1 ? 3 : 2));
        std::size_t rows = 1 + gen() % 5, cols = 1 + gen() % 5;
        auto m = testsupport::random_gf(gen, f, rows, cols);
        auto r = rref(m);
        CHECK(rref(r.matrix).matrix == r.matrix);
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < r.matrix.rows(); ++i) {
            bool any = false;
            for (std::size_t j = 0; j < cols; ++j) any |= r.matrix(i, j) != 0;
            nonzero += any;
        }
        CHECK(nonzero == mat_rank(m));

        // A random row-operation image must reduce to the same RREF.
        GFMatrix shuffled = m;
        for (int k = 0; k < 4; ++k) {
            std::size_t src = gen() % rows, dst = gen() % rows;
            if (src == dst) continue;
            std::uint8_t c = std::uint8_t(1 + gen() % (f.q() - 1));
            GFMatrix next = shuffled;
            for (std::size_t j = 0; j < cols; ++j)
                next.set(dst, j, f.add(shuffled(dst, j), f.mul(c, shuffled(src, j))));
            shuffled = next;
        }
        CHECK(rref(shuffled).matrix == r.matrix);
    }
}

TEST_CASE("nullspace: worked example and dimension property") {
    FieldSpec f2(2);
    auto g = GFMatrix::from_rows(f2, {{1, 1, 0, 0, 1}, {0, 0, 1, 1, 1}});
    auto basis = nullspace_basis(g);
    REQUIRE(basis.size() == 3);
    // Spans the constraints x1+x2 = 0, x3+x4 = 0, x1+x3+x5 = 0.
    auto expected = GFMatrix::from_rows(f2, {{1, 1, 0, 0, 0}, {0, 0, 1, 1, 0}, {1, 0, 1, 0, 1}});
    auto got = GFMatrix::from_row_vectors(f2, basis, 5);
    CHECK(rref(got).matrix == rref(expected).matrix);

    CHECK(nullspace_basis(GFMatrix::identity(f2, 4)).empty());
    CHECK(nullspace_basis(GFMatrix(f2, 1, 3)).size() == 3);
}

TEST_CASE("nullspace vectors annihilate and complete the rank") {
    std::mt19937_64 gen(13);
    for (int it = 0; it < 200; ++it) {
        FieldSpec f(it % 2 ? 3 : 2);
        auto m = testsupport::random_gf(gen, f, 1 + gen() % 5, 1 + gen() % 6);
        auto basis = nullspace_basis(m);
        CHECK(mat_rank(m) + basis.size() == m.cols());
        for (const auto& v : basis) {
            auto mv = m.mul_vec(v);
            for (std::uint8_t x : mv) CHECK(x == 0);
        }
        if (!basis.empty())
            CHECK(mat_rank(GFMatrix::from_row_vectors(f, basis, m.cols())) == basis.size());
    }
}

TEST_CASE("solve_linear worked examples") {
    FieldSpec f2(2);
    auto s1 = solve_linear(GFMatrix::identity(f2, 2), std::vector<std::uint8_t>{1, 0});
    REQUIRE(!s1.empty());
    CHECK(s1.dimension() == 0);
    CHECK(s1.particular() == std::vector<std::uint8_t>{1, 0});

    auto s2 = solve_linear(GFMatrix::from_rows(f2, {{1, 1}}), std::vector<std::uint8_t>{1});
    REQUIRE(!s2.empty());
    CHECK(s2.dimension() == 1);
    CHECK(s2.count() == 2);
    CHECK(s2.particular() == std::vector<std::uint8_t>{1, 0});

    auto s3 = solve_linear(GFMatrix::from_rows(f2, {{1, 1}, {1, 1}}),
                           std::vector<std::uint8_t>{0, 1});
    CHECK(s3.empty());
    CHECK(s3.count() == 0);
}

TEST_CASE("solve_linear equals exhaustive search over all vectors") {
    std::mt19937_64 gen(17);
    for (int it = 0; it < 300; ++it) {
        unsigned q = it % 3 == 0 ? 5 : (it % 3 == 1 ? 3 : 2);
        FieldSpec f(q);
        std::size_t rows = 1 + gen() % 4;
        // Keep the brute-force space q^cols around a few thousand per case.
        std::size_t max_cols = q == 2 ? 12 : (q == 3 ? 8 : 6);
        std::size_t cols = 1 + gen() % max_cols;
        auto a = testsupport::random_gf(gen, f, rows, cols);
        std::vector<std::uint8_t> b(rows);
        for (auto& x : b) x = std::uint8_t(gen() % q);

        std::set<std::vector<std::uint8_t>> brute;
        std::vector<std::uint8_t> x(cols, 0);
        while (true) {
            if (a.mul_vec(x) == b) brute.insert(x);
            std::size_t pos = 0;
            while (pos < cols) {
                if (++x[pos] < q) break;
                x[pos++] = 0;
            }
            if (pos == cols) break;
        }

        auto sol = solve_linear(a, b);
        std::set<std::vector<std::uint8_t>> enumerated;
        for (std::uint64_t i = 0; i < sol.count(); ++i) enumerated.insert(sol.solution(i));
        CHECK(enumerated.size() == sol.count());
        CHECK(enumerated == brute);
    }
}
