#include <doctest.h>

#include "oracle.hpp"
#include "scpbound/error.hpp"
#include "scpbound/solve.hpp"

using namespace scpbound;

namespace {

BinaryMatrix identity(std::size_t m) {
    MatrixBuilder b(m, m);
    for (std::size_t i = 0; i < m; ++i) b.set(i, i);
    return std::move(b).build();
}

const auto staircase = BinaryMatrix::from_strings({"1100", "0110", "0011"});

}  // namespace

TEST_CASE("verify cover") {
    const auto I = identity(3);
    CHECK(verify_cover(I, std::vector<std::size_t>{0, 1, 2}));
    CHECK_FALSE(verify_cover(I, std::vector<std::size_t>{0, 1}));
    CHECK(verify_cover(staircase, std::vector<std::size_t>{1, 2}));
    CHECK_THROWS_AS((void)verify_cover(I, std::vector<std::size_t>{3}), ArgumentError);
}

TEST_CASE("greedy examples") {
    const auto g = greedy_cover(staircase);
    CHECK(g.columns == std::vector<std::size_t>{1, 2});
    CHECK(g.feasible);
    CHECK(g.status == SolveStatus::heuristic);
    CHECK(greedy_cover(identity(5)).size() == 5);
    CHECK(greedy_cover(BinaryMatrix::from_strings({"010", "011", "110"})).columns == std::vector<std::size_t>{1});

    const auto none = greedy_cover(BinaryMatrix::from_strings({"10", "00"}));
    CHECK_FALSE(none.feasible);
    CHECK(none.status == SolveStatus::infeasible);
}

TEST_CASE("exact examples") {
    const auto e = exact_cover(staircase);
    CHECK(e.size() == 2);
    CHECK(e.status == SolveStatus::proved);
    CHECK(verify_cover(staircase, e.columns));
    CHECK(exact_cover(identity(6)).size() == 6);
    CHECK(exact_cover(BinaryMatrix::from_strings({"111", "111"})).size() == 1);

    const auto none = exact_cover(BinaryMatrix::from_strings({"10", "00"}));
    CHECK_FALSE(none.feasible);
    CHECK(none.status == SolveStatus::infeasible);
}

TEST_CASE("greedy is beaten where it should be") {
    // greedy takes the 4-row column first and then needs both halves
    const auto trap = BinaryMatrix::from_strings({"110", "110", "010", "101", "101", "001"});
    CHECK(greedy_cover(trap).columns == std::vector<std::size_t>{0, 1, 2});
    CHECK(exact_cover(trap).columns == std::vector<std::size_t>{1, 2});
}

TEST_CASE("exact agrees with enumeration and bounds greedy") {
    Rng rng(77);
    for (int t = 0; t < 500; ++t) {
        const auto m = 1 + rng.below(14), n = 1 + rng.below(12);
        const auto M = oracle::random_coverable(rng, m, n, 0.05 + 0.6 * rng.uniform());
        const auto opt = oracle::min_cover(M);
        const auto e = exact_cover(M);
        const auto g = greedy_cover(M);
        REQUIRE(e.status == SolveStatus::proved);
        CHECK(e.size() == *opt);
        CHECK(verify_cover(M, e.columns));
        CHECK(verify_cover(M, g.columns));
        CHECK(e.size() <= g.size());
        CHECK(std::is_sorted(e.columns.begin(), e.columns.end()));

        std::size_t d = 0;
        const auto T = M.transposed();
        for (std::size_t j = 0; j < n; ++j) d = std::max(d, T.row_ones(j));
        double harmonic = 0;
        for (std::size_t q = 1; q <= d; ++q) harmonic += 1.0 / static_cast<double>(q);
        CHECK(static_cast<double>(g.size()) <= harmonic * static_cast<double>(e.size()) + 1e-9);
    }
}

TEST_CASE("budget exhaustion is reported") {
    Rng rng(1);
    const auto M = oracle::random_coverable(rng, 40, 60, 0.1);
    const auto e = exact_cover(M, 5);
    CHECK(e.status == SolveStatus::budget_exhausted);
    CHECK(e.feasible);
    CHECK(verify_cover(M, e.columns));
    CHECK(e.size() <= greedy_cover(M).size());
    CHECK(e.nodes <= 5);
}
