#include <cmath>

#include <doctest.h>

#include "oracle.hpp"
#include "scpbound/decomp.hpp"
#include "scpbound/error.hpp"
#include "scpbound/gen.hpp"

using namespace scpbound;

namespace {

GenSpec spec(GenModel model, std::size_t m, std::size_t n, double delta, std::uint64_t seed) {
    GenSpec s;
    s.model = model;
    s.m = m;
    s.n = n;
    s.delta = delta;
    s.seed = seed;
    return s;
}

GenSpec planted(std::size_t m, std::size_t n, BlockTargets blocks, std::uint64_t seed) {
    GenSpec s = spec(GenModel::planted, m, n, 0.0, seed);
    s.blocks = blocks;
    return s;
}

}  // namespace

// Reference values from an independent implementation of SplitMix64 and xoshiro256**.
TEST_CASE("generator stream matches the published recurrences") {
    std::uint64_t x = 0;
    CHECK(Rng::splitmix64(x) == 0xe220a8397b1dcdafULL);
    Rng rng(0);
    CHECK(rng.next() == 0x99ec5f36cb75f2b4ULL);
    CHECK(rng.next() == 0xbf6e1f784956452aULL);
    CHECK(rng.next() == 0x1a5f849d4933e6e0ULL);
}

TEST_CASE("golden matrices") {
    CHECK(gen_constant_density(spec(GenModel::constant_density, 4, 8, 0.5, 42)) ==
          BinaryMatrix::from_strings({"11000000", "00010100", "00001110", "11100110"}));
    CHECK(gen_karp(spec(GenModel::karp, 3, 8, 0.375, 7)) ==
          BinaryMatrix::from_strings({"10100001", "11000001", "00011010"}));
}

TEST_CASE("bounded integers and shuffles") {
    Rng rng(9);
    std::vector<int> counts(7);
    for (int t = 0; t < 70'000; ++t) ++counts[rng.below(7)];
    for (int c : counts) CHECK(std::abs(c - 10'000) < 500);

    std::vector<std::size_t> p(50);
    std::iota(p.begin(), p.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(p));
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < 50; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("constant density extremes") {
    const auto zero = gen_constant_density(spec(GenModel::constant_density, 5, 9, 0.0, 1));
    CHECK(zero.total_ones() == 0);
    const auto full = gen_constant_density(spec(GenModel::constant_density, 5, 9, 1.0, 1));
    CHECK(full.total_ones() == 45);
}

TEST_CASE("constant density concentration") {
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto M = gen_constant_density(spec(GenModel::constant_density, 256, 256, 0.5, seed));
        const double mean = row_profile(M).mean_density();
        good += std::abs(mean - 0.5) <= 3 * 0.5 / std::sqrt(256.0) ? 1 : 0;
    }
    CHECK(good >= 28);

    const auto big = gen_constant_density(spec(GenModel::constant_density, 1000, 1000, 0.3, 99));
    const double p = static_cast<double>(big.total_ones()) / 1e6;
    CHECK(std::abs(p - 0.3) < 3 * std::sqrt(0.3 * 0.7 / 1e6));
}

TEST_CASE("karp rows have exactly t ones") {
    CHECK(karp_row_ones(16, 0.25) == 4);
    CHECK(karp_row_ones(10, 0.25) == 3);  // 2.5 rounds up
    CHECK(karp_row_ones(10, 0.24) == 2);
    CHECK(karp_row_ones(7, 1.0) == 7);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto M = gen_karp(spec(GenModel::karp, 30, 16, 0.25, seed));
        for (std::size_t i = 0; i < 30; ++i) CHECK(M.row_ones(i) == 4);
    }
    CHECK(gen_karp(spec(GenModel::karp, 4, 6, 1.0, 3)).total_ones() == 24);
}

TEST_CASE("karp column counts concentrate") {
    const std::size_t m = 2000, n = 20;
    const auto M = gen_karp(spec(GenModel::karp, m, n, 0.25, 5));
    const auto T = M.transposed();
    const double expected = m * 5.0 / n;
    const double sd = std::sqrt(m * 0.25 * 0.75);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(static_cast<double>(T.row_ones(j)) - expected) < 4 * sd);
}

TEST_CASE("planted instances") {
    const auto diag = gen_planted(planted(10, 12, {0.7, 0.0, 0.0, 0.6, 0.0, 0.0}, 4));
    REQUIRE(diag.split);
    CHECK(diag.split->r == 5);
    CHECK(diag.split->c == 6);
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = 0; j < 12; ++j) {
            if ((i < 5) != (j < 6)) CHECK_FALSE(diag.matrix.at(i, j));
        }
    }

    const auto shifted = planted_split(planted(10, 12, {0.5, 0.1, 0.1, 0.5, 0.4, -0.5}, 1));
    CHECK(shifted.r == 7);
    CHECK(shifted.c == 3);
    CHECK_THROWS_AS((void)planted_split(planted(4, 4, {0.5, 0.1, 0.1, 0.5, 0.9, 0.0}, 1)), ArgumentError);
}

TEST_CASE("bordered targets are recovered by measurement") {
    const double delta = 0.3, eps = 0.1;
    const BlockTargets t{2 * delta - eps, eps, eps, 2 * delta - eps, 0.0, 0.0};
    const auto inst = gen_planted(planted(400, 2000, t, 21));
    const auto dec = make_decomposition(inst.matrix, inst.split->r, inst.split->c);
    const double sd = std::sqrt(0.25 / 1000.0);
    CHECK(std::abs(dec.max_density.d1 - t.d1) < 5 * sd);
    CHECK(std::abs(dec.min_density.d1 - t.d1) < 5 * sd);
    CHECK(std::abs(dec.max_density.d2 - t.d2) < 5 * sd);
    CHECK(std::abs(dec.max_density.d3 - t.d3) < 5 * sd);
    CHECK(std::abs(dec.max_density.d4 - t.d4) < 5 * sd);
}

TEST_CASE("identical specs give identical bytes") {
    for (auto s : {spec(GenModel::constant_density, 33, 70, 0.3, 5), spec(GenModel::karp, 33, 70, 0.3, 5),
                   planted(33, 70, {0.6, 0.1, 0.05, 0.5, 0.1, -0.2}, 5)}) {
        const auto a = serialize_matrix(generate(s).matrix, MatrixFormat::dense);
        const auto b = serialize_matrix(generate(s).matrix, MatrixFormat::dense);
        CHECK(a == b);
        s.seed = 6;
        CHECK(serialize_matrix(generate(s).matrix, MatrixFormat::dense) != a);
    }
}

TEST_CASE("spec validation and JSON") {
    CHECK_THROWS_AS(spec(GenModel::constant_density, 0, 3, 0.5, 1).validate(), ArgumentError);
    CHECK_THROWS_AS(spec(GenModel::karp, 3, 3, 1.5, 1).validate(), ArgumentError);
    CHECK_THROWS_AS(planted(4, 4, {0.5, -0.1, 0.1, 0.5, 0.0, 0.0}, 1).validate(), ArgumentError);
    CHECK_THROWS_AS((void)parse_gen_model("uniform"), ArgumentError);
    CHECK(parse_gen_model("constant") == GenModel::constant_density);

    const auto p = planted(40, 50, {0.6, 0.1, 0.05, 0.5, 0.1, -0.2}, 77);
    const GenSpec back = nlohmann::json(p).get<GenSpec>();
    CHECK(back.model == p.model);
    CHECK(back.m == 40);
    CHECK(back.n == 50);
    CHECK(back.seed == 77);
    CHECK(back.blocks.d3 == 0.05);
    CHECK(back.blocks.nu == -0.2);
    CHECK_FALSE(nlohmann::json(spec(GenModel::karp, 3, 3, 0.5, 1)).contains("blocks"));
}
