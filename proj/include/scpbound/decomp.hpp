#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scpbound/matrix.hpp"

namespace scpbound {

/// Densities of the blocks M11, M12, M21, M22, in that order.
struct BlockDensities {
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double d4 = 0.0;

    friend bool operator==(const BlockDensities&, const BlockDensities&) = default;
};

/**
 * A two-by-two block view of a matrix: rows [0, r) and columns [0, c) form
 * M11. Block densities are row densities within the block (ones in the block
 * row divided by the block width), extremised over the block's rows.
 *
 * valid follows the (nu, mu)-decomposability predicate: both diagonal maxima
 * strictly above the overall maximum row density, both off-diagonal maxima
 * strictly below it.
 */
struct BlockDecomposition {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t r = 0;
    std::size_t c = 0;
    double mu = 0.0;  ///< 2r/m - 1
    double nu = 0.0;  ///< 2c/n - 1
    BlockDensities max_density;
    BlockDensities min_density;
    double overall_max_density = 0.0;
    bool valid = false;
};

[[nodiscard]] BlockDecomposition make_decomposition(const BinaryMatrix& matrix, std::size_t r, std::size_t c);

/// |log(1 - d)|.
[[nodiscard]] double miss_rate(double density);

/// Weight alpha in (0,1) minimising k1 + k2; requires d1 > d2 and d4 > d3, all in [0,1).
[[nodiscard]] double alpha_star(const BlockDensities& d);

/// Real solution of the two-row linear system for a given split of the failure budget.
struct BlockSystem {
    double alpha = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double delta_det = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;

    [[nodiscard]] double total() const noexcept { return k1 + k2; }
};

/**
 * k1 |log(1-d1)| + k2 |log(1-d2)| = c1,  k1 |log(1-d3)| + k2 |log(1-d4)| = c2
 * with c1 = |log alpha| + log[(m/2)(1+mu)], c2 = |log(1-alpha)| + log[(m/2)(1-mu)].
 * alpha = 1 gives the independent-blocks constants c1(1), c2(1).
 */
[[nodiscard]] BlockSystem solve_block_system(const BlockDensities& d, double m, double mu, double alpha);

enum class DensityVariant {
    sound,    ///< block minima: every row's miss probability is dominated
    literal,  ///< block maxima, as in the decomposability predicate
};

struct DecompositionBound {
    DensityVariant variant = DensityVariant::sound;
    BlockDensities densities;
    double alpha = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double delta_det = 0.0;
    double k1_real = 0.0;
    double k2_real = 0.0;
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    std::size_t total = 0;
    /// Off-diagonal blocks are empty, so the two failure events are independent.
    bool independent = false;
    /// Left side of the two-block union condition at the integer (k1, k2).
    double condition = 0.0;
    bool sound = true;
    /// k1 <= c, k2 <= n - c and the integer condition holds.
    bool feasible = false;
};

/**
 * Two-block bound at the optimal alpha, lifted to integers and re-checked.
 *
 * Throws ArgumentError when the split is not decomposable (unless
 * allow_invalid), when m < 3, or when the chosen densities violate the
 * ordering d1 > d2, d4 > d3.
 */
[[nodiscard]] DecompositionBound decomposed_bound(const BlockDecomposition& dec, DensityVariant variant,
                                                  bool allow_invalid = false);

/// Perfect block-diagonal closed form: log[(m/2)(1+mu)]/|log(1-d1)| + log[(m/2)(1-mu)]/|log(1-d4)|.
[[nodiscard]] double perfect_block_bound(std::size_t m, double mu, double d1, double d4);

/// Symmetric bordered closed form: 2 log m / (|log(1-2 delta+eps)| + |log(1-eps)|).
[[nodiscard]] double symmetric_bordered_bound(std::size_t m, double delta, double eps);

struct SplitSearchResult {
    std::vector<std::size_t> row_perm;  ///< new row i is original row row_perm[i]
    std::vector<std::size_t> col_perm;
    std::size_t r = 0;
    std::size_t c = 0;
    BlockDecomposition decomposition;  ///< of the permuted matrix
    std::int64_t objective = 0;        ///< diagonal ones minus off-diagonal ones
    std::int64_t initial_objective = 0;
};

/// Seeded local search over row/column bisections with restarts; effort counts move evaluations.
[[nodiscard]] SplitSearchResult search_split(const BinaryMatrix& matrix, std::size_t effort, std::uint64_t seed);

}  // namespace scpbound
