#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scpbound/binomial.hpp"
#include "scpbound/bounds.hpp"
#include "scpbound/matrix.hpp"

namespace scpbound {

inline constexpr std::size_t default_bonferroni_row_cap = 2000;

/// The rounded constant usually quoted for the third-order refinement.
inline constexpr double historical_series_constant = 1.56;

/**
 * Third-order inclusion-exclusion at sample size k, in log space:
 *   S1 = sum_i C(n - d_i, k)
 *   S2 = sum_{i<j} C(n - d_i - d_j + |G_ij|, k)
 *   S3 = sum_{i<j<l} C(n - d_i - d_j - d_l + |G_ij| + |G_il| + |G_jl| - |G_ijl|, k)
 * satisfied <=> S1 + S3 < C(n, k) + S2 (with the comparison guard).
 */
struct BonferroniWitness {
    std::size_t k = 0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    double rhs = 0.0;  ///< log C(n, k)
    bool satisfied = false;

    /// (S1 - S2 + S3) / C(n, k).
    [[nodiscard]] double truncated_union() const;
};

/**
 * Multiplicities of every binomial upper argument appearing in S1, S2, S3.
 *
 * Entry a of pairs() counts row pairs whose common-miss column count
 * n - d_i - d_j + |G_ij| equals a; likewise for singles and triples. These
 * do not depend on k, so one pass over the rows serves every k.
 */
class BonferroniSums {
public:
    explicit BonferroniSums(const BinaryMatrix& matrix, std::size_t max_rows = default_bonferroni_row_cap);

    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] const std::vector<std::uint64_t>& singles() const noexcept { return singles_; }
    [[nodiscard]] const std::vector<std::uint64_t>& pairs() const noexcept { return pairs_; }
    [[nodiscard]] const std::vector<std::uint64_t>& triples() const noexcept { return triples_; }

    [[nodiscard]] BonferroniWitness witness(std::size_t k) const;
    /// Witness at sweep.k(); sweep.n() must equal cols().
    [[nodiscard]] BonferroniWitness witness(const LogRatioSweep& sweep) const;

private:
    template <typename Ratio>
    BonferroniWitness evaluate(std::size_t k, const Ratio& log_ratio) const;

    std::size_t cols_;
    std::vector<std::uint64_t> singles_;
    std::vector<std::uint64_t> pairs_;
    std::vector<std::uint64_t> triples_;
};

[[nodiscard]] BonferroniWitness bonferroni_condition(const BinaryMatrix& matrix, std::size_t k);

/// First k in 1..n (scanning upward) whose witness is satisfied.
[[nodiscard]] BoundResult bonferroni_bound(const BinaryMatrix& matrix, std::size_t max_rows = default_bonferroni_row_cap);

/// Positive root of y - y^2/2 + y^3/6 = 1, by bisection to 1e-9.
[[nodiscard]] double truncated_series_root();

/// (log m - log y*) / |log(1 - delta)| with y* the root above.
[[nodiscard]] double constant_density_refined_bound(std::size_t m, double delta);

}  // namespace scpbound
