#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "scpbound/matrix.hpp"

namespace scpbound {

enum class BoundMethod { first_moment, hypergeometric, homogeneous, bonferroni, decomposed };

[[nodiscard]] std::string_view to_string(BoundMethod method) noexcept;

/**
 * A certified (or, when sound is false, merely reported) cover cardinality.
 *
 * When k is present the method's strict condition holds at k; value_at_k is
 * the condition value there and value_at_prev the value at k-1 (absent for
 * k = 1). When k is absent the condition fails for every k in 1..n and
 * value_at_prev carries the value at k = n.
 */
struct BoundResult {
    BoundMethod method = BoundMethod::first_moment;
    std::optional<std::size_t> k;
    std::optional<double> value_at_k;
    std::optional<double> value_at_prev;
    bool sound = true;

    friend bool operator==(const BoundResult&, const BoundResult&) = default;
};

/// P(a fixed row with d ones is missed by a uniform k-subset of n columns) = C(n-d, k) / C(n, k).
[[nodiscard]] double exact_uncovered_prob(std::size_t n, std::size_t d, std::size_t k);

/// Smallest k in 1..n with sum_l (1 - delta_l)^k < 1.
[[nodiscard]] BoundResult first_moment_bound(const RowProfile& profile);

/// Smallest k in 1..n with sum_l C(n - d_l, k) / C(n, k) < 1.
[[nodiscard]] BoundResult hypergeometric_first_moment_bound(const RowProfile& profile);
[[nodiscard]] BoundResult hypergeometric_first_moment_bound(const BinaryMatrix& matrix);

/// floor(log m / |log(1 - delta)|) + 1, the least integer strictly above the threshold.
[[nodiscard]] std::size_t homogeneous_bound(std::size_t m, double delta);

struct HomogeneousBounds {
    /// Evaluated at the minimum row density; valid for every row.
    BoundResult certified;
    /// Evaluated at the maximum row density, as the closed form is usually quoted.
    BoundResult literal;
    double min_density = 0.0;
    double max_density = 0.0;
};

[[nodiscard]] HomogeneousBounds homogeneous_bound_certified(const RowProfile& profile);
[[nodiscard]] HomogeneousBounds homogeneous_bound_certified(const BinaryMatrix& matrix);

/// Throws InfeasibleError naming the first zero row, if any.
void require_coverable(const RowProfile& profile);

}  // namespace scpbound
