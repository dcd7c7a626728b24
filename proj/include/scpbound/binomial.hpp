#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scpbound {

/// Relative tolerance applied when a computed sum is compared against its
/// threshold. Ties within the band resolve to "not satisfied".
inline constexpr double comparison_guard = 1e-12;

/// log C(n, k); -inf when k > n.
[[nodiscard]] double log_binomial(std::size_t n, std::size_t k);

/**
 * log( C(a, k) / C(n, k) ) for a <= n, evaluated as the product
 * prod_{t<k} (a - t) / (n - t) in log space. -inf when k > a.
 */
[[nodiscard]] double log_binomial_ratio(std::size_t a, std::size_t n, std::size_t k);

/**
 * log( C(a, k) / C(n, k) ) for every a in [0, n] while k steps upward from 0.
 * Each step adds the same terms, in the same order, as log_binomial_ratio,
 * so values are bit-identical to the direct evaluation.
 */
class LogRatioSweep {
public:
    explicit LogRatioSweep(std::size_t n);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] double operator[](std::size_t a) const { return values_.at(a); }

    /// k -> k + 1. Requires k < n.
    void advance();

private:
    std::size_t n_;
    std::size_t k_ = 0;
    std::vector<double> values_;
};

/// log(sum exp(terms)) accumulated in the given order; -inf for an empty or all -inf input.
[[nodiscard]] double log_sum_exp(std::span<const double> terms);

/// exp(lhs) < exp(rhs) * (1 - comparison_guard).
[[nodiscard]] bool guarded_log_less(double lhs, double rhs);

}  // namespace scpbound
