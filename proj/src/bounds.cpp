#include "scpbound/bounds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "scpbound/binomial.hpp"
#include "scpbound/error.hpp"

namespace scpbound {

namespace {

using LogCondition = std::function<double(std::size_t)>;

/// Smallest k in 1..n with guarded_log_less(condition(k), 0), assuming the
/// condition is non-increasing in k. The bracket is re-checked directly.
BoundResult minimal_k(BoundMethod method, std::size_t n, const LogCondition& log_condition) {
    BoundResult result;
    result.method = method;
    const auto holds = [&](std::size_t k) { return guarded_log_less(log_condition(k), 0.0); };

    if (!holds(n)) {
        result.value_at_prev = std::exp(log_condition(n));
        return result;
    }
    std::size_t lo = 1, hi = n;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (holds(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    // floating-point ties can break monotonicity by an ulp; walk down if so
    while (lo > 1 && holds(lo - 1)) --lo;

    result.k = lo;
    result.value_at_k = std::exp(log_condition(lo));
    if (lo > 1) result.value_at_prev = std::exp(log_condition(lo - 1));
    return result;
}

double log_count(std::size_t count) { return std::log(static_cast<double>(count)); }

BoundResult homogeneous_result(std::size_t m, std::size_t n, double delta, bool sound) {
    BoundResult result;
    result.method = BoundMethod::homogeneous;
    result.sound = sound;

    const double log_m = std::log(static_cast<double>(m));
    const double log_miss = std::log1p(-delta);
    const auto log_value = [&](std::size_t k) { return log_m + static_cast<double>(k) * log_miss; };

    std::size_t k = homogeneous_bound(m, delta);
    // the closed form sits on the boundary when the threshold is an integer
    while (!guarded_log_less(log_value(k), 0.0)) ++k;
    if (k > n) {
        result.value_at_prev = std::exp(log_value(n));
        return result;
    }
    result.k = k;
    result.value_at_k = std::exp(log_value(k));
    if (k > 1) result.value_at_prev = std::exp(log_value(k - 1));
    return result;
}

}  // namespace

std::string_view to_string(BoundMethod method) noexcept {
    switch (method) {
        case BoundMethod::first_moment: return "first-moment";
        case BoundMethod::hypergeometric: return "hypergeometric";
        case BoundMethod::homogeneous: return "homogeneous";
        case BoundMethod::bonferroni: return "bonferroni";
        case BoundMethod::decomposed: return "decomposed";
    }
    return "unknown";
}

void require_coverable(const RowProfile& profile) {
    if (auto zero = profile.first_zero_row()) throw InfeasibleError(*zero);
}

double exact_uncovered_prob(std::size_t n, std::size_t d, std::size_t k) {
    if (d > n || k > n) {
        throw ArgumentError("exact_uncovered_prob requires 0 <= d <= n and 0 <= k <= n");
    }
    return std::exp(log_binomial_ratio(n - d, n, k));
}

BoundResult first_moment_bound(const RowProfile& profile) {
    require_coverable(profile);
    const std::size_t n = profile.cols();
    // grouped by ones count so the sum depends only on the density multiset
    std::vector<double> log_counts, log_miss;
    for (auto [d, count] : profile.histogram()) {
        log_counts.push_back(log_count(count));
        log_miss.push_back(std::log1p(-static_cast<double>(d) / static_cast<double>(n)));
    }
    std::vector<double> terms(log_counts.size());
    return minimal_k(BoundMethod::first_moment, n, [&](std::size_t k) {
        for (std::size_t g = 0; g < terms.size(); ++g) {
            // (1 - 1)^k = 0 for k >= 1; avoid 0 * -inf
            terms[g] = std::isinf(log_miss[g]) ? log_miss[g] : log_counts[g] + static_cast<double>(k) * log_miss[g];
        }
        return log_sum_exp(terms);
    });
}

BoundResult hypergeometric_first_moment_bound(const RowProfile& profile) {
    require_coverable(profile);
    const std::size_t n = profile.cols();
    const auto& groups = profile.histogram();
    std::vector<double> terms(groups.size());
    return minimal_k(BoundMethod::hypergeometric, n, [&](std::size_t k) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const auto [d, count] = groups[g];
            terms[g] = log_count(count) + log_binomial_ratio(n - d, n, k);
        }
        return log_sum_exp(terms);
    });
}

BoundResult hypergeometric_first_moment_bound(const BinaryMatrix& matrix) {
    return hypergeometric_first_moment_bound(RowProfile(matrix));
}

std::size_t homogeneous_bound(std::size_t m, double delta) {
    if (m < 1) throw ArgumentError("homogeneous bound requires m >= 1");
    if (!(delta > 0.0 && delta <= 1.0)) throw ArgumentError("homogeneous bound requires 0 < delta <= 1");
    if (delta == 1.0) return 1;
    const double threshold = std::log(static_cast<double>(m)) / -std::log1p(-delta);
    if (threshold >= 9007199254740992.0) throw ArgumentError("homogeneous threshold exceeds integer range");
    return static_cast<std::size_t>(std::floor(threshold)) + 1;
}

HomogeneousBounds homogeneous_bound_certified(const RowProfile& profile) {
    require_coverable(profile);
    HomogeneousBounds out;
    out.min_density = profile.min_density();
    out.max_density = profile.max_density();
    out.certified = homogeneous_result(profile.rows(), profile.cols(), out.min_density, true);
    out.literal = homogeneous_result(profile.rows(), profile.cols(), out.max_density, false);
    return out;
}

HomogeneousBounds homogeneous_bound_certified(const BinaryMatrix& matrix) {
    return homogeneous_bound_certified(RowProfile(matrix));
}

}  // namespace scpbound
