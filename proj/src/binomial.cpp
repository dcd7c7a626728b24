#include "scpbound/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scpbound/error.hpp"

namespace scpbound {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// glibc's lgamma writes the global signgam; the reentrant variant does not.
double log_gamma(double x) {
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double ratio_term(std::size_t a, std::size_t n, std::size_t t) {
    return std::log1p(-static_cast<double>(n - a) / static_cast<double>(n - t));
}

}  // namespace

double log_binomial(std::size_t n, std::size_t k) {
    if (k > n) return neg_inf;
    if (k == 0 || k == n) return 0.0;
    const auto nd = static_cast<double>(n);
    const auto kd = static_cast<double>(k);
    return log_gamma(nd + 1.0) - log_gamma(kd + 1.0) - log_gamma(nd - kd + 1.0);
}

double log_binomial_ratio(std::size_t a, std::size_t n, std::size_t k) {
    if (a > n || k > n) throw ArgumentError("binomial ratio requires a <= n and k <= n");
    if (k > a) return neg_inf;
    double acc = 0.0;
    for (std::size_t t = 0; t < k; ++t) acc += ratio_term(a, n, t);
    return acc;
}

LogRatioSweep::LogRatioSweep(std::size_t n) : n_(n), values_(n + 1, 0.0) {}

void LogRatioSweep::advance() {
    if (k_ >= n_) throw ArgumentError("ratio sweep cannot advance past k = n");
    for (std::size_t a = 0; a <= n_; ++a) {
        values_[a] = (k_ >= a) ? neg_inf : values_[a] + ratio_term(a, n_, k_);
    }
    ++k_;
}

double log_sum_exp(std::span<const double> terms) {
    double peak = neg_inf;
    for (double t : terms) peak = std::max(peak, t);
    if (peak == neg_inf) return neg_inf;
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - peak);
    return peak + std::log(sum);
}

bool guarded_log_less(double lhs, double rhs) {
    if (rhs == neg_inf) return false;
    if (lhs == neg_inf) return true;
    return lhs < rhs + std::log1p(-comparison_guard);
}

}  // namespace scpbound
