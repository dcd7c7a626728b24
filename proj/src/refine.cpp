#include "scpbound/refine.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "scpbound/error.hpp"

namespace scpbound {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

std::size_t checked_argument(std::int64_t value, std::size_t n, const char* what) {
    if (value < 0 || value > static_cast<std::int64_t>(n)) {
        throw InternalError(std::string(what) + " binomial argument " + std::to_string(value) + " outside 0.." +
                            std::to_string(n));
    }
    return static_cast<std::size_t>(value);
}

double cubic(double y) { return y - y * y / 2.0 + y * y * y / 6.0; }

}  // namespace

double BonferroniWitness::truncated_union() const {
    return std::exp(s1 - rhs) - std::exp(s2 - rhs) + std::exp(s3 - rhs);
}

BonferroniSums::BonferroniSums(const BinaryMatrix& matrix, std::size_t max_rows)
    : cols_(matrix.cols()), singles_(cols_ + 1, 0), pairs_(cols_ + 1, 0), triples_(cols_ + 1, 0) {
    const std::size_t m = matrix.rows();
    if (m > max_rows) {
        throw ArgumentError("Bonferroni refinement limited to " + std::to_string(max_rows) + " rows, matrix has " +
                            std::to_string(m));
    }
    const auto n = static_cast<std::int64_t>(cols_);
    const OverlapTable overlaps(matrix);
    std::vector<std::int64_t> ones(m);
    for (std::size_t i = 0; i < m; ++i) {
        ones[i] = static_cast<std::int64_t>(matrix.row_ones(i));
        ++singles_[checked_argument(n - ones[i], cols_, "single")];
    }

    std::vector<BinaryMatrix::Word> both(matrix.stride());
    for (std::size_t i = 0; i < m; ++i) {
        const auto ri = matrix.row(i);
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto gij = static_cast<std::int64_t>(overlaps.pair(i, j));
            const std::int64_t pair_base = n - ones[i] - ones[j] + gij;
            ++pairs_[checked_argument(pair_base, cols_, "pair")];

            const auto rj = matrix.row(j);
            for (std::size_t w = 0; w < both.size(); ++w) both[w] = ri[w] & rj[w];
            for (std::size_t l = j + 1; l < m; ++l) {
                const auto rl = matrix.row(l);
                std::int64_t gijl = 0;
                for (std::size_t w = 0; w < both.size(); ++w) gijl += std::popcount(both[w] & rl[w]);
                const std::int64_t arg = pair_base - ones[l] + static_cast<std::int64_t>(overlaps.pair(i, l)) +
                                         static_cast<std::int64_t>(overlaps.pair(j, l)) - gijl;
                ++triples_[checked_argument(arg, cols_, "triple")];
            }
        }
    }
}

template <typename Ratio>
BonferroniWitness BonferroniSums::evaluate(std::size_t k, const Ratio& log_ratio) const {
    // log(S / C(n,k)) over the histogram in ascending argument order
    std::vector<double> terms;
    terms.reserve(cols_ + 1);
    const auto log_scaled_sum = [&](const std::vector<std::uint64_t>& counts) {
        terms.clear();
        for (std::size_t a = 0; a <= cols_; ++a) {
            if (counts[a] != 0) terms.push_back(std::log(static_cast<double>(counts[a])) + log_ratio(a));
        }
        return log_sum_exp(terms);
    };
    const double r1 = log_scaled_sum(singles_);
    const double r2 = log_scaled_sum(pairs_);
    const double r3 = log_scaled_sum(triples_);

    BonferroniWitness w;
    w.k = k;
    w.rhs = log_binomial(cols_, k);
    w.s1 = r1 + w.rhs;
    w.s2 = r2 + w.rhs;
    w.s3 = r3 + w.rhs;
    const double lhs[] = {r1, r3};
    const double rhs[] = {0.0, r2};
    w.satisfied = guarded_log_less(log_sum_exp(lhs), log_sum_exp(rhs));
    return w;
}

BonferroniWitness BonferroniSums::witness(std::size_t k) const {
    if (k < 1 || k > cols_) throw ArgumentError("Bonferroni condition requires 1 <= k <= n");
    return evaluate(k, [&](std::size_t a) { return log_binomial_ratio(a, cols_, k); });
}

BonferroniWitness BonferroniSums::witness(const LogRatioSweep& sweep) const {
    if (sweep.n() != cols_) throw ArgumentError("ratio sweep built for a different column count");
    if (sweep.k() < 1) throw ArgumentError("Bonferroni condition requires 1 <= k <= n");
    return evaluate(sweep.k(), [&](std::size_t a) { return sweep[a]; });
}

BonferroniWitness bonferroni_condition(const BinaryMatrix& matrix, std::size_t k) {
    require_coverable(RowProfile(matrix));
    if (k < 1 || k > matrix.cols()) throw ArgumentError("Bonferroni condition requires 1 <= k <= n");
    return BonferroniSums(matrix).witness(k);
}

BoundResult bonferroni_bound(const BinaryMatrix& matrix, std::size_t max_rows) {
    require_coverable(RowProfile(matrix));
    const BonferroniSums sums(matrix, max_rows);

    BoundResult result;
    result.method = BoundMethod::bonferroni;
    std::optional<double> previous;
    LogRatioSweep sweep(matrix.cols());
    while (sweep.k() < matrix.cols()) {
        sweep.advance();
        const auto w = sums.witness(sweep);
        if (w.satisfied) {
            result.k = w.k;
            result.value_at_k = w.truncated_union();
            result.value_at_prev = previous;
            return result;
        }
        previous = w.truncated_union();
    }
    result.value_at_prev = previous;
    return result;
}

double truncated_series_root() {
    // the cubic's derivative 1 - y + y^2/2 is positive everywhere
    double lo = 0.0, hi = 2.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (cubic(mid) < 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double constant_density_refined_bound(std::size_t m, double delta) {
    if (m < 2) throw ArgumentError("refined threshold requires m >= 2");
    if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("refined threshold requires 0 < delta < 1");
    return (std::log(static_cast<double>(m)) - std::log(truncated_series_root())) / -std::log1p(-delta);
}

}  // namespace scpbound
