#include "scpbound/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "scpbound/binomial.hpp"
#include "scpbound/error.hpp"
#include "scpbound/rng.hpp"

namespace scpbound {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// Densities of exactly 1 have an infinite miss rate; the real-valued system
// is solved with this cap and the integer re-check uses the true value.
constexpr double max_solver_density = 1.0 - 0x1.0p-30;

double cap_density(double d) { return std::min(d, max_solver_density); }

BlockDensities capped(const BlockDensities& d) {
    return {cap_density(d.d1), cap_density(d.d2), cap_density(d.d3), cap_density(d.d4)};
}

/// log of count * (1 - da)^ka * (1 - db)^kb, with 0^0 = 1.
double log_block_term(double count, double da, std::size_t ka, double db, std::size_t kb) {
    const auto power = [](double d, std::size_t k) {
        return k == 0 ? 0.0 : static_cast<double>(k) * std::log1p(-d);
    };
    return std::log(count) + power(da, ka) + power(db, kb);
}

std::size_t ceil_nonnegative(double x) { return x > 0.0 ? static_cast<std::size_t>(std::ceil(x)) : 0; }

}  // namespace

BlockDecomposition make_decomposition(const BinaryMatrix& matrix, std::size_t r, std::size_t c) {
    const std::size_t m = matrix.rows();
    const std::size_t n = matrix.cols();
    if (r < 1 || r >= m || c < 1 || c >= n) {
        throw ArgumentError("split (" + std::to_string(r) + ", " + std::to_string(c) + ") out of range: need 1 <= r < " +
                            std::to_string(m) + " and 1 <= c < " + std::to_string(n));
    }

    BlockDecomposition dec;
    dec.m = m;
    dec.n = n;
    dec.r = r;
    dec.c = c;
    dec.mu = 2.0 * static_cast<double>(r) / static_cast<double>(m) - 1.0;
    dec.nu = 2.0 * static_cast<double>(c) / static_cast<double>(n) - 1.0;

    const auto left_width = static_cast<double>(c);
    const auto right_width = static_cast<double>(n - c);
    double max_left[2] = {0.0, 0.0}, max_right[2] = {0.0, 0.0};
    double min_left[2] = {1.0, 1.0}, min_right[2] = {1.0, 1.0};
    std::size_t max_ones = 0;

    for (std::size_t i = 0; i < m; ++i) {
        std::size_t left = 0;
        for (std::size_t j = 0; j < c; ++j) left += matrix.at(i, j) ? 1 : 0;
        const std::size_t ones = matrix.row_ones(i);
        max_ones = std::max(max_ones, ones);
        const double dl = static_cast<double>(left) / left_width;
        const double dr = static_cast<double>(ones - left) / right_width;
        const int side = i < r ? 0 : 1;
        max_left[side] = std::max(max_left[side], dl);
        max_right[side] = std::max(max_right[side], dr);
        min_left[side] = std::min(min_left[side], dl);
        min_right[side] = std::min(min_right[side], dr);
    }

    dec.max_density = {max_left[0], max_right[0], max_left[1], max_right[1]};
    dec.min_density = {min_left[0], min_right[0], min_left[1], min_right[1]};
    dec.overall_max_density = static_cast<double>(max_ones) / static_cast<double>(n);
    const double delta = dec.overall_max_density;
    const auto& mx = dec.max_density;
    dec.valid = mx.d1 > delta && mx.d4 > delta && mx.d2 < delta && mx.d3 < delta;
    return dec;
}

double miss_rate(double density) { return -std::log1p(-density); }

double alpha_star(const BlockDensities& d) {
    for (double x : {d.d1, d.d2, d.d3, d.d4}) {
        if (!(x >= 0.0 && x < 1.0)) throw ArgumentError("block densities must lie in [0, 1)");
    }
    const double bottom_gap = miss_rate(d.d4) - miss_rate(d.d3);
    const double top_gap = miss_rate(d.d1) - miss_rate(d.d2);
    if (!(bottom_gap > 0.0) || !(top_gap > 0.0)) {
        throw ArgumentError("block density ordering violated: need d1 > d2 and d4 > d3");
    }
    return bottom_gap / (bottom_gap + top_gap);
}

BlockSystem solve_block_system(const BlockDensities& d, double m, double mu, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in (0, 1]");
    if (!(std::abs(mu) < 1.0)) throw ArgumentError("mu must lie in (-1, 1)");
    const double l1 = miss_rate(d.d1), l2 = miss_rate(d.d2), l3 = miss_rate(d.d3), l4 = miss_rate(d.d4);

    BlockSystem s;
    s.alpha = alpha;
    const double top_rows = m / 2.0 * (1.0 + mu);
    const double bottom_rows = m / 2.0 * (1.0 - mu);
    s.c1 = -std::log(alpha) + std::log(top_rows);
    // alpha = 1 selects the independent-blocks constants on both rows
    s.c2 = (alpha == 1.0 ? 0.0 : -std::log1p(-alpha)) + std::log(bottom_rows);
    s.delta_det = l1 * l4 - l2 * l3;
    if (!(s.delta_det > 0.0)) throw ArgumentError("block determinant is not positive");
    s.k1 = (s.c1 * l4 - s.c2 * l2) / s.delta_det;
    s.k2 = (s.c2 * l1 - s.c1 * l3) / s.delta_det;
    return s;
}

DecompositionBound decomposed_bound(const BlockDecomposition& dec, DensityVariant variant, bool allow_invalid) {
    if (dec.m < 3) throw ArgumentError("decomposed bound requires m >= 3");
    if (!dec.valid && !allow_invalid) throw ArgumentError("split is not (nu, mu)-decomposable");

    DecompositionBound out;
    out.variant = variant;
    out.sound = variant == DensityVariant::sound;
    out.densities = out.sound ? dec.min_density : dec.max_density;
    out.independent = dec.max_density.d2 == 0.0 && dec.max_density.d3 == 0.0;

    const auto m = static_cast<double>(dec.m);
    const BlockDensities solver = capped(out.densities);
    const BlockSystem sys = out.independent ? solve_block_system(solver, m, dec.mu, 1.0)
                                            : solve_block_system(solver, m, dec.mu, alpha_star(solver));
    out.alpha = sys.alpha;
    out.c1 = sys.c1;
    out.c2 = sys.c2;
    out.delta_det = sys.delta_det;
    out.k1_real = sys.k1;
    out.k2_real = sys.k2;

    const auto& d = out.densities;
    const auto top = static_cast<double>(dec.r);
    const auto bottom = static_cast<double>(dec.m - dec.r);
    const auto log_top = [&](std::size_t k1, std::size_t k2) { return log_block_term(top, d.d1, k1, d.d2, k2); };
    const auto log_bottom = [&](std::size_t k1, std::size_t k2) { return log_block_term(bottom, d.d3, k1, d.d4, k2); };

    std::size_t k1 = ceil_nonnegative(sys.k1);
    std::size_t k2 = ceil_nonnegative(sys.k2);
    const std::size_t cap1 = dec.c;
    const std::size_t cap2 = dec.n - dec.c;
    bool holds = false;
    while (k1 <= cap1 && k2 <= cap2) {
        const bool top_ok = guarded_log_less(log_top(k1, k2), 0.0);
        const bool bottom_ok = guarded_log_less(log_bottom(k1, k2), 0.0);
        if (out.independent) {
            holds = top_ok && bottom_ok;
            if (holds) break;
            if (!top_ok) ++k1;
            if (!bottom_ok) ++k2;
            continue;
        }
        const double terms[] = {log_top(k1, k2), log_bottom(k1, k2)};
        holds = guarded_log_less(log_sum_exp(terms), 0.0);
        if (holds) break;
        // raise the smaller index; fall back to the other one at its cap
        if ((k1 <= k2 && k1 < cap1) || k2 >= cap2) {
            ++k1;
        } else {
            ++k2;
        }
    }

    out.k1 = k1;
    out.k2 = k2;
    out.total = k1 + k2;
    out.feasible = holds && k1 <= cap1 && k2 <= cap2;
    const double terms[] = {log_top(k1, k2), log_bottom(k1, k2)};
    out.condition = std::exp(log_sum_exp(terms));
    return out;
}

double perfect_block_bound(std::size_t m, double mu, double d1, double d4) {
    if (m < 3) throw ArgumentError("perfect block bound requires m >= 3");
    if (!(std::abs(mu) < 1.0)) throw ArgumentError("mu must lie in (-1, 1)");
    if (!(d1 > 0.0 && d1 < 1.0 && d4 > 0.0 && d4 < 1.0)) throw ArgumentError("block densities must lie in (0, 1)");
    const auto half = static_cast<double>(m) / 2.0;
    return std::log(half * (1.0 + mu)) / miss_rate(d1) + std::log(half * (1.0 - mu)) / miss_rate(d4);
}

double symmetric_bordered_bound(std::size_t m, double delta, double eps) {
    if (m < 2) throw ArgumentError("bordered bound requires m >= 2");
    if (!(eps >= 0.0 && eps < delta && delta < 0.5)) throw ArgumentError("bordered bound requires 0 <= eps < delta < 1/2");
    return 2.0 * std::log(static_cast<double>(m)) / (miss_rate(2.0 * delta - eps) + miss_rate(eps));
}

namespace {

/// Incremental state of one bisection: side flags plus the counts that make move gains O(1).
class Bisection {
public:
    Bisection(const BinaryMatrix& matrix, const BinaryMatrix& transposed, Rng& rng)
        : matrix_(matrix), transposed_(transposed), top_(matrix.rows(), 0), left_(matrix.cols(), 0),
          row_left_(matrix.rows(), 0), col_top_(matrix.cols(), 0) {
        const std::size_t m = matrix.rows(), n = matrix.cols();
        std::vector<std::size_t> rows(m), cols(n);
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        std::iota(cols.begin(), cols.end(), std::size_t{0});
        rng.shuffle(std::span<std::size_t>(rows));
        rng.shuffle(std::span<std::size_t>(cols));
        for (std::size_t t = 0; t < m / 2; ++t) top_[rows[t]] = 1;
        for (std::size_t t = 0; t < n / 2; ++t) left_[cols[t]] = 1;
        top_count_ = m / 2;
        left_count_ = n / 2;

        row_ones_.resize(m);
        col_ones_.resize(n);
        for (std::size_t i = 0; i < m; ++i) row_ones_[i] = static_cast<std::int64_t>(matrix.row_ones(i));
        for (std::size_t j = 0; j < n; ++j) col_ones_[j] = static_cast<std::int64_t>(transposed.row_ones(j));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!matrix.at(i, j)) continue;
                if (left_[j]) ++row_left_[i];
                if (top_[i]) ++col_top_[j];
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            const std::int64_t own = 2 * row_left_[i] - row_ones_[i];
            objective_ += top_[i] ? own : -own;
        }
    }

    [[nodiscard]] std::int64_t objective() const noexcept { return objective_; }
    [[nodiscard]] const std::vector<std::uint8_t>& top() const noexcept { return top_; }
    [[nodiscard]] const std::vector<std::uint8_t>& left() const noexcept { return left_; }

    /// Tries to move element e (rows first, then columns); returns true when it moved.
    bool try_move(std::size_t e) {
        const std::size_t m = matrix_.rows();
        if (e < m) {
            const std::int64_t own = 2 * row_left_[e] - row_ones_[e];
            const std::int64_t gain = top_[e] ? -2 * own : 2 * own;
            const std::size_t side = top_[e] ? top_count_ : m - top_count_;
            if (gain <= 0 || side <= 1) return false;
            move_row(e);
            objective_ += gain;
            return true;
        }
        const std::size_t j = e - m;
        const std::int64_t own = 2 * col_top_[j] - col_ones_[j];
        const std::int64_t gain = left_[j] ? -2 * own : 2 * own;
        const std::size_t side = left_[j] ? left_count_ : matrix_.cols() - left_count_;
        if (gain <= 0 || side <= 1) return false;
        move_col(j);
        objective_ += gain;
        return true;
    }

private:
    void move_row(std::size_t i) {
        const std::int64_t step = top_[i] ? -1 : 1;
        top_[i] ^= 1;
        top_count_ = static_cast<std::size_t>(static_cast<std::int64_t>(top_count_) + step);
        for_each_one(matrix_.row(i), [&](std::size_t j) { col_top_[j] += step; });
    }

    void move_col(std::size_t j) {
        const std::int64_t step = left_[j] ? -1 : 1;
        left_[j] ^= 1;
        left_count_ = static_cast<std::size_t>(static_cast<std::int64_t>(left_count_) + step);
        for_each_one(transposed_.row(j), [&](std::size_t i) { row_left_[i] += step; });
    }

    template <typename F>
    static void for_each_one(std::span<const BinaryMatrix::Word> bits, F&& f) {
        for (std::size_t w = 0; w < bits.size(); ++w) {
            for (auto word = bits[w]; word != 0; word &= word - 1) {
                f(w * BinaryMatrix::word_bits + static_cast<std::size_t>(std::countr_zero(word)));
            }
        }
    }

    const BinaryMatrix& matrix_;
    const BinaryMatrix& transposed_;
    std::vector<std::uint8_t> top_;
    std::vector<std::uint8_t> left_;
    std::size_t top_count_ = 0;
    std::size_t left_count_ = 0;
    std::vector<std::int64_t> row_ones_;
    std::vector<std::int64_t> col_ones_;
    std::vector<std::int64_t> row_left_;
    std::vector<std::int64_t> col_top_;
    std::int64_t objective_ = 0;
};

std::vector<std::size_t> side_first_order(const std::vector<std::uint8_t>& first_side, std::size_t& first_count) {
    std::vector<std::size_t> order;
    order.reserve(first_side.size());
    for (std::size_t i = 0; i < first_side.size(); ++i) {
        if (first_side[i]) order.push_back(i);
    }
    first_count = order.size();
    for (std::size_t i = 0; i < first_side.size(); ++i) {
        if (!first_side[i]) order.push_back(i);
    }
    return order;
}

}  // namespace

SplitSearchResult search_split(const BinaryMatrix& matrix, std::size_t effort, std::uint64_t seed) {
    const std::size_t m = matrix.rows(), n = matrix.cols();
    if (m < 2 || n < 2) throw ArgumentError("split search requires at least 2 rows and 2 columns");

    const BinaryMatrix transposed = matrix.transposed();
    Rng rng(seed);
    std::vector<std::size_t> elements(m + n);
    std::size_t remaining = effort;

    std::int64_t best_objective = 0;
    std::int64_t initial_objective = 0;
    std::vector<std::uint8_t> best_top, best_left;
    const auto consider = [&](const Bisection& state) {
        if (best_top.empty() || state.objective() > best_objective) {
            best_objective = state.objective();
            best_top = state.top();
            best_left = state.left();
        }
    };

    bool first = true;
    do {
        Bisection state(matrix, transposed, rng);
        if (first) initial_objective = state.objective();
        first = false;
        consider(state);

        bool improved = true;
        while (improved && remaining > 0) {
            improved = false;
            std::iota(elements.begin(), elements.end(), std::size_t{0});
            rng.shuffle(std::span<std::size_t>(elements));
            for (std::size_t e : elements) {
                if (remaining == 0) break;
                --remaining;
                improved = state.try_move(e) || improved;
            }
        }
        consider(state);
    } while (remaining > 0);

    SplitSearchResult result;
    result.row_perm = side_first_order(best_top, result.r);
    result.col_perm = side_first_order(best_left, result.c);
    result.objective = best_objective;
    result.initial_objective = initial_objective;
    result.decomposition = make_decomposition(permute(matrix, result.row_perm, result.col_perm), result.r, result.c);
    return result;
}

}  // namespace scpbound
