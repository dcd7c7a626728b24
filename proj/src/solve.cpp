#include "scpbound/solve.hpp"

#include <algorithm>
#include <bit>

#include "scpbound/error.hpp"

namespace scpbound {

namespace {

using Word = BinaryMatrix::Word;
using Bits = std::vector<Word>;

/// Row set with the first m bits set.
Bits all_rows(std::size_t m) {
    Bits bits((m + BinaryMatrix::word_bits - 1) / BinaryMatrix::word_bits, ~Word{0});
    if (const auto tail = m % BinaryMatrix::word_bits; tail != 0) bits.back() = (Word{1} << tail) - 1;
    return bits;
}

std::size_t count_and(std::span<const Word> a, std::span<const Word> b) {
    std::size_t count = 0;
    for (std::size_t w = 0; w < a.size(); ++w) count += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
    return count;
}

void clear_bits(Bits& target, std::span<const Word> mask) {
    for (std::size_t w = 0; w < target.size(); ++w) target[w] &= ~mask[w];
}

bool is_empty(const Bits& bits) {
    return std::all_of(bits.begin(), bits.end(), [](Word w) { return w == 0; });
}

bool has_zero_row(const BinaryMatrix& matrix) {
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        if (matrix.row_ones(i) == 0) return true;
    }
    return false;
}

class BranchAndBound {
public:
    BranchAndBound(const BinaryMatrix& matrix, std::uint64_t budget, std::vector<std::size_t> incumbent)
        : matrix_(matrix), columns_(matrix.transposed()), budget_(budget), excluded_(matrix.cols(), 0),
          best_(std::move(incumbent)) {}

    void run() { dfs(all_rows(matrix_.rows())); }

    [[nodiscard]] std::vector<std::size_t> best() const {
        auto sorted = best_;
        std::sort(sorted.begin(), sorted.end());
        return sorted;
    }
    [[nodiscard]] bool exhausted() const noexcept { return exhausted_; }
    [[nodiscard]] std::uint64_t nodes() const noexcept { return nodes_; }

private:
    void dfs(const Bits& uncovered) {
        if (nodes_ >= budget_) {
            exhausted_ = true;
            return;
        }
        ++nodes_;
        if (is_empty(uncovered)) {
            if (current_.size() < best_.size()) best_ = current_;
            return;
        }
        if (current_.size() + 1 >= best_.size()) return;

        const auto candidates = branch_candidates(uncovered);
        if (candidates.empty()) return;

        std::vector<std::size_t> newly_excluded;
        for (std::size_t col : candidates) {
            Bits next = uncovered;
            clear_bits(next, columns_.row(col));
            current_.push_back(col);
            dfs(next);
            current_.pop_back();
            if (exhausted_) break;
            excluded_[col] = 1;
            newly_excluded.push_back(col);
        }
        for (std::size_t col : newly_excluded) excluded_[col] = 0;
    }

    /// Available columns of the most constrained uncovered row, best coverage first.
    std::vector<std::size_t> branch_candidates(const Bits& uncovered) const {
        std::size_t best_row = 0;
        std::size_t best_count = static_cast<std::size_t>(-1);
        for (std::size_t w = 0; w < uncovered.size(); ++w) {
            for (Word bits = uncovered[w]; bits != 0; bits &= bits - 1) {
                const std::size_t i = w * BinaryMatrix::word_bits + static_cast<std::size_t>(std::countr_zero(bits));
                std::size_t count = 0;
                for_each_column(i, [&](std::size_t j) { count += excluded_[j] ? 0 : 1; });
                if (count < best_count) {
                    best_count = count;
                    best_row = i;
                }
            }
        }
        std::vector<std::pair<std::size_t, std::size_t>> scored;  // (coverage, column)
        for_each_column(best_row, [&](std::size_t j) {
            if (!excluded_[j]) scored.emplace_back(count_and(columns_.row(j), uncovered), j);
        });
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        std::vector<std::size_t> out;
        out.reserve(scored.size());
        for (const auto& [coverage, j] : scored) out.push_back(j);
        return out;
    }

    template <typename F>
    void for_each_column(std::size_t row, F&& f) const {
        const auto bits = matrix_.row(row);
        for (std::size_t w = 0; w < bits.size(); ++w) {
            for (Word word = bits[w]; word != 0; word &= word - 1) {
                f(w * BinaryMatrix::word_bits + static_cast<std::size_t>(std::countr_zero(word)));
            }
        }
    }

    const BinaryMatrix& matrix_;
    BinaryMatrix columns_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
    std::vector<std::uint8_t> excluded_;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
};

}  // namespace

std::string_view to_string(SolveMethod method) noexcept {
    return method == SolveMethod::greedy ? "greedy" : "exact";
}

std::string_view to_string(SolveStatus status) noexcept {
    switch (status) {
        case SolveStatus::heuristic: return "heuristic";
        case SolveStatus::proved: return "proved";
        case SolveStatus::budget_exhausted: return "budget-exhausted";
        case SolveStatus::infeasible: return "infeasible";
    }
    return "unknown";
}

bool verify_cover(const BinaryMatrix& matrix, std::span<const std::size_t> columns) {
    for (std::size_t j : columns) {
        if (j >= matrix.cols()) {
            throw ArgumentError("column index " + std::to_string(j + 1) + " out of range 1.." +
                                std::to_string(matrix.cols()));
        }
    }
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        const bool covered = std::any_of(columns.begin(), columns.end(), [&](std::size_t j) { return matrix.at(i, j); });
        if (!covered) return false;
    }
    return true;
}

CoverSolution greedy_cover(const BinaryMatrix& matrix) {
    CoverSolution solution;
    solution.method = SolveMethod::greedy;
    const BinaryMatrix columns = matrix.transposed();
    Bits uncovered = all_rows(matrix.rows());

    while (!is_empty(uncovered)) {
        std::size_t best_col = 0, best_gain = 0;
        for (std::size_t j = 0; j < columns.rows(); ++j) {
            const std::size_t gain = count_and(columns.row(j), uncovered);
            if (gain > best_gain) {
                best_gain = gain;
                best_col = j;
            }
        }
        if (best_gain == 0) break;
        solution.columns.push_back(best_col);
        clear_bits(uncovered, columns.row(best_col));
    }
    solution.feasible = is_empty(uncovered);
    solution.status = solution.feasible ? SolveStatus::heuristic : SolveStatus::infeasible;
    std::sort(solution.columns.begin(), solution.columns.end());
    return solution;
}

CoverSolution exact_cover(const BinaryMatrix& matrix, std::uint64_t node_budget) {
    CoverSolution solution;
    solution.method = SolveMethod::exact;
    if (has_zero_row(matrix)) {
        solution.status = SolveStatus::infeasible;
        return solution;
    }
    const CoverSolution incumbent = greedy_cover(matrix);
    BranchAndBound search(matrix, node_budget, incumbent.columns);
    search.run();
    solution.columns = search.best();
    solution.feasible = true;
    solution.nodes = search.nodes();
    solution.status = search.exhausted() ? SolveStatus::budget_exhausted : SolveStatus::proved;
    return solution;
}

}  // namespace scpbound
