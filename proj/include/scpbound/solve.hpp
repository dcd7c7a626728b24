#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "scpbound/matrix.hpp"

namespace scpbound {

enum class SolveMethod { greedy, exact };

enum class SolveStatus {
    heuristic,         ///< greedy result, no optimality claim
    proved,            ///< exact search completed
    budget_exhausted,  ///< exact search stopped at the node budget; best found so far
    infeasible,        ///< some row has no 1-entry
};

[[nodiscard]] std::string_view to_string(SolveMethod method) noexcept;
[[nodiscard]] std::string_view to_string(SolveStatus status) noexcept;

struct CoverSolution {
    std::vector<std::size_t> columns;  ///< sorted, 0-based
    bool feasible = false;
    SolveMethod method = SolveMethod::greedy;
    SolveStatus status = SolveStatus::heuristic;
    std::uint64_t nodes = 0;

    [[nodiscard]] std::size_t size() const noexcept { return columns.size(); }
};

inline constexpr std::uint64_t default_node_budget = 10'000'000;

/// True iff every row has a 1 in at least one of the given columns.
[[nodiscard]] bool verify_cover(const BinaryMatrix& matrix, std::span<const std::size_t> columns);

/// Most-newly-covered-rows first, ties to the lowest column index.
[[nodiscard]] CoverSolution greedy_cover(const BinaryMatrix& matrix);

/**
 * Depth-first branch and bound seeded with the greedy cover. Branches on the
 * uncovered row with the fewest available columns, trying those columns by
 * decreasing coverage; a column is excluded from the sibling branches that
 * follow it.
 */
[[nodiscard]] CoverSolution exact_cover(const BinaryMatrix& matrix, std::uint64_t node_budget = default_node_budget);

}  // namespace scpbound
