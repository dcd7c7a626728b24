#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "scpbound/gen.hpp"
#include "scpbound/solve.hpp"

namespace scpbound {

struct MethodSelection {
    bool first_moment = true;
    bool hypergeometric = true;
    bool homogeneous = true;
    bool bonferroni = true;
    bool decomposed = false;
    std::size_t split_effort = 10'000;
    std::uint64_t split_seed = 1;
};

struct ExperimentPlan {
    std::vector<GenSpec> instances;
    MethodSelection methods;
    /// Exact solving runs only when m <= exact_max_rows and n <= exact_max_cols.
    std::size_t exact_max_rows = 16;
    std::size_t exact_max_cols = 20;
    std::uint64_t node_budget = default_node_budget;
    /// 0 or 1 runs sequentially.
    std::size_t threads = 0;
};

/// One generated instance with every requested bound and solver result.
struct InstanceRecord {
    GenSpec spec;
    std::size_t m = 0;
    std::size_t n = 0;
    double min_density = 0.0;
    double max_density = 0.0;
    double mean_density = 0.0;
    /// log m / |log(1 - delta)|; delta is the model density (measured mean for planted instances).
    std::optional<double> threshold;

    std::optional<std::size_t> first_moment;
    std::optional<std::size_t> hypergeometric;
    std::optional<std::size_t> homogeneous_certified;
    std::optional<std::size_t> homogeneous_literal;
    std::optional<std::size_t> bonferroni;
    std::optional<std::size_t> decomposed_sound;
    std::optional<std::size_t> decomposed_literal;

    std::optional<std::size_t> greedy;
    std::optional<std::size_t> exact;
    std::string exact_status;  ///< proved | budget-exhausted | infeasible | skipped

    std::optional<double> greedy_ratio;  ///< greedy / threshold
    std::optional<double> bound_ratio;   ///< first_moment / threshold

    /// Sound bounds that fall below a proved optimum, as "method<optimum".
    std::vector<std::string> violations;
    std::string error;
};

struct ExperimentReport {
    std::vector<InstanceRecord> records;

    [[nodiscard]] std::size_t violation_count() const;
};

/// Generates and evaluates every planned instance; records are in plan order.
[[nodiscard]] ExperimentReport run_experiment(const ExperimentPlan& plan);

/// Evaluates one instance; never throws for per-instance failures.
[[nodiscard]] InstanceRecord evaluate_instance(const GenSpec& spec, const ExperimentPlan& plan);

/// Comma-separated header plus one line per record; column order is fixed.
[[nodiscard]] std::string report_csv(const ExperimentReport& report);
[[nodiscard]] nlohmann::json report_json(const ExperimentReport& report);
void write_report_files(const ExperimentReport& report, const std::optional<std::filesystem::path>& csv,
                        const std::optional<std::filesystem::path>& json);

/// Specs for every (size, delta) pair and seeds base_seed .. base_seed + seeds - 1.
[[nodiscard]] std::vector<GenSpec> expand_grid(GenModel model, const std::vector<std::pair<std::size_t, std::size_t>>& sizes,
                                               const std::vector<double>& deltas, std::size_t seeds,
                                               std::uint64_t base_seed);

[[nodiscard]] ExperimentPlan plan_from_json(const nlohmann::json& j);

struct TrendRow {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t count = 0;
    std::optional<double> median_greedy_ratio;
};

/// Median greedy/threshold ratio per (m, n), in order of first appearance.
[[nodiscard]] std::vector<TrendRow> greedy_trend(const ExperimentReport& report);

[[nodiscard]] std::optional<double> median(std::vector<double> values);

}  // namespace scpbound
