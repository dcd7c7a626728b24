#include "scpbound/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include <fmt/format.h>

#include "scpbound/bounds.hpp"
#include "scpbound/decomp.hpp"
#include "scpbound/error.hpp"
#include "scpbound/refine.hpp"

namespace scpbound {

namespace {

template <typename F>
void attempt(InstanceRecord& record, std::string_view stage, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        if (!record.error.empty()) record.error += "; ";
        record.error += fmt::format("{}: {}", stage, e.what());
    }
}

void check_sound(InstanceRecord& record, std::string_view name, const std::optional<std::size_t>& k) {
    if (k && record.exact_status == "proved" && record.exact && *k < *record.exact) {
        record.violations.push_back(fmt::format("{}<{}", name, *record.exact));
    }
}

std::string fmt_real(const std::optional<double>& x) { return x ? fmt::format("{:.9g}", *x) : std::string(); }
std::string fmt_real(double x) { return fmt::format("{:.9g}", x); }
std::string fmt_size(const std::optional<std::size_t>& x) { return x ? std::to_string(*x) : std::string(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

template <typename T>
nlohmann::json json_opt(const std::optional<T>& x) {
    return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

/// Doubles round-tripped through the 9-digit text form, so JSON and CSV agree.
nlohmann::json json_real(const std::optional<double>& x) {
    return x ? nlohmann::json(std::stod(fmt_real(*x))) : nlohmann::json(nullptr);
}

const char* const csv_columns[] = {
    "model", "m", "n", "delta", "seed", "d1", "d2", "d3", "d4", "mu", "nu",
    "min_density", "max_density", "mean_density", "threshold",
    "first_moment", "hypergeometric", "homogeneous_certified", "homogeneous_literal", "bonferroni",
    "decomposed_sound", "decomposed_literal", "greedy", "exact", "exact_status",
    "greedy_ratio", "bound_ratio", "violations", "error",
};

std::vector<std::string> csv_row(const InstanceRecord& r) {
    const bool planted = r.spec.model == GenModel::planted;
    const auto block = [&](double x) { return planted ? fmt_real(x) : std::string(); };
    std::string violations;
    for (const auto& v : r.violations) violations += (violations.empty() ? "" : ";") + v;
    return {
        std::string(to_string(r.spec.model)), std::to_string(r.m), std::to_string(r.n), fmt_real(r.spec.delta),
        std::to_string(r.spec.seed), block(r.spec.blocks.d1), block(r.spec.blocks.d2), block(r.spec.blocks.d3),
        block(r.spec.blocks.d4), block(r.spec.blocks.mu), block(r.spec.blocks.nu),
        fmt_real(r.min_density), fmt_real(r.max_density), fmt_real(r.mean_density), fmt_real(r.threshold),
        fmt_size(r.first_moment), fmt_size(r.hypergeometric), fmt_size(r.homogeneous_certified),
        fmt_size(r.homogeneous_literal), fmt_size(r.bonferroni), fmt_size(r.decomposed_sound),
        fmt_size(r.decomposed_literal), fmt_size(r.greedy), fmt_size(r.exact), r.exact_status,
        fmt_real(r.greedy_ratio), fmt_real(r.bound_ratio), violations, r.error,
    };
}

}  // namespace

std::size_t ExperimentReport::violation_count() const {
    std::size_t total = 0;
    for (const auto& r : records) total += r.violations.size();
    return total;
}

InstanceRecord evaluate_instance(const GenSpec& spec, const ExperimentPlan& plan) {
    InstanceRecord record;
    record.spec = spec;
    record.m = spec.m;
    record.n = spec.n;

    std::optional<GeneratedInstance> instance;
    attempt(record, "generate", [&] { instance = generate(spec); });
    if (!instance) return record;
    const BinaryMatrix& matrix = instance->matrix;
    const RowProfile profile(matrix);
    record.min_density = profile.min_density();
    record.max_density = profile.max_density();
    record.mean_density = profile.mean_density();

    const double model_delta = spec.model == GenModel::planted ? record.mean_density : spec.delta;
    if (model_delta > 0.0 && model_delta < 1.0 && spec.m >= 2) {
        record.threshold = std::log(static_cast<double>(spec.m)) / -std::log1p(-model_delta);
    }

    const CoverSolution greedy = greedy_cover(matrix);
    if (greedy.feasible) record.greedy = greedy.size();

    if (spec.m <= plan.exact_max_rows && spec.n <= plan.exact_max_cols) {
        const CoverSolution exact = exact_cover(matrix, plan.node_budget);
        record.exact_status = std::string(to_string(exact.status));
        if (exact.feasible) record.exact = exact.size();
    } else {
        record.exact_status = "skipped";
    }

    if (auto zero = profile.first_zero_row()) {
        record.error = InfeasibleError(*zero).what();
        return record;
    }

    const auto& methods = plan.methods;
    if (methods.first_moment) attempt(record, "first-moment", [&] { record.first_moment = first_moment_bound(profile).k; });
    if (methods.hypergeometric) {
        attempt(record, "hypergeometric", [&] { record.hypergeometric = hypergeometric_first_moment_bound(profile).k; });
    }
    if (methods.homogeneous) {
        attempt(record, "homogeneous", [&] {
            const auto h = homogeneous_bound_certified(profile);
            record.homogeneous_certified = h.certified.k;
            record.homogeneous_literal = h.literal.k;
        });
    }
    if (methods.bonferroni) attempt(record, "bonferroni", [&] { record.bonferroni = bonferroni_bound(matrix).k; });
    if (methods.decomposed && spec.m >= 3) {
        attempt(record, "decomposed", [&] {
            const BlockDecomposition dec =
                instance->split ? make_decomposition(matrix, instance->split->r, instance->split->c)
                                : search_split(matrix, methods.split_effort, methods.split_seed).decomposition;
            if (!dec.valid) return;
            // a variant whose densities lose the block ordering has no bound
            const auto total = [&](DensityVariant variant) -> std::optional<std::size_t> {
                try {
                    const auto b = decomposed_bound(dec, variant);
                    if (b.feasible) return b.total;
                } catch (const ArgumentError&) {
                }
                return std::nullopt;
            };
            record.decomposed_sound = total(DensityVariant::sound);
            record.decomposed_literal = total(DensityVariant::literal);
        });
    }

    if (record.threshold) {
        if (record.greedy) record.greedy_ratio = static_cast<double>(*record.greedy) / *record.threshold;
        if (record.first_moment) record.bound_ratio = static_cast<double>(*record.first_moment) / *record.threshold;
    }

    check_sound(record, "first_moment", record.first_moment);
    check_sound(record, "hypergeometric", record.hypergeometric);
    check_sound(record, "homogeneous_certified", record.homogeneous_certified);
    check_sound(record, "bonferroni", record.bonferroni);
    check_sound(record, "decomposed_sound", record.decomposed_sound);
    return record;
}

ExperimentReport run_experiment(const ExperimentPlan& plan) {
    ExperimentReport report;
    report.records.resize(plan.instances.size());
    const std::size_t workers = std::min(plan.threads, plan.instances.size());
    if (workers <= 1) {
        for (std::size_t t = 0; t < plan.instances.size(); ++t) {
            report.records[t] = evaluate_instance(plan.instances[t], plan);
        }
        return report;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t t = next++; t < plan.instances.size(); t = next++) {
                report.records[t] = evaluate_instance(plan.instances[t], plan);
            }
        });
    }
    pool.clear();
    return report;
}

std::string report_csv(const ExperimentReport& report) {
    std::string out;
    for (std::size_t c = 0; c < std::size(csv_columns); ++c) out += (c ? "," : "") + std::string(csv_columns[c]);
    out += '\n';
    for (const auto& record : report.records) {
        const auto fields = csv_row(record);
        for (std::size_t c = 0; c < fields.size(); ++c) out += (c ? "," : "") + csv_field(fields[c]);
        out += '\n';
    }
    return out;
}

nlohmann::json report_json(const ExperimentReport& report) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : report.records) {
        records.push_back({
            {"spec", r.spec},
            {"m", r.m},
            {"n", r.n},
            {"min_density", json_real(r.min_density)},
            {"max_density", json_real(r.max_density)},
            {"mean_density", json_real(r.mean_density)},
            {"threshold", json_real(r.threshold)},
            {"first_moment", json_opt(r.first_moment)},
            {"hypergeometric", json_opt(r.hypergeometric)},
            {"homogeneous_certified", json_opt(r.homogeneous_certified)},
            {"homogeneous_literal", json_opt(r.homogeneous_literal)},
            {"bonferroni", json_opt(r.bonferroni)},
            {"decomposed_sound", json_opt(r.decomposed_sound)},
            {"decomposed_literal", json_opt(r.decomposed_literal)},
            {"greedy", json_opt(r.greedy)},
            {"exact", json_opt(r.exact)},
            {"exact_status", r.exact_status},
            {"greedy_ratio", json_real(r.greedy_ratio)},
            {"bound_ratio", json_real(r.bound_ratio)},
            {"violations", r.violations},
            {"error", r.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.error)},
        });
    }
    return {{"schema", "scpbound/1"}, {"violations", report.violation_count()}, {"records", std::move(records)}};
}

void write_report_files(const ExperimentReport& report, const std::optional<std::filesystem::path>& csv,
                        const std::optional<std::filesystem::path>& json) {
    const auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorKind::input, "cannot write '" + path.string() + "'");
        out << text;
        if (!out) throw Error(ErrorKind::input, "write failed for '" + path.string() + "'");
    };
    if (csv) write(*csv, report_csv(report));
    if (json) write(*json, report_json(report).dump(2) + "\n");
}

std::vector<GenSpec> expand_grid(GenModel model, const std::vector<std::pair<std::size_t, std::size_t>>& sizes,
                                 const std::vector<double>& deltas, std::size_t seeds, std::uint64_t base_seed) {
    std::vector<GenSpec> specs;
    for (const auto& [m, n] : sizes) {
        for (double delta : deltas) {
            for (std::size_t s = 0; s < seeds; ++s) {
                GenSpec spec;
                spec.model = model;
                spec.m = m;
                spec.n = n;
                spec.delta = delta;
                spec.seed = base_seed + s;
                specs.push_back(spec);
            }
        }
    }
    return specs;
}

ExperimentPlan plan_from_json(const nlohmann::json& j) {
    ExperimentPlan plan;
    try {
        if (j.contains("instances")) {
            for (const auto& spec : j.at("instances")) plan.instances.push_back(spec.get<GenSpec>());
        }
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            std::vector<std::pair<std::size_t, std::size_t>> sizes;
            for (const auto& s : g.at("sizes")) sizes.emplace_back(s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>());
            const auto more = expand_grid(parse_gen_model(g.at("model").get<std::string>()), sizes,
                                          g.at("delta").get<std::vector<double>>(), g.value("seeds", std::size_t{1}),
                                          g.value("base_seed", std::uint64_t{1}));
            plan.instances.insert(plan.instances.end(), more.begin(), more.end());
        }
        if (j.contains("methods")) {
            auto& m = plan.methods;
            m.first_moment = m.hypergeometric = m.homogeneous = m.bonferroni = m.decomposed = false;
            for (const auto& name : j.at("methods")) {
                const auto s = name.get<std::string>();
                if (s == "first-moment") m.first_moment = true;
                else if (s == "hypergeometric") m.hypergeometric = true;
                else if (s == "homogeneous") m.homogeneous = true;
                else if (s == "bonferroni") m.bonferroni = true;
                else if (s == "decomposed") m.decomposed = true;
                else throw ArgumentError("unknown method '" + s + "' in plan");
            }
        }
        plan.methods.split_effort = j.value("split_effort", plan.methods.split_effort);
        plan.methods.split_seed = j.value("split_seed", plan.methods.split_seed);
        if (j.contains("exact_cutoff")) {
            plan.exact_max_rows = j.at("exact_cutoff").value("m", plan.exact_max_rows);
            plan.exact_max_cols = j.at("exact_cutoff").value("n", plan.exact_max_cols);
        }
        plan.node_budget = j.value("node_budget", plan.node_budget);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::input, std::string("invalid experiment plan: ") + e.what());
    }
    return plan;
}

std::optional<double> median(std::vector<double> values) {
    if (values.empty()) return std::nullopt;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<TrendRow> greedy_trend(const ExperimentReport& report) {
    std::vector<TrendRow> rows;
    std::vector<std::vector<double>> ratios;
    for (const auto& r : report.records) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const TrendRow& t) { return t.m == r.m && t.n == r.n; });
        if (it == rows.end()) {
            rows.push_back({r.m, r.n, 0, std::nullopt});
            ratios.emplace_back();
            it = rows.end() - 1;
        }
        const auto idx = static_cast<std::size_t>(it - rows.begin());
        ++it->count;
        if (r.greedy_ratio) ratios[idx].push_back(*r.greedy_ratio);
    }
    for (std::size_t t = 0; t < rows.size(); ++t) rows[t].median_greedy_ratio = median(ratios[t]);
    return rows;
}

}  // namespace scpbound
