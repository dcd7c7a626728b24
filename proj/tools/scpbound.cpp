// scpbound: a-priori set-covering bounds, solvers and instance generation.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "scpbound/bounds.hpp"
#include "scpbound/decomp.hpp"
#include "scpbound/error.hpp"
#include "scpbound/experiment.hpp"
#include "scpbound/gen.hpp"
#include "scpbound/matrix.hpp"
#include "scpbound/refine.hpp"
#include "scpbound/solve.hpp"

namespace {

using nlohmann::json;
using namespace scpbound;

constexpr const char* schema = "scpbound/1";

std::string real(double x) { return fmt::format("{:.9g}", x); }

/// Same 9-digit rounding as the text output.
json jreal(double x) { return std::stod(real(x)); }

template <typename T>
json jopt(const std::optional<T>& x) {
    if (!x) return nullptr;
    if constexpr (std::is_floating_point_v<T>) {
        return jreal(*x);
    } else {
        return *x;
    }
}

std::string opt_text(const std::optional<std::size_t>& k) { return k ? std::to_string(*k) : "none"; }
std::string opt_text(const std::optional<double>& x) { return x ? real(*x) : "-"; }

std::string one_based(const std::vector<std::size_t>& indices) {
    std::string out;
    for (std::size_t i : indices) out += (out.empty() ? "" : " ") + std::to_string(i + 1);
    return out;
}

std::vector<std::size_t> one_based_json(const std::vector<std::size_t>& indices) {
    std::vector<std::size_t> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(i + 1);
    return out;
}

std::size_t thread_count() {
    const char* env = std::getenv("SCPBOUND_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    try {
        return static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
        throw ArgumentError(std::string("SCPBOUND_THREADS must be a non-negative integer, got '") + env + "'");
    }
}

// ---------------------------------------------------------------- bound

struct BoundOptions {
    std::string input = "-";
    std::string method = "all";
    std::string format = "text";
    std::size_t max_rows = default_bonferroni_row_cap;
};

struct NamedBound {
    std::string label;
    BoundResult result;
};

json bound_json(const NamedBound& b) {
    return {{"method", std::string(to_string(b.result.method))},
            {"variant", b.label},
            {"k", jopt(b.result.k)},
            {"value_at_k", jopt(b.result.value_at_k)},
            {"value_at_prev", jopt(b.result.value_at_prev)},
            {"sound", b.result.sound}};
}

int run_bound(const BoundOptions& opt) {
    const BinaryMatrix matrix = read_matrix(opt.input);
    const RowProfile profile(matrix);
    require_coverable(profile);

    const bool all = opt.method == "all";
    std::vector<NamedBound> bounds;
    if (all || opt.method == "first-moment") bounds.push_back({"first-moment", first_moment_bound(profile)});
    if (all || opt.method == "hypergeometric") {
        bounds.push_back({"hypergeometric", hypergeometric_first_moment_bound(profile)});
    }
    if (all || opt.method == "homogeneous") {
        const auto h = homogeneous_bound_certified(profile);
        bounds.push_back({"homogeneous-certified", h.certified});
        bounds.push_back({"homogeneous-literal", h.literal});
    }
    if (all || opt.method == "bonferroni") {
        if (all && matrix.rows() > opt.max_rows) {
            std::cerr << "scpbound: skipping bonferroni, " << matrix.rows() << " rows exceed --max-rows\n";
        } else {
            bounds.push_back({"bonferroni", bonferroni_bound(matrix, opt.max_rows)});
        }
    }

    if (opt.format == "json") {
        json out = {{"schema", schema}, {"command", "bound"}, {"m", matrix.rows()}, {"n", matrix.cols()}};
        out["bounds"] = json::array();
        for (const auto& b : bounds) out["bounds"].push_back(bound_json(b));
        std::cout << out.dump(2) << "\n";
    } else {
        fmt::print("m={} n={} min_density={} max_density={}\n", matrix.rows(), matrix.cols(),
                   real(profile.min_density()), real(profile.max_density()));
        for (const auto& b : bounds) {
            fmt::print("{:<22} k={:<6} value_at_k={:<14} value_at_prev={:<14} {}\n", b.label, opt_text(b.result.k),
                       opt_text(b.result.value_at_k), opt_text(b.result.value_at_prev),
                       b.result.sound ? "sound" : "literal");
        }
    }

    const bool any_sound = std::any_of(bounds.begin(), bounds.end(),
                                       [](const NamedBound& b) { return b.result.sound && b.result.k; });
    const bool all_found =
        std::all_of(bounds.begin(), bounds.end(), [](const NamedBound& b) { return b.result.k.has_value(); });
    if (all ? !any_sound : !all_found) {
        std::cerr << "scpbound: no k <= n satisfies the bound condition\n";
        return static_cast<int>(ErrorKind::bound_not_found);
    }
    return 0;
}

// ---------------------------------------------------------------- refine

struct RefineOptions {
    std::string input;
    std::optional<std::size_t> k;
    std::optional<std::size_t> m;
    std::optional<double> delta;
    std::size_t max_rows = default_bonferroni_row_cap;
    std::string format = "text";
};

int run_refine(const RefineOptions& opt) {
    if (opt.m.has_value() != opt.delta.has_value()) throw ArgumentError("--m and --delta must be given together");
    const double root = truncated_series_root();
    json out = {{"schema", schema},
                {"command", "refine"},
                {"series_root", jreal(root)},
                {"historical_constant", historical_series_constant}};
    std::vector<std::string> lines;
    lines.push_back(fmt::format("series root y*={} (historical constant {})", real(root), historical_series_constant));

    int code = 0;
    if (!opt.input.empty()) {
        const BinaryMatrix matrix = read_matrix(opt.input);
        out["m"] = matrix.rows();
        out["n"] = matrix.cols();
        if (opt.k) {
            const BonferroniWitness w = bonferroni_condition(matrix, *opt.k);
            out["witness"] = {{"k", w.k},           {"log_s1", jreal(w.s1)}, {"log_s2", jreal(w.s2)},
                              {"log_s3", jreal(w.s3)}, {"log_rhs", jreal(w.rhs)}, {"satisfied", w.satisfied}};
            lines.push_back(fmt::format("witness k={} log_s1={} log_s2={} log_s3={} log_rhs={} satisfied={}", w.k,
                                        real(w.s1), real(w.s2), real(w.s3), real(w.rhs), w.satisfied));
        } else {
            const BoundResult b = bonferroni_bound(matrix, opt.max_rows);
            out["bound"] = bound_json({"bonferroni", b});
            lines.push_back(fmt::format("bonferroni k={} value_at_k={} value_at_prev={}", opt_text(b.k),
                                        opt_text(b.value_at_k), opt_text(b.value_at_prev)));
            if (!b.k) code = static_cast<int>(ErrorKind::bound_not_found);
        }
    }
    if (opt.m) {
        const double refined = constant_density_refined_bound(*opt.m, *opt.delta);
        const double plain = std::log(static_cast<double>(*opt.m)) / miss_rate(*opt.delta);
        out["constant_density"] = {{"m", *opt.m},
                                   {"delta", *opt.delta},
                                   {"refined_threshold", jreal(refined)},
                                   {"first_moment_threshold", jreal(plain)}};
        lines.push_back(fmt::format("constant density m={} delta={}: refined threshold={} first-moment threshold={}",
                                    *opt.m, real(*opt.delta), real(refined), real(plain)));
    }

    if (opt.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& line : lines) std::cout << line << "\n";
    }
    if (code != 0) std::cerr << "scpbound: no k <= n satisfies the Bonferroni condition\n";
    return code;
}

// ---------------------------------------------------------------- decompose

struct DecomposeOptions {
    std::string input = "-";
    std::vector<std::size_t> split;
    bool search = false;
    std::size_t effort = 10'000;
    std::uint64_t seed = 1;
    bool allow_invalid = false;
    std::vector<double> perfect;
    std::vector<double> bordered;
    std::string format = "text";
};

json densities_json(const BlockDensities& d) {
    return {jreal(d.d1), jreal(d.d2), jreal(d.d3), jreal(d.d4)};
}

std::string densities_text(const BlockDensities& d) {
    return fmt::format("({}, {}, {}, {})", real(d.d1), real(d.d2), real(d.d3), real(d.d4));
}

std::size_t as_count(double x, const char* what) {
    if (!(x >= 0.0) || std::floor(x) != x) throw ArgumentError(std::string(what) + " must be a non-negative integer");
    return static_cast<std::size_t>(x);
}

int run_formula(const DecomposeOptions& opt) {
    json out = {{"schema", schema}, {"command", "decompose"}};
    std::vector<std::string> lines;
    if (!opt.perfect.empty()) {
        const auto m = as_count(opt.perfect[0], "m");
        const double value = perfect_block_bound(m, opt.perfect[1], opt.perfect[2], opt.perfect[3]);
        out["perfect_block"] = jreal(value);
        lines.push_back("perfect block bound " + real(value));
    }
    if (!opt.bordered.empty()) {
        const auto m = as_count(opt.bordered[0], "m");
        const double value = symmetric_bordered_bound(m, opt.bordered[1], opt.bordered[2]);
        const double homogeneous = std::log(static_cast<double>(m)) / miss_rate(opt.bordered[1]);
        out["symmetric_bordered"] = jreal(value);
        out["homogeneous_threshold"] = jreal(homogeneous);
        lines.push_back(fmt::format("symmetric bordered bound {} (homogeneous threshold {})", real(value),
                                    real(homogeneous)));
    }
    if (opt.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& line : lines) std::cout << line << "\n";
    }
    return 0;
}

int run_decompose(const DecomposeOptions& opt) {
    if (!opt.perfect.empty() || !opt.bordered.empty()) return run_formula(opt);
    if (opt.search == !opt.split.empty()) throw ArgumentError("decompose needs exactly one of --split r,c or --search");

    const BinaryMatrix matrix = read_matrix(opt.input);
    json out = {{"schema", schema}, {"command", "decompose"}, {"m", matrix.rows()}, {"n", matrix.cols()}};
    std::vector<std::string> lines;

    BlockDecomposition dec;
    if (opt.search) {
        const auto found = search_split(matrix, opt.effort, opt.seed);
        dec = found.decomposition;
        out["search"] = {{"row_perm", one_based_json(found.row_perm)},
                         {"col_perm", one_based_json(found.col_perm)},
                         {"objective", found.objective},
                         {"initial_objective", found.initial_objective}};
        lines.push_back("row_perm: " + one_based(found.row_perm));
        lines.push_back("col_perm: " + one_based(found.col_perm));
        lines.push_back(fmt::format("objective: {} (initial {})", found.objective, found.initial_objective));
    } else {
        dec = make_decomposition(matrix, opt.split[0], opt.split[1]);
    }

    out["decomposition"] = {{"r", dec.r},
                            {"c", dec.c},
                            {"mu", jreal(dec.mu)},
                            {"nu", jreal(dec.nu)},
                            {"max_density", densities_json(dec.max_density)},
                            {"min_density", densities_json(dec.min_density)},
                            {"overall_max_density", jreal(dec.overall_max_density)},
                            {"valid", dec.valid}};
    lines.push_back(fmt::format("split r={} c={} mu={} nu={} valid={}", dec.r, dec.c, real(dec.mu), real(dec.nu),
                                dec.valid));
    lines.push_back("block max densities " + densities_text(dec.max_density) + " overall " +
                    real(dec.overall_max_density));
    lines.push_back("block min densities " + densities_text(dec.min_density));

    for (auto variant : {DensityVariant::sound, DensityVariant::literal}) {
        const std::string name = variant == DensityVariant::sound ? "sound" : "literal";
        try {
            const auto b = decomposed_bound(dec, variant, opt.allow_invalid);
            out["bounds"][name] = {{"alpha", jreal(b.alpha)},
                                   {"c1", jreal(b.c1)},
                                   {"c2", jreal(b.c2)},
                                   {"delta_det", jreal(b.delta_det)},
                                   {"k1_real", jreal(b.k1_real)},
                                   {"k2_real", jreal(b.k2_real)},
                                   {"k1", b.k1},
                                   {"k2", b.k2},
                                   {"total", b.total},
                                   {"independent", b.independent},
                                   {"condition", jreal(b.condition)},
                                   {"sound", b.sound},
                                   {"feasible", b.feasible}};
            lines.push_back(fmt::format(
                "{:<8} alpha={} k1_real={} k2_real={} k1={} k2={} total={} feasible={}{}", name, real(b.alpha),
                real(b.k1_real), real(b.k2_real), b.k1, b.k2, b.total, b.feasible, b.independent ? " independent" : ""));
        } catch (const ArgumentError& e) {
            out["bounds"][name] = {{"error", e.what()}};
            lines.push_back(fmt::format("{:<8} unavailable: {}", name, e.what()));
        }
    }

    if (opt.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& line : lines) std::cout << line << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- solve

struct SolveOptions {
    std::string input = "-";
    bool exact = false;
    std::uint64_t budget = default_node_budget;
    std::string format = "text";
};

int run_solve(const SolveOptions& opt) {
    const BinaryMatrix matrix = read_matrix(opt.input);
    const CoverSolution s = opt.exact ? exact_cover(matrix, opt.budget) : greedy_cover(matrix);
    if (!s.feasible) throw InfeasibleError(*RowProfile(matrix).first_zero_row());

    if (opt.format == "json") {
        json out = {{"schema", schema},
                    {"command", "solve"},
                    {"method", std::string(to_string(s.method))},
                    {"columns", one_based_json(s.columns)},
                    {"size", s.size()},
                    {"status", std::string(to_string(s.status))},
                    {"nodes", s.nodes}};
        std::cout << out.dump(2) << "\n";
    } else {
        fmt::print("columns: {}\nsize: {}\nstatus: {}\n", one_based(s.columns), s.size(), to_string(s.status));
    }
    return 0;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
    std::string spec_file;
    std::string model = "constant-density";
    std::size_t m = 0;
    std::size_t n = 0;
    double delta = 0.5;
    std::uint64_t seed = 1;
    std::vector<double> blocks;
    double mu = 0.0;
    double nu = 0.0;
    std::string format = "dense";
    std::string output = "-";
};

int run_gen(const GenOptions& opt) {
    GenSpec spec;
    if (!opt.spec_file.empty()) {
        std::ifstream in(opt.spec_file);
        if (!in) throw Error(ErrorKind::input, "cannot open '" + opt.spec_file + "'");
        try {
            spec = json::parse(in).get<GenSpec>();
        } catch (const json::parse_error& e) {
            throw Error(ErrorKind::input, std::string("invalid generator spec: ") + e.what());
        }
    } else {
        if (opt.m == 0 || opt.n == 0) throw ArgumentError("gen needs --m and --n (or --spec)");
        spec.model = parse_gen_model(opt.model);
        spec.m = opt.m;
        spec.n = opt.n;
        spec.delta = opt.delta;
        spec.seed = opt.seed;
        if (spec.model == GenModel::planted) {
            if (opt.blocks.size() != 4) throw ArgumentError("planted model needs --blocks d1,d2,d3,d4");
            spec.blocks = {opt.blocks[0], opt.blocks[1], opt.blocks[2], opt.blocks[3], opt.mu, opt.nu};
        }
    }
    if (opt.format != "dense" && opt.format != "sparse") throw ArgumentError("--format must be dense or sparse");
    const auto instance = generate(spec);
    std::string text;
    if (instance.split) text = fmt::format("# planted split r={} c={}\n", instance.split->r, instance.split->c);
    text += serialize_matrix(instance.matrix, opt.format == "dense" ? MatrixFormat::dense : MatrixFormat::sparse);

    if (opt.output == "-") {
        std::cout << text;
    } else {
        std::ofstream out(opt.output, std::ios::binary);
        if (!out || !(out << text)) throw Error(ErrorKind::input, "cannot write '" + opt.output + "'");
    }
    return 0;
}

// ---------------------------------------------------------------- experiment

struct ExperimentOptions {
    std::string plan_file;
    std::string model = "constant-density";
    std::vector<std::string> sizes;
    std::vector<double> deltas;
    std::size_t seeds = 1;
    std::uint64_t base_seed = 1;
    std::vector<std::string> methods;
    bool decompose = false;
    std::size_t effort = 10'000;
    std::uint64_t split_seed = 1;
    std::size_t exact_max_m = 16;
    std::size_t exact_max_n = 20;
    std::uint64_t budget = default_node_budget;
    std::string csv;
    std::string json_path;
    std::string format = "text";
};

std::pair<std::size_t, std::size_t> parse_size(const std::string& s) {
    const auto x = s.find('x');
    try {
        if (x == std::string::npos) {
            const auto v = static_cast<std::size_t>(std::stoul(s));
            return {v, v};
        }
        return {static_cast<std::size_t>(std::stoul(s.substr(0, x))),
                static_cast<std::size_t>(std::stoul(s.substr(x + 1)))};
    } catch (const std::exception&) {
        throw ArgumentError("invalid size '" + s + "', expected MxN or M");
    }
}

int run_experiment_cmd(const ExperimentOptions& opt) {
    ExperimentPlan plan;
    if (!opt.plan_file.empty()) {
        std::ifstream in(opt.plan_file);
        if (!in) throw Error(ErrorKind::input, "cannot open '" + opt.plan_file + "'");
        try {
            plan = plan_from_json(json::parse(in));
        } catch (const json::parse_error& e) {
            throw Error(ErrorKind::input, std::string("invalid experiment plan: ") + e.what());
        }
    } else {
        if (opt.sizes.empty() || opt.deltas.empty()) throw ArgumentError("experiment needs --plan or --sizes and --delta");
        std::vector<std::pair<std::size_t, std::size_t>> sizes;
        for (const auto& s : opt.sizes) sizes.push_back(parse_size(s));
        plan.instances = expand_grid(parse_gen_model(opt.model), sizes, opt.deltas, opt.seeds, opt.base_seed);
        plan.exact_max_rows = opt.exact_max_m;
        plan.exact_max_cols = opt.exact_max_n;
        plan.node_budget = opt.budget;
        plan.methods.split_effort = opt.effort;
        plan.methods.split_seed = opt.split_seed;
        if (!opt.methods.empty()) {
            json names = opt.methods;
            plan.methods = plan_from_json({{"methods", names}}).methods;
            plan.methods.split_effort = opt.effort;
            plan.methods.split_seed = opt.split_seed;
        }
        if (opt.decompose) plan.methods.decomposed = true;
    }
    plan.threads = thread_count();

    const ExperimentReport report = run_experiment(plan);
    write_report_files(report, opt.csv.empty() ? std::nullopt : std::optional<std::filesystem::path>(opt.csv),
                       opt.json_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(opt.json_path));

    if (opt.format == "json") {
        std::cout << report_json(report).dump(2) << "\n";
    } else if (opt.format == "csv") {
        std::cout << report_csv(report);
    } else {
        fmt::print("{:<17} {:>5} {:>5} {:>6} {:>6} {:>5} {:>5} {:>5} {:>5} {:>6} {:>5} {:>6} {:>9}\n", "model", "m", "n",
                   "seed", "fm", "hyp", "homC", "bonf", "dec", "greedy", "exact", "status", "g/thresh");
        for (const auto& r : report.records) {
            const auto cell = [](const std::optional<std::size_t>& x) { return x ? std::to_string(*x) : "-"; };
            fmt::print("{:<17} {:>5} {:>5} {:>6} {:>6} {:>5} {:>5} {:>5} {:>5} {:>6} {:>5} {:>6} {:>9}{}\n",
                       to_string(r.spec.model), r.m, r.n, r.spec.seed, cell(r.first_moment), cell(r.hypergeometric),
                       cell(r.homogeneous_certified), cell(r.bonferroni), cell(r.decomposed_sound), cell(r.greedy),
                       cell(r.exact), r.exact_status.substr(0, 6), opt_text(r.greedy_ratio),
                       r.error.empty() ? "" : "  ! " + r.error);
        }
        fmt::print("\nmedian greedy / (log m / |log(1-delta)|):\n");
        for (const auto& t : greedy_trend(report)) {
            fmt::print("  {}x{} ({} instances): {}\n", t.m, t.n, t.count, opt_text(t.median_greedy_ratio));
        }
        fmt::print("sound-bound violations: {}\n", report.violation_count());
    }

    if (report.violation_count() > 0) {
        std::cerr << "scpbound: " << report.violation_count() << " sound bound(s) fell below a proved optimum\n";
        return static_cast<int>(ErrorKind::internal);
    }
    return 0;
}

void add_format(CLI::App* cmd, std::string& target, std::vector<std::string> choices) {
    cmd->add_option("--format", target, "Output format")->check(CLI::IsMember(std::move(choices)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"A-priori upper bounds for unit-cost set covering"};
    app.require_subcommand(1, 1);

    BoundOptions bound;
    auto* bound_cmd = app.add_subcommand("bound", "First-moment, hypergeometric, homogeneous and Bonferroni bounds");
    bound_cmd->add_option("-i,--input", bound.input, "Instance file, '-' for stdin");
    bound_cmd->add_option("--method", bound.method, "Bound to compute")
        ->check(CLI::IsMember({"first-moment", "hypergeometric", "homogeneous", "bonferroni", "all"}));
    bound_cmd->add_option("--max-rows", bound.max_rows, "Row cap for the Bonferroni triple sums");
    add_format(bound_cmd, bound.format, {"text", "json"});

    RefineOptions refine;
    auto* refine_cmd = app.add_subcommand("refine", "Third-order Bonferroni refinement and the series root");
    refine_cmd->add_option("-i,--input", refine.input, "Instance file, '-' for stdin");
    refine_cmd->add_option("--k", refine.k, "Evaluate the condition at this k only");
    refine_cmd->add_option("--m", refine.m, "Rows for the constant-density refined threshold");
    refine_cmd->add_option("--delta", refine.delta, "Density for the constant-density refined threshold");
    refine_cmd->add_option("--max-rows", refine.max_rows, "Row cap for the triple sums");
    add_format(refine_cmd, refine.format, {"text", "json"});

    DecomposeOptions decompose;
    auto* decompose_cmd = app.add_subcommand("decompose", "Two-block decomposition bound");
    decompose_cmd->add_option("-i,--input", decompose.input, "Instance file, '-' for stdin");
    decompose_cmd->add_option("--split", decompose.split, "Split row and column, 'r,c'")->delimiter(',')->expected(2);
    decompose_cmd->add_flag("--search", decompose.search, "Search for a split by local search");
    decompose_cmd->add_option("--effort", decompose.effort, "Move evaluations for --search");
    decompose_cmd->add_option("--seed", decompose.seed, "Seed for --search");
    decompose_cmd->add_flag("--allow-invalid", decompose.allow_invalid, "Compute bounds for non-decomposable splits");
    decompose_cmd->add_option("--perfect", decompose.perfect, "Closed form for 'm,mu,d1,d4'")
        ->delimiter(',')
        ->expected(4);
    decompose_cmd->add_option("--bordered", decompose.bordered, "Closed form for 'm,delta,eps'")
        ->delimiter(',')
        ->expected(3);
    add_format(decompose_cmd, decompose.format, {"text", "json"});

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Greedy or exact minimum cover");
    solve_cmd->add_option("-i,--input", solve.input, "Instance file, '-' for stdin");
    auto* exact_flag = solve_cmd->add_flag("--exact", solve.exact, "Branch and bound");
    solve_cmd->add_flag("--greedy", "Greedy heuristic (default)")->excludes(exact_flag);
    solve_cmd->add_option("--budget", solve.budget, "Node budget for --exact");
    add_format(solve_cmd, solve.format, {"text", "json"});

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Seeded random instance");
    gen_cmd->add_option("--spec", gen.spec_file, "Generator spec as JSON");
    gen_cmd->add_option("--model", gen.model, "constant-density | karp | planted")
        ->check(CLI::IsMember({"constant-density", "constant", "karp", "planted"}));
    gen_cmd->add_option("--m", gen.m, "Rows");
    gen_cmd->add_option("--n", gen.n, "Columns");
    gen_cmd->add_option("--delta", gen.delta, "Density");
    gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
    gen_cmd->add_option("--blocks", gen.blocks, "Planted block densities 'd1,d2,d3,d4'")->delimiter(',')->expected(4);
    gen_cmd->add_option("--mu", gen.mu, "Planted row split parameter");
    gen_cmd->add_option("--nu", gen.nu, "Planted column split parameter");
    gen_cmd->add_option("-o,--output", gen.output, "Output file, '-' for stdout");
    add_format(gen_cmd, gen.format, {"dense", "sparse"});

    ExperimentOptions exp;
    auto* exp_cmd = app.add_subcommand("experiment", "Batch bounds vs. solvers over generated instances");
    auto* plan_opt = exp_cmd->add_option("--plan", exp.plan_file, "Experiment plan as JSON");
    exp_cmd->add_option("--model", exp.model, "Generator model for the grid")
        ->check(CLI::IsMember({"constant-density", "constant", "karp", "planted"}));
    exp_cmd->add_option("--sizes", exp.sizes, "Sizes 'MxN' or 'M' (square)")->delimiter(',');
    exp_cmd->add_option("--delta", exp.deltas, "Densities")->delimiter(',');
    exp_cmd->add_option("--seeds", exp.seeds, "Seeds per grid point");
    exp_cmd->add_option("--base-seed", exp.base_seed, "First seed");
    exp_cmd->add_option("--methods", exp.methods, "Bound methods")->delimiter(',');
    exp_cmd->add_flag("--decompose", exp.decompose, "Include the decomposed bound");
    exp_cmd->add_option("--effort", exp.effort, "Split search effort");
    exp_cmd->add_option("--split-seed", exp.split_seed, "Split search seed");
    exp_cmd->add_option("--exact-max-m", exp.exact_max_m, "Largest m solved exactly");
    exp_cmd->add_option("--exact-max-n", exp.exact_max_n, "Largest n solved exactly");
    exp_cmd->add_option("--budget", exp.budget, "Node budget for exact solving");
    exp_cmd->add_option("--csv", exp.csv, "Write the CSV report here");
    exp_cmd->add_option("--json", exp.json_path, "Write the JSON report here");
    add_format(exp_cmd, exp.format, {"text", "json", "csv"});
    for (const char* grid_flag : {"--model", "--sizes", "--delta", "--seeds", "--base-seed", "--methods", "--decompose",
                                  "--effort", "--split-seed", "--exact-max-m", "--exact-max-n", "--budget"}) {
        plan_opt->excludes(exp_cmd->get_option(grid_flag));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ErrorKind::invalid_argument);
    }

    try {
        if (bound_cmd->parsed()) return run_bound(bound);
        if (refine_cmd->parsed()) return run_refine(refine);
        if (decompose_cmd->parsed()) return run_decompose(decompose);
        if (solve_cmd->parsed()) return run_solve(solve);
        if (gen_cmd->parsed()) return run_gen(gen);
        if (exp_cmd->parsed()) return run_experiment_cmd(exp);
    } catch (const Error& e) {
        std::cerr << "scpbound: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "scpbound: " << e.what() << "\n";
        return static_cast<int>(ErrorKind::internal);
    }
    return static_cast<int>(ErrorKind::invalid_argument);
}
