#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "oracle.hpp"
#include "scpbound/error.hpp"
#include "scpbound/experiment.hpp"

using namespace scpbound;

namespace {

GenSpec constant(std::size_t m, std::size_t n, double delta, std::uint64_t seed) {
    GenSpec s;
    s.m = m;
    s.n = n;
    s.delta = delta;
    s.seed = seed;
    return s;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("all-ones instance") {
    ExperimentPlan plan;
    plan.instances = {constant(5, 5, 1.0, 1)};
    plan.methods.decomposed = true;
    const auto report = run_experiment(plan);
    REQUIRE(report.records.size() == 1);
    const auto& r = report.records[0];
    CHECK(r.error.empty());
    CHECK(r.first_moment == 1);
    CHECK(r.hypergeometric == 1);
    CHECK(r.homogeneous_certified == 1);
    CHECK(r.homogeneous_literal == 1);
    CHECK(r.bonferroni == 1);
    CHECK_FALSE(r.decomposed_sound);  // no decomposable split exists
    CHECK(r.greedy == 1);
    CHECK(r.exact == 1);
    CHECK(r.exact_status == "proved");
    CHECK_FALSE(r.threshold);
    CHECK(r.violations.empty());
}

TEST_CASE("small random plan has no violations and matches the oracle") {
    ExperimentPlan plan;
    plan.methods.decomposed = true;
    Rng rng(1);
    for (int t = 0; t < 60; ++t) {
        plan.instances.push_back(constant(2 + rng.below(9), 2 + rng.below(11), 0.2 + 0.5 * rng.uniform(), rng.next()));
    }
    const auto report = run_experiment(plan);
    CHECK(report.violation_count() == 0);
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        const auto& r = report.records[i];
        const auto M = generate(plan.instances[i]).matrix;
        if (!r.error.empty()) {
            CHECK(row_profile(M).first_zero_row());
            CHECK(r.error.find("has no covering column") != std::string::npos);
            continue;
        }
        CHECK(r.exact == oracle::min_cover(M));
        for (auto b : {r.first_moment, r.hypergeometric, r.homogeneous_certified, r.bonferroni, r.decomposed_sound}) {
            if (b) CHECK(*r.exact <= *b);
        }
    }
}

TEST_CASE("exact solving is skipped above the cutoff") {
    ExperimentPlan plan;
    plan.instances = {constant(17, 10, 0.5, 1), constant(10, 21, 0.5, 1), constant(16, 20, 0.5, 1)};
    const auto report = run_experiment(plan);
    CHECK(report.records[0].exact_status == "skipped");
    CHECK(report.records[1].exact_status == "skipped");
    CHECK_FALSE(report.records[0].exact);
    CHECK(report.records[2].exact_status == "proved");
}

TEST_CASE("ratios use the model density") {
    ExperimentPlan plan;
    plan.instances = {constant(64, 64, 0.5, 3)};
    const auto r = run_experiment(plan).records[0];
    REQUIRE(r.threshold);
    CHECK(*r.threshold == doctest::Approx(6.0));
    CHECK(*r.greedy_ratio == doctest::Approx(static_cast<double>(*r.greedy) / 6.0));
    CHECK(*r.bound_ratio == doctest::Approx(static_cast<double>(*r.first_moment) / 6.0));
}

TEST_CASE("reports are deterministic and independent of thread count") {
    ExperimentPlan plan;
    plan.instances = expand_grid(GenModel::karp, {{12, 14}, {30, 40}}, {0.2, 0.5}, 4, 10);
    plan.methods.decomposed = true;
    const auto a = report_csv(run_experiment(plan));
    const auto b = report_csv(run_experiment(plan));
    CHECK(a == b);
    plan.threads = 4;
    CHECK(report_csv(run_experiment(plan)) == a);
    CHECK(report_json(run_experiment(plan)) == report_json(run_experiment(plan)));
}

TEST_CASE("CSV layout") {
    ExperimentPlan plan;
    plan.instances = {constant(6, 8, 0.5, 2)};
    const auto csv = report_csv(run_experiment(plan));
    const auto header = csv.substr(0, csv.find('\n'));
    CHECK(header ==
          "model,m,n,delta,seed,d1,d2,d3,d4,mu,nu,min_density,max_density,mean_density,threshold,first_moment,"
          "hypergeometric,homogeneous_certified,homogeneous_literal,bonferroni,decomposed_sound,decomposed_literal,"
          "greedy,exact,exact_status,greedy_ratio,bound_ratio,violations,error");
    const auto line = csv.substr(header.size() + 1);
    CHECK(line.rfind("constant-density,6,8,0.5,2,", 0) == 0);
    CHECK(std::count(line.begin(), line.end(), ',') == std::count(header.begin(), header.end(), ','));
}

TEST_CASE("JSON mirrors the records") {
    ExperimentPlan plan;
    plan.instances = {constant(6, 8, 0.5, 2), constant(3, 3, 0.0, 1)};
    const auto report = run_experiment(plan);
    const auto j = report_json(report);
    CHECK(j["schema"] == "scpbound/1");
    CHECK(j["violations"] == 0);
    REQUIRE(j["records"].size() == 2);
    CHECK(j["records"][0]["m"] == 6);
    CHECK(j["records"][0]["first_moment"] == *report.records[0].first_moment);
    CHECK(j["records"][1]["first_moment"].is_null());
    CHECK(j["records"][1]["error"] == "row 1 has no covering column");
}

TEST_CASE("report files") {
    ExperimentPlan plan;
    plan.instances = {constant(6, 8, 0.5, 2)};
    const auto report = run_experiment(plan);
    const auto dir = std::filesystem::temp_directory_path() / "scpbound_experiment_test";
    std::filesystem::create_directories(dir);
    write_report_files(report, dir / "r.csv", dir / "r.json");
    CHECK(slurp(dir / "r.csv") == report_csv(report));
    CHECK(nlohmann::json::parse(slurp(dir / "r.json")) == report_json(report));
    std::filesystem::remove_all(dir);
    CHECK_THROWS((write_report_files(report, std::filesystem::path("/nonexistent/dir/r.csv"), std::nullopt)));
}

TEST_CASE("grid expansion and plan parsing") {
    const auto grid = expand_grid(GenModel::constant_density, {{10, 12}, {20, 20}}, {0.1, 0.3}, 3, 7);
    CHECK(grid.size() == 12);
    CHECK(grid[0].seed == 7);
    CHECK(grid[2].seed == 9);
    CHECK(grid.back().m == 20);

    const auto plan = plan_from_json(nlohmann::json::parse(R"({
        "grid": {"model": "karp", "sizes": [[8, 10]], "delta": [0.25, 0.5], "seeds": 2, "base_seed": 100},
        "instances": [{"model": "planted", "m": 10, "n": 10, "delta": 0, "seed": 1,
                       "blocks": {"d1": 0.5, "d2": 0.1, "d3": 0.1, "d4": 0.5, "mu": 0, "nu": 0}}],
        "methods": ["first-moment", "decomposed"],
        "exact_cutoff": {"m": 8, "n": 9},
        "node_budget": 1000
    })"));
    CHECK(plan.instances.size() == 5);
    CHECK(plan.instances[0].model == GenModel::planted);
    CHECK(plan.instances[1].model == GenModel::karp);
    CHECK(plan.instances[1].seed == 100);
    CHECK(plan.methods.first_moment);
    CHECK(plan.methods.decomposed);
    CHECK_FALSE(plan.methods.bonferroni);
    CHECK(plan.exact_max_rows == 8);
    CHECK(plan.exact_max_cols == 9);
    CHECK(plan.node_budget == 1000);
    CHECK_THROWS_AS((void)plan_from_json(nlohmann::json::parse(R"({"methods": ["magic"]})")), Error);
}

TEST_CASE("median and trend") {
    CHECK_FALSE(median({}));
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);

    ExperimentPlan plan;
    plan.instances = expand_grid(GenModel::constant_density, {{32, 32}, {64, 64}}, {0.5}, 3, 1);
    plan.methods.bonferroni = false;
    const auto report = run_experiment(plan);
    const auto trend = greedy_trend(report);
    REQUIRE(trend.size() == 2);
    CHECK(trend[0].m == 32);
    CHECK(trend[0].count == 3);
    std::vector<double> ratios;
    for (std::size_t i = 0; i < 3; ++i) ratios.push_back(*report.records[i].greedy_ratio);
    CHECK(trend[0].median_greedy_ratio == median(ratios));
}
