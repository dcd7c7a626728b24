#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <regex>
#include <string>

#include <doctest.h>
#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

/// Runs the CLI through the shell; stderr is folded into out when `merge` is set.
Run run(const std::string& args, bool merge = false, const std::string& env = "") {
    const std::string cmd = env + std::string(SCPBOUND_EXE) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("bound on an all-ones matrix") {
    write("ones.scp", "3 3\n111\n111\n111\n");
    const auto r = run("bound --method first-moment -i ones.scp");
    CHECK(r.code == 0);
    CHECK(r.out.find("k=1 ") != std::string::npos);
}

TEST_CASE("exact solve prints 1-based columns") {
    write("stair.scp", "3 4\n1100\n0110\n0011\n");
    const auto r = run("solve --exact -i stair.scp");
    CHECK(r.code == 0);
    CHECK(r.out.find("columns: 2 3\n") != std::string::npos);
    CHECK(r.out.find("size: 2\n") != std::string::npos);
    CHECK(r.out.find("status: proved") != std::string::npos);

    const auto j = nlohmann::json::parse(run("solve -i stair.scp --format json").out);
    CHECK(j["schema"] == "scpbound/1");
    CHECK(j["columns"] == nlohmann::json::array({2, 3}));
}

TEST_CASE("stdin input") {
    const auto r = run("solve --greedy < stair.scp");
    CHECK(r.code == 0);
    CHECK(r.out.find("columns: 2 3") != std::string::npos);
}

TEST_CASE("exit codes") {
    write("zero_row.scp", "2 3\n110\n000\n");
    auto r = run("bound -i zero_row.scp", true);
    CHECK(r.code == 1);
    CHECK(r.out.find("row 2 has no covering column") != std::string::npos);
    CHECK(run("solve -i zero_row.scp").code == 1);

    write("thin.scp", "5 2\n10\n10\n01\n01\n10\n");
    CHECK(run("bound --method first-moment -i thin.scp").code == 2);

    write("broken.scp", "2 3\n101\n0x0\n");
    r = run("bound -i broken.scp", true);
    CHECK(r.code == 3);
    CHECK(r.out.find("line 3") != std::string::npos);
    CHECK(run("bound -i does-not-exist.scp").code == 3);

    CHECK(run("bound --bogus -i ones.scp").code == 4);
    CHECK(run("").code == 4);
    CHECK(run("bound --method magic -i ones.scp").code == 4);
    CHECK(run("decompose -i stair.scp").code == 4);
    CHECK(run("--help").code == 0);
    CHECK(run("bound --help").code == 0);
}

TEST_CASE("text and JSON outputs carry the same numbers") {
    write("mixed.scp", "4 6\n110000\n011100\n000111\n101010\n");
    const auto text = run("bound -i mixed.scp").out;
    const auto j = nlohmann::json::parse(run("bound -i mixed.scp --format json").out);
    for (const auto& b : j["bounds"]) {
        const std::regex line(b["variant"].get<std::string>() + R"(\s+k=(\S+)\s+value_at_k=(\S+)\s+value_at_prev=(\S+))");
        std::smatch m;
        REQUIRE(std::regex_search(text, m, line));
        CHECK(std::stoul(m[1].str()) == b["k"].get<std::size_t>());
        CHECK(std::stod(m[2].str()) == b["value_at_k"].get<double>());
        CHECK(std::stod(m[3].str()) == b["value_at_prev"].get<double>());
    }
}

TEST_CASE("gen then bound is byte-reproducible") {
    CHECK(run("gen --model karp --m 20 --n 30 --delta 0.2 --seed 9 -o a.scp").code == 0);
    CHECK(run("gen --model karp --m 20 --n 30 --delta 0.2 --seed 9 -o b.scp").code == 0);
    const auto a = run("bound -i a.scp --format json");
    const auto b = run("bound -i b.scp --format json");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run("gen --model karp --m 20 --n 30 --delta 0.2 --seed 9").out == run("gen --model karp --m 20 --n 30 --delta 0.2 --seed 9 --format dense").out);

    write("spec.json", R"({"model": "constant-density", "m": 4, "n": 8, "delta": 0.5, "seed": 42})");
    CHECK(run("gen --spec spec.json").out == "4 8\n11000000\n00010100\n00001110\n11100110\n");
    CHECK(run("gen --spec spec.json --format sparse").out.rfind("4 8\n1: 1 2\n", 0) == 0);
}

TEST_CASE("planted generation and decomposition") {
    const auto g = run("gen --model planted --m 12 --n 12 --blocks 0.9,0,0,0.9 --seed 4 -o p.scp");
    CHECK(g.code == 0);
    const auto j = nlohmann::json::parse(run("decompose -i p.scp --split 6,6 --format json").out);
    CHECK(j["decomposition"]["valid"] == true);
    CHECK(j["decomposition"]["r"] == 6);
    CHECK(j["bounds"]["sound"]["independent"] == true);

    const auto s = run("decompose -i p.scp --search --effort 2000 --seed 3");
    CHECK(s.code == 0);
    CHECK(s.out.find("row_perm: ") != std::string::npos);
    CHECK(run("gen --model planted --m 12 --n 12 --seed 4").code == 4);
}

TEST_CASE("closed forms and refinement") {
    const auto d = nlohmann::json::parse(run("decompose --bordered 1000,0.3,0.1 --perfect 1000,0,0.5,0.5 --format json").out);
    CHECK(d["symmetric_bordered"].get<double>() == doctest::Approx(17.30).epsilon(1e-3));
    CHECK(d["homogeneous_threshold"].get<double>() == doctest::Approx(19.37).epsilon(1e-3));
    CHECK(d["perfect_block"].get<double>() == doctest::Approx(17.93).epsilon(1e-3));

    const auto r = nlohmann::json::parse(run("refine --m 1000 --delta 0.5 -i stair.scp --format json").out);
    CHECK(r["series_root"].get<double>() == doctest::Approx(1.5961).epsilon(1e-4));
    CHECK(r["historical_constant"] == 1.56);
    CHECK(r["bound"]["k"] == 2);
    CHECK(r["constant_density"]["refined_threshold"].get<double>() == doctest::Approx(9.29).epsilon(1e-3));

    const auto w = nlohmann::json::parse(run("refine -i stair.scp --k 2 --format json").out);
    CHECK(w["witness"]["satisfied"] == true);
    CHECK(run("refine --m 1000").code == 4);
}

TEST_CASE("experiment from flags and from a plan") {
    const auto r = run("experiment --sizes 6x8,10 --delta 0.3,0.6 --seeds 2 --decompose --csv e.csv --json e.json");
    CHECK(r.code == 0);
    CHECK(r.out.find("sound-bound violations: 0") != std::string::npos);
    std::ifstream csv("e.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header.rfind("model,m,n,delta,seed,", 0) == 0);

    write("plan.json", R"({"grid": {"model": "karp", "sizes": [[8, 10]], "delta": [0.3], "seeds": 3}})");
    const auto j = nlohmann::json::parse(run("experiment --plan plan.json --format json").out);
    CHECK(j["schema"] == "scpbound/1");
    CHECK(j["records"].size() == 3);

    const auto seq = run("experiment --plan plan.json --format csv");
    const auto par = run("experiment --plan plan.json --format csv", false, "SCPBOUND_THREADS=3 ");
    CHECK(par.code == 0);
    CHECK(seq.out == par.out);
    CHECK(run("experiment --plan plan.json", false, "SCPBOUND_THREADS=x ").code == 4);
    CHECK(run("experiment --sizes 8 --delta 0.3 --methods first-moment,bogus").code == 4);
    CHECK(run("experiment").code == 4);
    CHECK(run("experiment --plan plan.json --seeds 3").code == 4);
}
