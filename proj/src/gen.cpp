#include "scpbound/gen.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "scpbound/error.hpp"
#include "scpbound/rng.hpp"

namespace scpbound {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

void fill_block(MatrixBuilder& builder, Rng& rng, std::size_t row_begin, std::size_t row_end, std::size_t col_begin,
                std::size_t col_end, double density) {
    for (std::size_t i = row_begin; i < row_end; ++i) {
        for (std::size_t j = col_begin; j < col_end; ++j) {
            if (rng.bernoulli(density)) builder.set(i, j);
        }
    }
}

}  // namespace

std::string_view to_string(GenModel model) noexcept {
    switch (model) {
        case GenModel::constant_density: return "constant-density";
        case GenModel::karp: return "karp";
        case GenModel::planted: return "planted";
    }
    return "unknown";
}

GenModel parse_gen_model(std::string_view name) {
    if (name == "constant-density" || name == "constant") return GenModel::constant_density;
    if (name == "karp") return GenModel::karp;
    if (name == "planted") return GenModel::planted;
    throw ArgumentError("unknown generator model '" + std::string(name) + "'");
}

void GenSpec::validate() const {
    if (m < 1 || n < 1) throw ArgumentError("generator dimensions must be positive");
    if (!in_unit_interval(delta)) throw ArgumentError("generator density must lie in [0, 1]");
    if (model == GenModel::planted) {
        for (double d : {blocks.d1, blocks.d2, blocks.d3, blocks.d4}) {
            if (!in_unit_interval(d)) throw ArgumentError("planted block densities must lie in [0, 1]");
        }
        if (!(std::abs(blocks.mu) < 1.0) || !(std::abs(blocks.nu) < 1.0)) {
            throw ArgumentError("planted mu and nu must lie in (-1, 1)");
        }
    }
}

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

std::size_t karp_row_ones(std::size_t n, double delta) {
    if (!in_unit_interval(delta)) throw ArgumentError("generator density must lie in [0, 1]");
    return std::min(n, round_half_up(delta * static_cast<double>(n)));
}

Split planted_split(const GenSpec& spec) {
    const Split split{round_half_up(static_cast<double>(spec.m) * (1.0 + spec.blocks.mu) / 2.0),
                      round_half_up(static_cast<double>(spec.n) * (1.0 + spec.blocks.nu) / 2.0)};
    if (split.r < 1 || split.r >= spec.m || split.c < 1 || split.c >= spec.n) {
        throw ArgumentError("planted split (" + std::to_string(split.r) + ", " + std::to_string(split.c) +
                            ") is degenerate for a " + std::to_string(spec.m) + "x" + std::to_string(spec.n) +
                            " matrix");
    }
    return split;
}

BinaryMatrix gen_constant_density(const GenSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    MatrixBuilder builder(spec.m, spec.n);
    fill_block(builder, rng, 0, spec.m, 0, spec.n, spec.delta);
    return std::move(builder).build();
}

BinaryMatrix gen_karp(const GenSpec& spec) {
    spec.validate();
    const std::size_t t = karp_row_ones(spec.n, spec.delta);
    Rng rng(spec.seed);
    MatrixBuilder builder(spec.m, spec.n);
    std::vector<std::size_t> columns(spec.n);
    for (std::size_t i = 0; i < spec.m; ++i) {
        std::iota(columns.begin(), columns.end(), std::size_t{0});
        // partial Fisher-Yates: the first t slots become a uniform t-subset
        for (std::size_t s = 0; s < t; ++s) {
            const auto pick = s + static_cast<std::size_t>(rng.below(spec.n - s));
            std::swap(columns[s], columns[pick]);
            builder.set(i, columns[s]);
        }
    }
    return std::move(builder).build();
}

GeneratedInstance gen_planted(const GenSpec& spec) {
    spec.validate();
    const Split split = planted_split(spec);
    Rng rng(spec.seed);
    MatrixBuilder builder(spec.m, spec.n);
    fill_block(builder, rng, 0, split.r, 0, split.c, spec.blocks.d1);
    fill_block(builder, rng, 0, split.r, split.c, spec.n, spec.blocks.d2);
    fill_block(builder, rng, split.r, spec.m, 0, split.c, spec.blocks.d3);
    fill_block(builder, rng, split.r, spec.m, split.c, spec.n, spec.blocks.d4);
    return {std::move(builder).build(), split};
}

GeneratedInstance generate(const GenSpec& spec) {
    switch (spec.model) {
        case GenModel::constant_density: return {gen_constant_density(spec), std::nullopt};
        case GenModel::karp: return {gen_karp(spec), std::nullopt};
        case GenModel::planted: return gen_planted(spec);
    }
    throw InternalError("unhandled generator model");
}

void to_json(nlohmann::json& j, const GenSpec& spec) {
    j = nlohmann::json{{"model", std::string(to_string(spec.model))},
                       {"m", spec.m},
                       {"n", spec.n},
                       {"delta", spec.delta},
                       {"seed", spec.seed}};
    if (spec.model == GenModel::planted) {
        j["blocks"] = {{"d1", spec.blocks.d1}, {"d2", spec.blocks.d2}, {"d3", spec.blocks.d3},
                       {"d4", spec.blocks.d4}, {"mu", spec.blocks.mu}, {"nu", spec.blocks.nu}};
    }
}

void from_json(const nlohmann::json& j, GenSpec& spec) {
    try {
        spec.model = parse_gen_model(j.at("model").get<std::string>());
        spec.m = j.at("m").get<std::size_t>();
        spec.n = j.at("n").get<std::size_t>();
        spec.delta = j.value("delta", 0.0);
        spec.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("blocks")) {
            const auto& b = j.at("blocks");
            spec.blocks = {b.at("d1").get<double>(), b.at("d2").get<double>(), b.at("d3").get<double>(),
                           b.at("d4").get<double>(), b.value("mu", 0.0),         b.value("nu", 0.0)};
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::input, std::string("invalid generator spec: ") + e.what());
    }
}

}  // namespace scpbound
