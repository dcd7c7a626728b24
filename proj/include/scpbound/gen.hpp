#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "scpbound/matrix.hpp"

namespace scpbound {

enum class GenModel { constant_density, karp, planted };

[[nodiscard]] std::string_view to_string(GenModel model) noexcept;
[[nodiscard]] GenModel parse_gen_model(std::string_view name);

/// Target densities of M11, M12, M21, M22 and the split parameters mu, nu.
struct BlockTargets {
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double d4 = 0.0;
    double mu = 0.0;
    double nu = 0.0;

    friend bool operator==(const BlockTargets&, const BlockTargets&) = default;
};

struct GenSpec {
    GenModel model = GenModel::constant_density;
    std::size_t m = 1;
    std::size_t n = 1;
    double delta = 0.0;
    BlockTargets blocks;
    std::uint64_t seed = 0;

    void validate() const;

    friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

/// Top-left block is rows [0, r) x columns [0, c).
struct Split {
    std::size_t r = 0;
    std::size_t c = 0;

    friend bool operator==(const Split&, const Split&) = default;
};

struct GeneratedInstance {
    BinaryMatrix matrix;
    std::optional<Split> split;
};

/// floor(x + 1/2).
[[nodiscard]] std::size_t round_half_up(double x);

/// Ones per row in the fixed-row-sum model: round_half_up(delta * n).
[[nodiscard]] std::size_t karp_row_ones(std::size_t n, double delta);

/// Split realised by the planted model: (round_half_up(m(1+mu)/2), round_half_up(n(1+nu)/2)).
[[nodiscard]] Split planted_split(const GenSpec& spec);

[[nodiscard]] BinaryMatrix gen_constant_density(const GenSpec& spec);
[[nodiscard]] BinaryMatrix gen_karp(const GenSpec& spec);
[[nodiscard]] GeneratedInstance gen_planted(const GenSpec& spec);

/// Dispatches on spec.model.
[[nodiscard]] GeneratedInstance generate(const GenSpec& spec);

void to_json(nlohmann::json& j, const GenSpec& spec);
void from_json(const nlohmann::json& j, GenSpec& spec);

}  // namespace scpbound
