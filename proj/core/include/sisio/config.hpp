#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sisio/interval.hpp"
#include "sisio/model.hpp"

namespace sisio {

enum class NoiseMode { Uniform, Extremal };

const char* to_string(NoiseMode mode) noexcept;

struct ScenarioSpec {
    // Expressions over x1..xn and k, one per known / unknown input.
    std::vector<std::string> u;
    std::vector<std::string> d;
    std::size_t horizon = 200;
    std::uint64_t seed = 1;
    NoiseMode noise_mode = NoiseMode::Uniform;
};

struct Config {
    ModelSpec model;
    IntervalVector x0;
    ScenarioSpec scenario;
};

// JSON document with sections dimensions, dynamics, matrices, noise, domain,
// initial, scenario and optionally jacobian_bounds / grid. Matrices are
// row-major: either nested rows or a flat array.
[[nodiscard]] Config parse_config(const std::string& json_text);
[[nodiscard]] Config load_config(const std::filesystem::path& path);

} // namespace sisio
