#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <json.hpp>

#include "moaoff/perception.hpp"
#include "moaoff/policy.hpp"
#include "moaoff/sim.hpp"
#include "moaoff/workload.hpp"

namespace moaoff {

struct SimulationConfig {
    std::vector<double> bandwidths_mbps{200.0, 300.0, 400.0};
    std::uint64_t seed = 7;
    std::vector<StrategyKind> strategies{StrategyKind::MoaOff, StrategyKind::EdgeOnly,
                                         StrategyKind::CloudOnly, StrategyKind::UniformOffload};
    double uniform_threshold = 0.5;
    SyntheticSpec synthetic;
};

struct Config {
    PerceptionConfig perception;
    PolicyConfig policy;
    CostModel cost_model;
    SimulationConfig simulation;
};

Config default_config();
void validate(const Config& cfg);

// Strict parse: unknown keys are rejected with the section and key named.
// A perception.calibration_path is resolved relative to the config file.
// Semantic problems (bad values, unknown keys) raise DomainError; unreadable
// or syntactically broken files raise IoError/ParseError.
Config load_config(const std::filesystem::path& path);
Config config_from_json(const nlohmann::ordered_json& doc,
                        const std::filesystem::path& base_dir);
nlohmann::ordered_json config_to_json(const Config& cfg);
void save_config(const std::filesystem::path& path, const Config& cfg);

} // namespace moaoff
