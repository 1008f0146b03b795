#pragma once

// One JSON experiment file covering the simulator, dataset, constraint tree,
// training and sweep settings. Unknown keys are rejected.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "hssl/constraints.hpp"
#include "hssl/gridsim.hpp"
#include "hssl/trainer.hpp"

namespace hssl {

struct ExperimentConfig {
    std::string output_dir = "runs/default";
    std::string dataset_dir;   // empty: <output_dir>/dataset
    std::uint64_t seed = 1;
    GridSimConfig grid;
    DatasetConfig dataset;
    TrainConfig train;
    SweepConfig sweep;

    std::string resolved_dataset_dir() const;
    /// Cross-field checks; throws ConfigError.
    void validate() const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg);
/// Throws ConfigError if the file is missing, unparsable or fails validation.
ExperimentConfig load_experiment_config(const std::string& path);

struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<double> label_fraction;
    std::optional<std::string> output_dir;
};

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& o);

} // namespace hssl
