#pragma once

// Alternating training loop (latent fit, constraint refit, supervised +
// consistency step, EMA), the baselines, evaluation and the multi-seed sweep.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hssl/gridsim.hpp"
#include "hssl/hybrid.hpp"

namespace hssl {

enum class TrainMode { hybrid, baseline_meanteacher, baseline_pseudolabel, supervised_only };

std::string_view to_string(TrainMode mode) noexcept;
/// Throws ConfigError for an unknown name.
TrainMode parse_mode(std::string_view name);

struct TrainConfig {
    TrainMode mode = TrainMode::hybrid;
    std::size_t epochs = 150;
    std::size_t labeled_batch = 16;
    std::size_t unlabeled_batch = 112;

    Architecture architecture;
    OptimizerConfig optimizer;            // L1 + L2 step on the primary
    OptimizerConfig latent_optimizer;     // encoder/decoder step on L3
    OptimizerConfig constraint_optimizer{OptimizerKind::adam, 1e-4}; // primary hidden layers on L3

    RampUp ramp;
    double ema_beta = 0.99;
    bool literal_ema = false;             // secondary <- β·θ_p(new) + (1−β)·θ_p(old)
    double sigma = 1.0;
    ConstraintSpec constraints = constraint_spec_from_json(nlohmann::json::object());

    std::size_t latent_steps = 1;         // k_E
    std::size_t constraint_steps = 1;     // k_M
    bool skip_latent_step = false;
    bool skip_constraint_step = false;

    double teacher_dropout = 0.1;
    double teacher_dropconnect = 0.05;
    double augment_noise = 0.01;          // in standardised feature units
    std::size_t augment_shift = 2;
    ShiftScope augment_scope = ShiftScope::per_batch;

    std::size_t early_stop_window = 20;
    double early_stop_tolerance = 1e-4;

    /// Throws ConfigError naming the first out-of-range field.
    void validate() const;
};

struct EpochMetrics {
    std::size_t epoch = 0;
    LossBreakdown loss;
    double accuracy = 0.0;         // primary network, validation split
    double error_rate = 1.0;
    double teacher_accuracy = 0.0; // secondary network, validation split
    double wall_seconds = 0.0;

    nlohmann::json to_json() const;
};

struct TrainResult {
    HybridModel model;
    std::vector<EpochMetrics> metrics;
};

/// Called at each algorithm step: "latent", "constraint", "supervised", "ema".
using StepObserver = std::function<void(std::string_view step, std::size_t epoch, std::size_t batch)>;

struct TrainHooks {
    StepObserver on_step;
    std::function<void(const EpochMetrics&)> on_epoch;
};

/// Runs the configured mode. Validation accuracy is measured on the
/// manifest's validation split, which never overlaps the training rows.
TrainResult train(const Dataset& data, const TrainConfig& cfg, std::uint64_t seed, const TrainHooks& hooks = {});
TrainResult train_hybrid(const Dataset& data, const TrainConfig& cfg, std::uint64_t seed,
                         const TrainHooks& hooks = {});
TrainResult train_baseline(const Dataset& data, const TrainConfig& cfg, std::uint64_t seed,
                           const TrainHooks& hooks = {});

struct Evaluation {
    double accuracy = 0.0;
    double error_rate = 1.0;
    double teacher_accuracy = 0.0;
    std::size_t samples = 0;
};

Evaluation evaluate(const HybridModel& model, const Dataset& data, std::span<const std::size_t> rows);

struct SweepCell {
    TrainMode mode;
    double label_fraction;
    std::size_t n_labels;
    std::uint64_t seed;
    double accuracy;
    std::vector<EpochMetrics> metrics;
};

struct SweepRow {
    TrainMode mode;
    double label_fraction;
    std::size_t n_labels;
    double mean_acc;
    double std_acc; // population standard deviation
    std::size_t seeds;
};

struct SweepConfig {
    std::vector<TrainMode> modes{TrainMode::hybrid, TrainMode::baseline_meanteacher};
    std::vector<double> label_fractions{0.0125, 0.025, 0.05, 0.10};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::size_t threads = 1;
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::vector<SweepRow> rows;
};

/// Every (mode, fraction, seed) cell. The label mask depends on (fraction,
/// seed) only, so methods are compared on the same labelled subsets.
SweepResult sweep(const Dataset& data, const TrainConfig& base, const SweepConfig& grid,
                  const std::function<void(const SweepCell&)>& on_cell = {});

std::pair<double, double> mean_and_std(std::span<const double> values);

void write_metrics_jsonl(std::ostream& out, TrainMode mode, std::span<const EpochMetrics> metrics);
void write_results_csv(std::ostream& out, std::span<const SweepRow> rows);

} // namespace hssl
