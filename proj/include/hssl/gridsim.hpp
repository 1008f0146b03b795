#pragma once

// Kron-reduced multi-machine swing-equation simulator and the labelled
// frequency-trace dataset built on top of it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hssl/constraints.hpp"
#include "hssl/numkit.hpp"

namespace hssl {

/// Classical-model machines on a Kron-reduced network. Units are per-unit
/// power on the system base, angles in rad, ω as deviation in rad/s.
struct GridModel {
    std::vector<double> inertia;       // M_i
    std::vector<double> damping;       // D_i
    std::vector<double> emf;           // |E_i|
    std::vector<double> mech_power;    // P_mi
    Matrix conductance;                // reduced G
    Matrix susceptance;                // reduced B

    std::size_t n_gen() const noexcept { return inertia.size(); }
    /// Throws ConfigError if any invariant (positivity, symmetry, sizes) fails.
    void validate() const;

    /// P_ij = |E_i||E_j| sqrt(G_ij² + B_ij²); zero on the diagonal.
    Matrix coupling() const;
    /// φ_ij = arctan(G_ij / B_ij); zero on the diagonal.
    Matrix phase_offset() const;
    /// p_i = P_mi − |E_i|² G_ii.
    std::vector<double> effective_power() const;
};

struct OutageScenario {
    int class_id = 0;
    GridModel post_outage;
    double event_time = 0.5;
    std::string description;
};

struct GridCase {
    GridModel base;
    std::vector<double> base_angles; // pre-outage operating-point rotor angles
    std::vector<OutageScenario> scenarios;
};

struct SwingDerivative {
    std::vector<double> dtheta;
    std::vector<double> domega;
};

SwingDerivative swing_rhs(const GridModel& model, std::span<const double> theta, std::span<const double> omega);

struct Trace {
    double dt = 0.0;
    Matrix omega; // steps x n_gen, state after each step
    Matrix theta; // steps x n_gen
};

struct SwitchEvent {
    double time = 0.0;
    GridModel post_model;
};

/// |ω| beyond this aborts integration with InstabilityError (10 x 2π·60 rad/s).
inline constexpr double kOmegaLimit = 10.0 * 2.0 * 3.14159265358979323846 * 60.0;

/// Classic fourth-order Runge-Kutta. Row k of the trace holds the state at
/// (k+1)·dt. Steps starting at or after the event time use the post model.
Trace integrate_rk4(const GridModel& model, std::span<const double> theta0, std::span<const double> omega0,
                    double dt, std::size_t steps, const std::optional<SwitchEvent>& event = std::nullopt);

struct Equilibrium {
    std::vector<double> theta;
    double omega = 0.0; // common frequency deviation
};

/// Synchronous operating point: 0 = −D_i ω + p_i − Σ P_ij sin(θ_i − θ_j + φ_ij)
/// with a shared ω and θ_0 held at `reference_angle`. Newton with analytic
/// Jacobian; throws NumericError if it does not converge.
Equilibrium solve_equilibrium(const GridModel& model, std::span<const double> theta_guess);

/// The constraint parameter vector [p_i..., P_ij..., φ_ij...] of a model,
/// pairs in (0,1), (0,2), ..., (n−2,n−1) order.
std::vector<double> physical_parameters(const GridModel& model);

/// Reads the human-readable JSON grid parameter file.
GridCase load_grid_case(const std::string& path);
GridCase grid_case_from_json(const nlohmann::json& doc);

struct GridSimConfig {
    std::string grid_file = HSSL_DEFAULT_GRID_FILE;
    double event_time = 0.5;
};

/// Base model plus the outage scenario table with class ids 0..C−1.
GridCase build_wscc_scenarios(const GridSimConfig& config);

struct DatasetConfig {
    std::size_t samples_per_class = 800;
    std::size_t window = 60;            // ω samples per generator in the features
    double label_fraction = 0.0125;
    double loading_spread = 0.05;       // P_m scaled by U(1−s, 1+s) per machine
    double dt = 1.0 / 600.0;
    double duration = 3.0;
    double event_time = 0.5;
    std::size_t physics_stride = 10;    // integrator steps between constraint samples
    double validation_fraction = 0.2;
    double settle_time = 1.0;           // seconds after the event before freq_sync applies
    std::uint64_t seed = 1;
    std::size_t threads = 1;
};

struct DatasetManifest {
    DatasetConfig config;
    std::string grid_file;
    std::size_t class_count = 0;
    std::size_t sample_count = 0;
    std::size_t feature_width = 0;
    std::size_t trace_length = 0;      // constraint samples per generator
    double trace_dt = 0.0;
    std::size_t n_gen = 0;
    std::vector<double> inertia;       // known machine constants, copied from the grid
    std::vector<double> damping;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> validation_indices;
    std::vector<std::size_t> labeled_indices;
    std::vector<std::size_t> per_class_labeled;
    double c_sync = 0.0;               // 95th percentile of freq_sync
    double c_phase = 0.0;              // 95th percentile of phase_cohesive
    std::vector<std::string> class_descriptions;

    nlohmann::json to_json() const;
    static DatasetManifest from_json(const nlohmann::json& j);
    /// Machine constants and trace spacing as the constraint module needs them.
    KnownParams known() const;
};

/// One row per sample. Features are channel-major (generator 0's window,
/// then generator 1's, ...). Traces hold ω at the constraint resolution,
/// also channel-major; theta0 is the rotor angle at the first trace sample.
struct Dataset {
    Matrix features;
    Matrix traces;
    Matrix theta0;
    Matrix true_params;           // post-event [p_i, P_ij, φ_ij] per sample, for diagnostics only
    std::vector<int> labels;      // −1 where the label is withheld
    std::vector<int> true_labels; // ground truth, used for evaluation only
    std::size_t class_count = 0;
    DatasetManifest manifest;

    std::size_t size() const noexcept { return labels.size(); }
};

inline constexpr int kUnlabeled = -1;

/// Simulates every scenario (per-sample RNG streams split from the master
/// seed, so thread count does not change the result), splits off a
/// stratified validation set, and withholds all but a stratified labelled
/// subset of round(label_fraction × total) training samples.
Dataset generate_dataset(const GridCase& grid, const DatasetConfig& config);

/// Re-draws the labelled training subset for another fraction/seed.
void apply_label_mask(Dataset& data, double label_fraction, std::uint64_t seed);

enum class ShiftScope { per_row, per_batch };

/// Gaussian noise plus a per-channel circular shift in [−max_shift, max_shift],
/// drawn per row or once for the whole batch. `channels` must divide the
/// column count.
Matrix augment(const Matrix& batch, Rng& rng, double noise_std, std::size_t max_shift, std::size_t channels,
               ShiftScope scope = ShiftScope::per_row);

// Dataset files: <dir>/dataset.bin and <dir>/manifest.json.
//   dataset.bin: char[8] "HSSLDAT1", u64 n, u64 feature_cols, u64 trace_cols,
//   u64 n_gen, then float64 LE features (n x feature_cols), traces
//   (n x trace_cols), theta0 (n x n_gen), u64 param_cols, true parameters
//   (n x param_cols), then i32 LE labels (n) and true labels (n).
void write_dataset(const Dataset& data, const std::string& dir);
Dataset read_dataset(const std::string& dir);

} // namespace hssl
