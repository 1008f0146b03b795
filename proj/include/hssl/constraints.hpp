#pragma once

// Domain-knowledge constraint set evaluated on recorded frequency traces:
// swing-equation residual under estimated parameters, frequency
// synchronization, phase cohesiveness, AND/OR combinators, and the bounded
// hinge penalty with its analytic gradient.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hssl/numkit.hpp"

namespace hssl {

/// Parameters that are known rather than estimated.
struct KnownParams {
    std::vector<double> inertia; // M_i
    std::vector<double> damping; // D_i
    double dt = 0.0;             // spacing of trace samples

    std::size_t n_gen() const noexcept { return inertia.size(); }
    void validate() const;
};

/// Layout of one estimated-parameter row ẑ: n effective power terms p_i, then
/// one coupling magnitude P_ij per pair i<j, then one phase offset φ_ij per
/// pair, pairs in lexicographic order. n = 3 gives 9 entries.
struct ParamLayout {
    std::size_t n_gen = 3;

    std::size_t pair_count() const noexcept { return n_gen * (n_gen - 1) / 2; }
    std::size_t dim() const noexcept { return n_gen + 2 * pair_count(); }
    std::size_t power(std::size_t i) const noexcept { return i; }
    std::size_t coupling(std::size_t pair) const noexcept { return n_gen + pair; }
    std::size_t phase(std::size_t pair) const noexcept { return n_gen + pair_count() + pair; }
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
};

/// One sample's trace: ω channel-major (n_gen blocks of equal length) plus
/// the rotor angles at the first sample.
struct TraceView {
    std::span<const double> omega;
    std::span<const double> theta0;

    std::size_t n_gen() const noexcept { return theta0.size(); }
    std::size_t length() const noexcept { return theta0.empty() ? 0 : omega.size() / theta0.size(); }
    double omega_at(std::size_t gen, std::size_t t) const noexcept { return omega[gen * length() + t]; }
};

TraceView trace_row(const Matrix& traces, const Matrix& theta0, std::size_t row);

/// θ by trapezoidal integration of ω from theta0, channel-major like ω.
std::vector<double> reconstruct_theta(const TraceView& trace, double dt);

/// Mean over interior samples and machines of r_i(t)², with
/// r_i = M_i ω̇_i + D_i ω_i − p_i + Σ_{j≠i} P_ij sin(θ_i − θ_j + φ_ij).
/// Throws std::invalid_argument if the trace has fewer than 3 samples.
double swing_residual(const TraceView& trace, std::span<const double> z, const KnownParams& known);
/// Same value; also writes d(residual)/dz into `grad` (length = layout dim).
double swing_residual_grad(const TraceView& trace, std::span<const double> z, const KnownParams& known,
                           std::span<double> grad);

/// max over pairs and t ≥ settle_index of |ω_i − ω_j|.
double freq_sync(const TraceView& trace, std::size_t settle_index);
/// max over pairs and all t of |θ_i − θ_j|.
double phase_cohesive(const TraceView& trace, const KnownParams& known);

enum class TermKind { swing_residual, freq_sync, phase_cohesive };
enum class PenaltyNorm { l1, l2 };

struct ConstraintNode {
    enum class Type { term, all_of, any_of };

    Type type = Type::term;
    TermKind kind = TermKind::swing_residual;
    double bound = 0.0;
    /// Bound still to be taken from the dataset manifest calibration.
    bool auto_bound = false;
    std::vector<ConstraintNode> children;

    static ConstraintNode term(TermKind kind, double bound);
    static ConstraintNode all_of(std::vector<ConstraintNode> children);
    static ConstraintNode any_of(std::vector<ConstraintNode> children);
};

struct ConstraintSpec {
    ConstraintNode root;
    double gamma = 0.1;
    PenaltyNorm norm = PenaltyNorm::l2;
    double settle_time = 1.0; // seconds into the trace before freq_sync applies
    /// false: hinge on batch means (E[G] ≤ c). true: hinge per sample, then average.
    bool per_sample = false;

    /// Throws ConfigError on negative bounds/γ or an empty combinator node.
    void validate() const;
    /// Leaves in depth-first order; `values` passed to penalty() follow it.
    std::vector<const ConstraintNode*> leaves() const;
    /// Fills every auto bound: freq_sync from c_sync, phase_cohesive from c_phase.
    void resolve_auto_bounds(double c_sync, double c_phase);
    bool has_auto_bounds() const;
};

/// AND(swing_residual ≤ c_swing, OR(freq_sync ≤ c_sync, phase_cohesive ≤ c_phase)).
ConstraintSpec default_constraint_spec(double c_swing, double c_sync, double c_phase, double gamma);

/// Leaf hinge h = max(0, g − c); AND sums children, OR takes the minimum.
/// The root's children (or the root itself when it is a leaf or OR node)
/// form the vector whose norm, times γ, is the penalty.
double penalty(const ConstraintSpec& spec, std::span<const double> values);
/// Penalty and d(penalty)/d(value) per leaf; subgradient 0 at hinge kinks.
std::pair<double, std::vector<double>> penalty_sensitivity(const ConstraintSpec& spec,
                                                           std::span<const double> values);

struct PenaltyResult {
    double value = 0.0;
    std::vector<double> term_values; // batch means, leaf order
    Matrix grad_z;                   // batch x dim
};

/// Penalty over a batch of estimates. Only swing_residual leaves depend on ẑ.
PenaltyResult evaluate_penalty(const ConstraintSpec& spec, const Matrix& z_hat, const Matrix& traces,
                               const Matrix& theta0, const KnownParams& known);
Matrix penalty_grad(const ConstraintSpec& spec, const Matrix& z_hat, const Matrix& traces, const Matrix& theta0,
                    const KnownParams& known);

// Config-file form: {"gamma":0.1,"norm":"l2","settle_time":1.0,"per_sample":false,
//  "tree":["and", ["swing_residual", 0.01], ["or", ["freq_sync", "auto"], ["phase_cohesive", "auto"]]]}
// "auto" bounds come from the dataset calibration (95th percentiles).
nlohmann::json constraint_spec_to_json(const ConstraintSpec& spec);
ConstraintSpec constraint_spec_from_json(const nlohmann::json& j);

} // namespace hssl
