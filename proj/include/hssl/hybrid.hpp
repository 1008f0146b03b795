#pragma once

// The student/teacher/latent-encoder assembly and the four training losses:
// supervised cross-entropy, teacher-student consistency, the latent
// reconstruction + physics penalty, and the pseudo-label baseline.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hssl/constraints.hpp"
#include "hssl/neural.hpp"
#include "hssl/numkit.hpp"

namespace hssl {

struct Architecture {
    std::vector<std::size_t> primary_hidden{128, 64, 32};
    std::vector<std::size_t> encoder_hidden{64, 32};
    std::vector<std::size_t> decoder_hidden{32, 64};
    InitScheme init = InitScheme::he_xavier;
};

/// Per-feature standardisation fitted on training rows.
struct Normalizer {
    std::vector<double> mean;
    std::vector<double> scale;

    static Normalizer fit(const Matrix& features, std::span<const std::size_t> rows);
    Matrix apply(const Matrix& features) const;
    bool operator==(const Normalizer&) const = default;
};

struct HybridModel {
    Network primary;
    Network secondary;
    Network latent_encoder;
    Network latent_decoder;
    Normalizer normalizer;

    /// Throws ShapeError when the four networks do not chain together.
    void validate() const;
    bool operator==(const HybridModel&) const = default;
};

/// Fresh model: secondary starts as a copy of primary; z_dim is the width of
/// the physical parameter vector the encoder emits.
HybridModel make_hybrid_model(const Architecture& arch, std::size_t input_width, std::size_t class_count,
                              std::size_t z_dim, Rng& rng);

enum class RampShape { sigmoid_exp, linear };

struct RampUp {
    double alpha_max = 1.0;
    double ramp_epochs = 30.0;
    RampShape shape = RampShape::sigmoid_exp;
};

/// sigmoid_exp: alpha_max·exp(−5(1 − min(t,T)/T)²); linear: alpha_max·min(t,T)/T.
double ramp(const RampUp& r, double epoch);

struct LossBreakdown {
    double l1 = 0.0;
    double l2 = 0.0;
    double l3_kl = 0.0;
    double l3_penalty = 0.0;
    double total = 0.0;

    void sum_up() noexcept { total = l1 + l2 + l3_kl + l3_penalty; }
};

struct LossGrad {
    double value = 0.0;
    Matrix grad_logits;
};

/// Mean cross-entropy over rows whose label is not kUnlabeled. Gradient is
/// (p − y)/n on labelled rows and zero elsewhere.
LossGrad loss_supervised(const Matrix& probs, std::span<const int> labels);

/// alpha·mean_rows KL(teacher ‖ student). Teacher is a constant.
LossGrad loss_consistency(const Matrix& student_probs, const Matrix& teacher_probs, double alpha);

struct ConstraintLoss {
    double kl = 0.0;
    double penalty = 0.0;
    std::vector<double> term_values;
    Matrix z_hat;
    Matrix grad_latent;
    ParamGrads encoder;
    ParamGrads decoder;
};

/// ẑ = encoder(ℓ), ℓ̂ = decoder(ẑ); kl = mean ‖ℓ̂ − ℓ‖²/(2σ²) and the
/// constraint penalty on ẑ. σ = +inf switches the reconstruction term off.
ConstraintLoss loss_constraint(const Matrix& latent, const Network& encoder, const Network& decoder,
                               const ConstraintSpec& spec, const Matrix& traces, const Matrix& theta0,
                               const KnownParams& known, double sigma);

struct BaselineLoss {
    double value = 0.0;
    Matrix grad_labeled;
    Matrix grad_unlabeled;
};

/// (1/n)Σ CE(y, f) + alpha·(1/n′)Σ CE(y′, f′) with hard pseudo labels y′.
BaselineLoss baseline_loss(const Matrix& probs_labeled, std::span<const int> labels, const Matrix& probs_unlabeled,
                           std::span<const int> pseudo_labels, double alpha);

inline constexpr double kProbFloor = 1e-12;

// Model file: char[8] "HSSLHYB1", u64 feature count, float64 means, float64
// scales, then four network records (primary, secondary, encoder, decoder)
// in the network checkpoint format.
void save_model(const HybridModel& model, const std::string& path);
HybridModel load_model(const std::string& path);

} // namespace hssl
