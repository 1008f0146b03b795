#pragma once

// Dense feed-forward networks with hand-written backprop, Dropout/DropConnect
// masks, SGD-momentum/Adam optimizers, the EMA weight rule, and the flat
// binary checkpoint format.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hssl/numkit.hpp"

namespace hssl {

enum class Activation { relu, identity };
enum class OutputHead { softmax, identity };

struct DenseLayer {
    Matrix weights; // in x out
    Matrix bias;    // 1 x out
    Activation activation = Activation::identity;

    std::size_t in_width() const noexcept { return weights.rows(); }
    std::size_t out_width() const noexcept { return weights.cols(); }
    bool operator==(const DenseLayer&) const = default;
};

/// he_xavier: He-uniform weights for relu layers, Xavier-uniform otherwise,
/// zero biases. fan_in_uniform: weights and biases U(±1/√fan_in).
enum class InitScheme { he_xavier, fan_in_uniform };

/// Layer widths plus activations; two networks built from equal specs have
/// identical parameter layouts.
struct NetworkSpec {
    std::vector<std::size_t> widths; // input, hidden..., output
    Activation hidden_activation = Activation::relu;
    Activation output_activation = Activation::identity;
    OutputHead head = OutputHead::identity;
    InitScheme init = InitScheme::he_xavier;
};

class Network {
public:
    Network() = default;
    Network(std::vector<DenseLayer> layers, OutputHead head);

    static Network initialized(const NetworkSpec& spec, Rng& rng);

    const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
    std::vector<DenseLayer>& layers() noexcept { return layers_; }
    OutputHead head() const noexcept { return head_; }

    std::size_t input_width() const;
    std::size_t output_width() const;
    /// Width of the last hidden layer (input width for a single-layer net).
    std::size_t latent_width() const;
    std::size_t parameter_count() const noexcept;
    bool same_architecture(const Network& other) const noexcept;

    bool operator==(const Network& other) const = default;

private:
    void validate() const;

    std::vector<DenseLayer> layers_;
    OutputHead head_ = OutputHead::identity;
};

/// Optional multiplicative noise for one forward pass. Empty entries mean
/// "no mask" for that layer. `activation[k]` scales the output of layer k
/// (hidden layers only); `weight[k]` scales layer k's weight entries.
struct NoiseMasks {
    std::vector<Matrix> activation;
    std::vector<Matrix> weight;
};

struct ForwardTrace {
    Matrix input;
    std::vector<Matrix> pre;  // per layer, before activation
    std::vector<Matrix> post; // per layer, after activation (and dropout)
    Matrix logits;            // last layer output before the head
    Matrix output;            // after the head
    Matrix latent;            // post-activation of the last hidden layer
    std::optional<NoiseMasks> masks;
};

struct ParamGrads {
    std::vector<Matrix> weights;
    std::vector<Matrix> bias;
    Matrix input; // dL/dx

    static ParamGrads zeros_like(const Network& net);
    void add(const ParamGrads& other);
    void scale(double s);
};

ForwardTrace forward(const Network& net, const Matrix& x, const NoiseMasks* masks = nullptr);
/// Inference-only forward returning the head output.
Matrix predict(const Network& net, const Matrix& x);

/// Backprop from dL/d(logits). The head is not differentiated here; losses
/// supply logit gradients (fused softmax-cross-entropy).
ParamGrads backward(const Network& net, const ForwardTrace& trace, const Matrix& grad_logits);
/// Backprop from dL/d(latent). The output layer receives zero gradient.
ParamGrads backward_from_latent(const Network& net, const ForwardTrace& trace, const Matrix& grad_latent);

/// Inverted-dropout activation mask: entries in {0, 1/(1-p_drop)}.
Matrix dropout_mask(Rng& rng, std::size_t rows, std::size_t cols, double p_drop);
/// Same arithmetic, shaped like a weight matrix.
Matrix dropconnect_mask(Rng& rng, std::size_t in, std::size_t out, double p_drop);

/// secondary <- beta * secondary + (1 - beta) * primary, parameter by parameter.
void ema_update(Network& secondary, const Network& primary, double beta);

enum class OptimizerKind { sgd_momentum, adam };

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::adam;
    double learning_rate = 1e-3;
    double momentum = 0.9;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

class Optimizer {
public:
    /// Tracks layers [layer_begin, layer_end) of networks shaped like `net`.
    Optimizer(const OptimizerConfig& config, const Network& net, std::size_t layer_begin = 0,
              std::size_t layer_end = static_cast<std::size_t>(-1));

    void step(Network& net, const ParamGrads& grads);

    const OptimizerConfig& config() const noexcept { return config_; }
    std::uint64_t steps_taken() const noexcept { return t_; }

private:
    void update(Matrix& param, const Matrix& grad, Matrix& m, Matrix& v);

    OptimizerConfig config_;
    std::size_t begin_;
    std::size_t end_;
    std::vector<Matrix> m_w_, m_b_, v_w_, v_b_;
    std::uint64_t t_ = 0;
    double bias1_ = 1.0;
    double bias2_ = 1.0;
};

// Checkpoint format, all integers and floats little-endian:
//   char[8]  "HSSLNET1"
//   u32      head (0 softmax, 1 identity)
//   u32      layer count L
//   L times: u64 in, u64 out, u32 activation (0 relu, 1 identity)
//   L times: in*out float64 weights (row-major), out float64 bias
void write_network(std::ostream& out, const Network& net);
Network read_network(std::istream& in);

namespace le {
void write_u32(std::ostream& out, std::uint32_t v);
void write_u64(std::ostream& out, std::uint64_t v);
void write_f64(std::ostream& out, double v);
void write_f64s(std::ostream& out, std::span<const double> values);
std::uint32_t read_u32(std::istream& in);
std::uint64_t read_u64(std::istream& in);
double read_f64(std::istream& in);
std::vector<double> read_f64s(std::istream& in, std::size_t count);
} // namespace le

} // namespace hssl
