#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "discenc/matrix.hpp"

namespace discenc {

enum class Activation { Sigmoid, Tanh, Identity };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

inline double apply_activation(Activation a, double x) {
    switch (a) {
        case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
        case Activation::Tanh: return std::tanh(x);
        case Activation::Identity: return x;
    }
    return x;
}

/// Derivative expressed in terms of the activation *output* y:
/// sigmoid' = y(1-y), tanh' = 1-y^2, identity' = 1.
inline double activation_derivative(Activation a, double y) {
    switch (a) {
        case Activation::Sigmoid: return y * (1.0 - y);
        case Activation::Tanh: return 1.0 - y * y;
        case Activation::Identity: return 1.0;
    }
    return 1.0;
}

/// Architecture of a feed-forward net. layer_sizes lists every layer
/// including input and output, [d0, ..., dL]; the hidden activation applies
/// to layers 1..L-1 and the output activation to layer L.
struct NetworkSpec {
    std::vector<std::size_t> layer_sizes;
    Activation hidden_activation = Activation::Sigmoid;
    Activation output_activation = Activation::Sigmoid;
    std::uint64_t init_seed = 0;
};

/// Fully-connected net: per layer l in 1..L a weight matrix W_l of shape
/// d_{l-1} x d_l and a bias vector of length d_l. Activations are computed
/// as a_l = act_l(a_{l-1} W_l + b_l) with rows as samples.
struct Network {
    NetworkSpec spec;
    std::vector<Matrix> weights;              // weights[l-1] is W_l
    std::vector<std::vector<double>> biases;  // biases[l-1] is b_l

    std::size_t num_layers() const { return weights.size(); }
    std::size_t input_dim() const { return spec.layer_sizes.front(); }
    std::size_t output_dim() const { return spec.layer_sizes.back(); }
    Activation activation_of(std::size_t layer) const {
        return layer + 1 == spec.layer_sizes.size() ? spec.output_activation
                                                    : spec.hidden_activation;
    }
};

struct TrainConfig {
    double learning_rate = 0.1;
    double momentum = 0.9;
    std::size_t batch_size = 32;
    std::size_t max_epochs = 500;
    double target_mse = 1e-4;  // stop early once the epoch MSE drops to this
    std::uint64_t shuffle_seed = 0;
};

struct EpochStats {
    std::size_t epoch;  // 0-based, strictly increasing
    double mse;         // mean squared error accumulated over the epoch's batches
    double seconds;     // wall clock for the epoch; excluded from determinism contracts
};

using TrainLog = std::vector<EpochStats>;

/// Weights drawn from Uniform(-r, r) with r = sqrt(6 / (fan_in + fan_out)),
/// biases zero. Deterministic in spec.init_seed.
Network init_network(const NetworkSpec& spec);

/// Full forward pass; returns activations a_0..a_L (a_0 is the batch itself).
std::vector<Matrix> forward(const Network& net, const Matrix& batch);

/// Forward pass truncated after `upto` weight layers; returns a_0..a_upto.
std::vector<Matrix> forward_partial(const Network& net, const Matrix& batch, std::size_t upto);

struct Gradients {
    std::vector<Matrix> weight_grads;
    std::vector<std::vector<double>> bias_grads;
    double batch_mse = 0.0;
};

/// Backpropagation of E = 1/(2N) * sum ||a_L - target||^2 over the batch.
Gradients backward(const Network& net, const Matrix& batch, const Matrix& targets);

/// Mini-batch gradient descent with classical momentum:
///   v <- momentum * v - lr * g;  theta <- theta + v.
/// Sample order is reshuffled every epoch from a stream seeded with
/// cfg.shuffle_seed; a short final batch is kept and averaged over its actual
/// size. Updates are applied sequentially, so the result is a pure function
/// of (net, inputs, targets, cfg).
TrainLog train(Network& net, const Matrix& inputs, const Matrix& targets, const TrainConfig& cfg);

/// (1/(2N)) * sum of element-wise squared differences, N = rows.
double mse(const Matrix& pred, const Matrix& target);

/// Versioned JSON model file; reals round-trip bit-exactly.
void save_network(const Network& net, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

std::string network_to_json(const Network& net);
Network network_from_json(const std::string& text);

}  // namespace discenc
