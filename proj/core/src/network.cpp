#include "discenc/network.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>

#include "discenc/rng.hpp"

namespace discenc {

const char* activation_name(Activation a) {
    switch (a) {
        case Activation::Sigmoid: return "sigmoid";
        case Activation::Tanh: return "tanh";
        case Activation::Identity: return "identity";
    }
    return "sigmoid";
}

Activation activation_from_name(const std::string& name) {
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "tanh") return Activation::Tanh;
    if (name == "identity") return Activation::Identity;
    throw std::invalid_argument("unknown activation: " + name);
}

namespace {

void check_spec(const NetworkSpec& spec) {
    if (spec.layer_sizes.size() < 2) {
        throw std::invalid_argument("NetworkSpec: need at least input and output layer, got " +
                                    std::to_string(spec.layer_sizes.size()));
    }
    for (std::size_t s : spec.layer_sizes) {
        if (s == 0) throw std::invalid_argument("NetworkSpec: zero-width layer");
    }
}

void check_batch_width(const Network& net, const Matrix& batch) {
    if (batch.cols() != net.input_dim()) {
        throw std::invalid_argument("forward: batch width " + std::to_string(batch.cols()) +
                                    " does not match input layer width " +
                                    std::to_string(net.input_dim()));
    }
}

// a_prev (N x d_in) -> act(a_prev W + b), bias broadcast over rows.
Matrix layer_forward(const Matrix& a_prev, const Matrix& w, const std::vector<double>& b,
                     Activation act) {
    Matrix z = matmul(a_prev, w);
    for (std::size_t i = 0; i < z.rows(); ++i) {
        double* zrow = z.data() + i * z.cols();
        for (std::size_t j = 0; j < z.cols(); ++j) {
            zrow[j] = apply_activation(act, zrow[j] + b[j]);
        }
    }
    return z;
}

}  // namespace

Network init_network(const NetworkSpec& spec) {
    check_spec(spec);
    Network net;
    net.spec = spec;
    SeededRng rng(spec.init_seed);
    const auto& d = spec.layer_sizes;
    for (std::size_t l = 1; l < d.size(); ++l) {
        const double r = std::sqrt(6.0 / static_cast<double>(d[l - 1] + d[l]));
        net.weights.push_back(rand_uniform(rng, d[l - 1], d[l], -r, r));
        net.biases.emplace_back(d[l], 0.0);
    }
    return net;
}

std::vector<Matrix> forward_partial(const Network& net, const Matrix& batch, std::size_t upto) {
    check_batch_width(net, batch);
    if (upto > net.num_layers()) {
        throw std::invalid_argument("forward_partial: layer index out of range");
    }
    std::vector<Matrix> acts;
    acts.reserve(upto + 1);
    acts.push_back(batch);
    for (std::size_t l = 0; l < upto; ++l) {
        acts.push_back(layer_forward(acts.back(), net.weights[l], net.biases[l],
                                     net.activation_of(l)));
    }
    return acts;
}

std::vector<Matrix> forward(const Network& net, const Matrix& batch) {
    return forward_partial(net, batch, net.num_layers());
}

double mse(const Matrix& pred, const Matrix& target) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
        throw std::invalid_argument("mse: shape mismatch: " + std::to_string(pred.rows()) + "x" +
                                    std::to_string(pred.cols()) + " vs " +
                                    std::to_string(target.rows()) + "x" +
                                    std::to_string(target.cols()));
    }
    double acc = 0.0;
    const double* p = pred.data();
    const double* t = target.data();
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = p[i] - t[i];
        acc += d * d;
    }
    return acc / (2.0 * static_cast<double>(pred.rows()));
}

Gradients backward(const Network& net, const Matrix& batch, const Matrix& targets) {
    if (targets.cols() != net.output_dim()) {
        throw std::invalid_argument("backward: target width " + std::to_string(targets.cols()) +
                                    " does not match output layer width " +
                                    std::to_string(net.output_dim()));
    }
    if (targets.rows() != batch.rows()) {
        throw std::invalid_argument("backward: batch has " + std::to_string(batch.rows()) +
                                    " rows but targets have " + std::to_string(targets.rows()));
    }

    const std::vector<Matrix> acts = forward(net, batch);
    const std::size_t layers = net.num_layers();
    const double n = static_cast<double>(batch.rows());

    Gradients g;
    g.weight_grads.resize(layers);
    g.bias_grads.resize(layers);
    g.batch_mse = mse(acts.back(), targets);

    // delta_L = (a_L - y) .* act'(a_L); the 1/N of the loss is folded into
    // the parameter gradients below.
    Matrix delta(acts.back().rows(), acts.back().cols());
    {
        const Activation act = net.activation_of(layers - 1);
        const double* a = acts.back().data();
        const double* y = targets.data();
        double* d = delta.data();
        for (std::size_t i = 0; i < delta.size(); ++i) {
            d[i] = (a[i] - y[i]) * activation_derivative(act, a[i]);
        }
    }

    for (std::size_t l = layers; l-- > 0;) {
        // dW_l = (1/N) a_{l-1}^T delta, db_l = (1/N) column sums of delta.
        Matrix dw = matmul(transpose(acts[l]), delta);
        for (std::size_t i = 0; i < dw.size(); ++i) dw.data()[i] /= n;
        g.weight_grads[l] = std::move(dw);

        std::vector<double> db(delta.cols(), 0.0);
        for (std::size_t i = 0; i < delta.rows(); ++i) {
            const double* drow = delta.data() + i * delta.cols();
            for (std::size_t j = 0; j < delta.cols(); ++j) db[j] += drow[j];
        }
        for (double& v : db) v /= n;
        g.bias_grads[l] = std::move(db);

        if (l > 0) {
            Matrix next = matmul(delta, transpose(net.weights[l]));
            const Activation act = net.activation_of(l - 1);
            const double* a = acts[l].data();
            double* d = next.data();
            for (std::size_t i = 0; i < next.size(); ++i) {
                d[i] *= activation_derivative(act, a[i]);
            }
            delta = std::move(next);
        }
    }
    return g;
}

TrainLog train(Network& net, const Matrix& inputs, const Matrix& targets, const TrainConfig& cfg) {
    if (inputs.rows() == 0) throw std::invalid_argument("train: empty dataset");
    if (inputs.rows() != targets.rows()) {
        throw std::invalid_argument("train: inputs have " + std::to_string(inputs.rows()) +
                                    " rows but targets have " + std::to_string(targets.rows()));
    }
    check_batch_width(net, inputs);
    if (targets.cols() != net.output_dim()) {
        throw std::invalid_argument("train: target width " + std::to_string(targets.cols()) +
                                    " does not match output layer width " +
                                    std::to_string(net.output_dim()));
    }
    if (cfg.batch_size == 0) throw std::invalid_argument("train: batch_size must be positive");
    if (cfg.max_epochs == 0) throw std::invalid_argument("train: max_epochs must be positive");
    if (!(cfg.learning_rate > 0.0)) {
        throw std::invalid_argument("train: learning_rate must be positive");
    }
    if (cfg.momentum < 0.0 || cfg.momentum >= 1.0) {
        throw std::invalid_argument("train: momentum must lie in [0, 1)");
    }

    const std::size_t n = inputs.rows();
    const std::size_t layers = net.num_layers();

    std::vector<Matrix> vel_w;
    std::vector<std::vector<double>> vel_b;
    for (std::size_t l = 0; l < layers; ++l) {
        vel_w.emplace_back(net.weights[l].rows(), net.weights[l].cols());
        vel_b.emplace_back(net.biases[l].size(), 0.0);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    SeededRng shuffle_rng(cfg.shuffle_seed);

    TrainLog log;
    log.reserve(cfg.max_epochs);

    for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        shuffle_rng.shuffle(order.data(), order.size());

        double loss_sum = 0.0;  // sum over samples of ||a_L - y||^2 / 2
        for (std::size_t start = 0; start < n; start += cfg.batch_size) {
            const std::size_t count = std::min(cfg.batch_size, n - start);
            Matrix bx(count, inputs.cols());
            Matrix by(count, targets.cols());
            for (std::size_t r = 0; r < count; ++r) {
                const std::size_t src = order[start + r];
                std::copy_n(inputs.data() + src * inputs.cols(), inputs.cols(),
                            bx.data() + r * bx.cols());
                std::copy_n(targets.data() + src * targets.cols(), targets.cols(),
                            by.data() + r * by.cols());
            }

            Gradients g = backward(net, bx, by);
            loss_sum += g.batch_mse * static_cast<double>(count);

            for (std::size_t l = 0; l < layers; ++l) {
                double* w = net.weights[l].data();
                double* v = vel_w[l].data();
                const double* gw = g.weight_grads[l].data();
                for (std::size_t i = 0; i < net.weights[l].size(); ++i) {
                    v[i] = cfg.momentum * v[i] - cfg.learning_rate * gw[i];
                    w[i] += v[i];
                }
                auto& b = net.biases[l];
                auto& vb = vel_b[l];
                const auto& gb = g.bias_grads[l];
                for (std::size_t i = 0; i < b.size(); ++i) {
                    vb[i] = cfg.momentum * vb[i] - cfg.learning_rate * gb[i];
                    b[i] += vb[i];
                }
            }
        }

        const double epoch_mse = loss_sum / static_cast<double>(n);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                                .count();
        log.push_back({epoch, epoch_mse, secs});

        for (std::size_t l = 0; l < layers; ++l) {
            if (!net.weights[l].all_finite()) {
                throw std::runtime_error("train: diverged (non-finite weights) at epoch " +
                                         std::to_string(epoch));
            }
        }
        if (epoch_mse <= cfg.target_mse) break;
    }
    return log;
}

}  // namespace discenc
