#include "discenc/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "discenc/rng.hpp"

namespace discenc {

namespace {

double loss_at(const Network& net, const Matrix& batch, const Matrix& targets) {
    return mse(forward(net, batch).back(), targets);
}

double relative_error(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

GradCheckReport gradient_check(const Network& net, const Matrix& batch, const Matrix& targets,
                               double epsilon) {
    const Gradients analytic = backward(net, batch, targets);

    Network probe = net;
    GradCheckReport report;

    for (std::size_t l = 0; l < net.num_layers(); ++l) {
        for (std::size_t i = 0; i < net.weights[l].size(); ++i) {
            const double saved = probe.weights[l].data()[i];
            probe.weights[l].data()[i] = saved + epsilon;
            const double up = loss_at(probe, batch, targets);
            probe.weights[l].data()[i] = saved - epsilon;
            const double down = loss_at(probe, batch, targets);
            probe.weights[l].data()[i] = saved;

            const double fd = (up - down) / (2.0 * epsilon);
            report.max_relative_error = std::max(
                report.max_relative_error, relative_error(analytic.weight_grads[l].data()[i], fd));
            ++report.parameters_checked;
        }
        for (std::size_t i = 0; i < net.biases[l].size(); ++i) {
            const double saved = probe.biases[l][i];
            probe.biases[l][i] = saved + epsilon;
            const double up = loss_at(probe, batch, targets);
            probe.biases[l][i] = saved - epsilon;
            const double down = loss_at(probe, batch, targets);
            probe.biases[l][i] = saved;

            const double fd = (up - down) / (2.0 * epsilon);
            report.max_relative_error = std::max(report.max_relative_error,
                                                 relative_error(analytic.bias_grads[l][i], fd));
            ++report.parameters_checked;
        }
    }
    return report;
}

GradCheckReport gradient_check_random(std::uint64_t seed, std::size_t max_layers,
                                      std::size_t max_width, double epsilon) {
    SeededRng rng(seed);
    const std::size_t layers = 1 + rng.next_u64() % max_layers;
    std::vector<std::size_t> sizes(layers + 1);
    for (auto& s : sizes) s = 2 + rng.next_u64() % (max_width - 1);

    const Activation acts[] = {Activation::Sigmoid, Activation::Tanh, Activation::Identity};
    NetworkSpec spec;
    spec.layer_sizes = sizes;
    spec.hidden_activation = acts[rng.next_u64() % 3];
    spec.output_activation = acts[rng.next_u64() % 3];
    spec.init_seed = rng.next_u64();

    Network net = init_network(spec);
    const std::size_t batch_rows = 1 + rng.next_u64() % 5;
    Matrix batch = rand_uniform(rng, batch_rows, sizes.front(), 0.0, 1.0);
    Matrix targets = rand_uniform(rng, batch_rows, sizes.back(), 0.0, 1.0);
    return gradient_check(net, batch, targets, epsilon);
}

}  // namespace discenc
