#pragma once

#include <cstdint>

#include "discenc/network.hpp"

namespace discenc {

/// Compares backpropagation gradients against central finite differences of
/// the loss. The finite-difference side evaluates the loss through forward()
/// and mse() only, so it exercises none of the code in backward().
///
/// Reported error per parameter: |g_bp - g_fd| / max(1, |g_bp|, |g_fd|).
struct GradCheckReport {
    double max_relative_error = 0.0;
    std::size_t parameters_checked = 0;
};

GradCheckReport gradient_check(const Network& net, const Matrix& batch, const Matrix& targets,
                               double epsilon);

/// Builds a small random net + batch from the seed and checks it. Layer
/// count, widths and activations are drawn from the seed; values match the
/// shapes the diagnostic CLI reports.
GradCheckReport gradient_check_random(std::uint64_t seed, std::size_t max_layers,
                                      std::size_t max_width, double epsilon);

}  // namespace discenc
