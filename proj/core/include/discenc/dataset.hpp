#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "discenc/matrix.hpp"

namespace discenc {

/// N samples by D features in [0,1], with dense 0-based class ids.
struct Dataset {
    Matrix x;
    std::vector<int> y;
    std::vector<std::string> class_names;
    std::optional<std::pair<std::size_t, std::size_t>> image_shape;  // (height, width)

    std::size_t size() const { return x.rows(); }
    std::size_t dim() const { return x.cols(); }
    std::size_t num_classes() const { return class_names.size(); }

    /// Checks the [0,1] range, label density and shape consistency; throws
    /// std::invalid_argument on violation. Every loader calls this before
    /// returning.
    void validate() const;
};

struct SplitSpec {
    enum class Mode { PerClassCount, Fraction };
    Mode mode = Mode::PerClassCount;
    std::size_t n_train = 1;   // PerClassCount: training samples kept per class
    double fraction = 0.5;     // Fraction: training share per class, in (0,1)
    std::uint64_t seed = 0;

    static SplitSpec per_class_count(std::size_t n, std::uint64_t seed) {
        return {Mode::PerClassCount, n, 0.0, seed};
    }
    static SplitSpec by_fraction(double p, std::uint64_t seed) {
        return {Mode::Fraction, 0, p, seed};
    }
};

/// Parses an MNIST-style IDX pair (big-endian, u8 pixels). Pixels are scaled
/// into [0,1]; image_shape is taken from the header dimensions.
Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels);

/// Loads root/<class_name>/<image>.{pgm,png}, one subdirectory per class,
/// class ids assigned in sorted subdirectory-name order. Every image is
/// resized to (height, width) with bilinear interpolation (pixel centers at
/// half-integers, edge samples clamped) and scaled into [0,1].
Dataset load_image_dir(const std::filesystem::path& root, std::size_t height, std::size_t width);

/// Per-class seeded shuffle, then the first n_train (or fraction) rows of
/// each class go to train and the rest to test. Both sides keep at least one
/// sample of every class, so labels stay dense.
std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec);

/// Gaussian blobs around per-class random centers in [0.2, 0.8]^dim, clipped
/// to [0,1]. Test fixture generator.
Dataset synth_blobs(std::size_t classes, std::size_t per_class, std::size_t dim, double spread,
                    std::uint64_t seed);

// Image primitives used by load_image_dir, exposed for direct testing.
struct GrayImage {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::uint8_t> pixels;  // row-major
};

GrayImage load_gray_image(const std::filesystem::path& path);

/// Bilinear resample with half-integer pixel centers and no corner
/// alignment; returns values in [0,1] (input 0..255 is divided by 255 after
/// interpolation).
std::vector<double> resize_bilinear(const GrayImage& src, std::size_t out_height,
                                    std::size_t out_width);

}  // namespace discenc
