#include "discenc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "discenc/errors.hpp"
#include "discenc/rng.hpp"

namespace discenc {

void Dataset::validate() const {
    if (x.rows() != y.size()) {
        throw std::invalid_argument("Dataset: " + std::to_string(x.rows()) + " rows but " +
                                    std::to_string(y.size()) + " labels");
    }
    const int c = static_cast<int>(class_names.size());
    std::vector<bool> seen(class_names.size(), false);
    for (int label : y) {
        if (label < 0 || label >= c) {
            throw std::invalid_argument("Dataset: label " + std::to_string(label) +
                                        " outside [0, " + std::to_string(c) + ")");
        }
        seen[static_cast<std::size_t>(label)] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            throw std::invalid_argument("Dataset: class id " + std::to_string(i) +
                                        " has no samples");
        }
    }
    const double* p = x.data();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
            throw std::invalid_argument("Dataset: feature value " + std::to_string(p[i]) +
                                        " outside [0, 1]");
        }
    }
    if (image_shape && image_shape->first * image_shape->second != x.cols()) {
        throw std::invalid_argument("Dataset: image shape does not multiply out to " +
                                    std::to_string(x.cols()) + " features");
    }
}

namespace {

std::uint32_t read_be_u32(std::istream& in, const std::filesystem::path& path) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) {
        throw FormatError(FormatError::Kind::CorruptLength,
                          "idx: truncated header in " + path.string());
    }
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

}  // namespace

Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels) {
    std::ifstream img(images, std::ios::binary);
    if (!img) throw std::runtime_error("load_idx: cannot open " + images.string());
    std::ifstream lab(labels, std::ios::binary);
    if (!lab) throw std::runtime_error("load_idx: cannot open " + labels.string());

    const std::uint32_t img_magic = read_be_u32(img, images);
    if (img_magic != 0x00000803u) {
        throw FormatError(FormatError::Kind::BadMagic,
                          "idx: bad image magic in " + images.string() + " (got " +
                              std::to_string(img_magic) + ", expected 2051)");
    }
    const std::uint32_t n_images = read_be_u32(img, images);
    const std::uint32_t height = read_be_u32(img, images);
    const std::uint32_t width = read_be_u32(img, images);

    const std::uint32_t lab_magic = read_be_u32(lab, labels);
    if (lab_magic != 0x00000801u) {
        throw FormatError(FormatError::Kind::BadMagic,
                          "idx: bad label magic in " + labels.string() + " (got " +
                              std::to_string(lab_magic) + ", expected 2049)");
    }
    const std::uint32_t n_labels = read_be_u32(lab, labels);
    if (n_images != n_labels) {
        throw FormatError(FormatError::Kind::CountMismatch,
                          "idx: " + std::to_string(n_images) + " images vs " +
                              std::to_string(n_labels) + " labels");
    }

    const std::size_t dim = std::size_t(height) * width;
    std::vector<std::uint8_t> pixels(std::size_t(n_images) * dim);
    img.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (img.gcount() != static_cast<std::streamsize>(pixels.size())) {
        throw FormatError(FormatError::Kind::CorruptLength,
                          "idx: image payload truncated in " + images.string());
    }
    std::vector<std::uint8_t> raw_labels(n_labels);
    lab.read(reinterpret_cast<char*>(raw_labels.data()),
             static_cast<std::streamsize>(raw_labels.size()));
    if (lab.gcount() != static_cast<std::streamsize>(raw_labels.size())) {
        throw FormatError(FormatError::Kind::CorruptLength,
                          "idx: label payload truncated in " + labels.string());
    }

    Dataset ds;
    ds.x = Matrix(n_images, dim);
    double* out = ds.x.data();
    for (std::size_t i = 0; i < pixels.size(); ++i) out[i] = pixels[i] / 255.0;
    ds.y.resize(n_labels);
    int max_label = 0;
    for (std::size_t i = 0; i < raw_labels.size(); ++i) {
        ds.y[i] = raw_labels[i];
        max_label = std::max(max_label, ds.y[i]);
    }
    for (int c = 0; c <= max_label; ++c) ds.class_names.push_back(std::to_string(c));
    ds.image_shape = {height, width};
    ds.validate();
    return ds;
}

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec) {
    data.validate();
    const std::size_t classes = data.num_classes();

    std::vector<std::vector<std::size_t>> by_class(classes);
    for (std::size_t i = 0; i < data.size(); ++i) {
        by_class[static_cast<std::size_t>(data.y[i])].push_back(i);
    }

    SeededRng rng(spec.seed);
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> test_idx;
    for (std::size_t c = 0; c < classes; ++c) {
        auto& rows = by_class[c];
        std::size_t take = 0;
        if (spec.mode == SplitSpec::Mode::PerClassCount) {
            if (spec.n_train < 1 || spec.n_train >= rows.size()) {
                throw std::invalid_argument(
                    "split: n_train=" + std::to_string(spec.n_train) + " invalid for class \"" +
                    data.class_names[c] + "\" with " + std::to_string(rows.size()) + " samples");
            }
            take = spec.n_train;
        } else {
            if (!(spec.fraction > 0.0 && spec.fraction < 1.0)) {
                throw std::invalid_argument("split: fraction must lie in (0, 1)");
            }
            if (rows.size() < 2) {
                throw std::invalid_argument("split: class \"" + data.class_names[c] +
                                            "\" has fewer than 2 samples");
            }
            const auto want = static_cast<std::size_t>(
                std::llround(spec.fraction * static_cast<double>(rows.size())));
            take = std::clamp<std::size_t>(want, 1, rows.size() - 1);
        }
        rng.shuffle(rows.data(), rows.size());
        train_idx.insert(train_idx.end(), rows.begin(), rows.begin() + take);
        test_idx.insert(test_idx.end(), rows.begin() + take, rows.end());
    }

    auto gather = [&](const std::vector<std::size_t>& idx) {
        Dataset out;
        out.x = Matrix(idx.size(), data.dim());
        out.y.reserve(idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r) {
            std::copy_n(data.x.data() + idx[r] * data.dim(), data.dim(),
                        out.x.data() + r * data.dim());
            out.y.push_back(data.y[idx[r]]);
        }
        out.class_names = data.class_names;
        out.image_shape = data.image_shape;
        out.validate();
        return out;
    };
    return {gather(train_idx), gather(test_idx)};
}

Dataset synth_blobs(std::size_t classes, std::size_t per_class, std::size_t dim, double spread,
                    std::uint64_t seed) {
    if (classes < 2) throw std::invalid_argument("synth_blobs: need at least 2 classes");
    if (dim < 2) throw std::invalid_argument("synth_blobs: need at least 2 dimensions");
    if (per_class < 1) throw std::invalid_argument("synth_blobs: need at least 1 sample per class");

    SeededRng rng(seed);
    Dataset ds;
    ds.x = Matrix(classes * per_class, dim);
    ds.y.reserve(classes * per_class);
    std::size_t row = 0;
    for (std::size_t c = 0; c < classes; ++c) {
        std::vector<double> center(dim);
        for (auto& v : center) v = rng.uniform(0.2, 0.8);
        for (std::size_t s = 0; s < per_class; ++s, ++row) {
            double* out = ds.x.data() + row * dim;
            for (std::size_t d = 0; d < dim; ++d) {
                out[d] = std::clamp(rng.normal(center[d], spread), 0.0, 1.0);
            }
            ds.y.push_back(static_cast<int>(c));
        }
        ds.class_names.push_back("blob" + std::to_string(c));
    }
    ds.validate();
    return ds;
}

}  // namespace discenc
