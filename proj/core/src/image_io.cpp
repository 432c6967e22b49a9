#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>

#include <png.h>

#include "discenc/dataset.hpp"
#include "discenc/errors.hpp"

namespace discenc {

namespace {

[[noreturn]] void bad_image(const std::filesystem::path& path, const std::string& why) {
    throw FormatError(FormatError::Kind::BadImage, path.string() + ": " + why);
}

// P5 binary PGM, maxval 255, '#' comments allowed in the header.
GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad_image(path, "cannot open");

    auto next_token = [&]() -> std::string {
        std::string tok;
        int c;
        while ((c = in.get()) != EOF) {
            if (c == '#') {
                while ((c = in.get()) != EOF && c != '\n') {
                }
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty()) break;
                continue;
            }
            tok.push_back(static_cast<char>(c));
        }
        return tok;
    };

    if (next_token() != "P5") bad_image(path, "not a binary PGM (P5)");
    const std::string ws = next_token(), hs = next_token(), ms = next_token();
    if (ws.empty() || hs.empty() || ms.empty()) bad_image(path, "truncated PGM header");
    GrayImage img;
    try {
        img.width = std::stoul(ws);
        img.height = std::stoul(hs);
    } catch (const std::exception&) {
        bad_image(path, "malformed PGM dimensions");
    }
    if (ms != "255") bad_image(path, "PGM maxval must be 255, got " + ms);
    if (img.width == 0 || img.height == 0) bad_image(path, "empty PGM");

    img.pixels.resize(img.width * img.height);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
        bad_image(path, "PGM pixel data truncated");
    }
    return img;
}

// libpng simplified API; converts palette/rgb/alpha/16-bit inputs to 8-bit gray.
GrayImage load_png_gray(const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
        bad_image(path, std::string("libpng: ") + image.message);
    }
    image.format = PNG_FORMAT_GRAY;

    GrayImage img;
    img.width = image.width;
    img.height = image.height;
    if (img.width == 0 || img.height == 0) {
        png_image_free(&image);
        bad_image(path, "empty PNG");
    }
    img.pixels.resize(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, img.pixels.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        bad_image(path, "libpng: " + message);
    }
    return img;
}

}  // namespace

GrayImage load_gray_image(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".pgm" || ext == ".PGM") return load_pgm(path);
    if (ext == ".png" || ext == ".PNG") return load_png_gray(path);
    bad_image(path, "unsupported extension (expected .pgm or .png)");
}

std::vector<double> resize_bilinear(const GrayImage& src, std::size_t out_height,
                                    std::size_t out_width) {
    std::vector<double> out(out_height * out_width);
    const double sy_scale = static_cast<double>(src.height) / static_cast<double>(out_height);
    const double sx_scale = static_cast<double>(src.width) / static_cast<double>(out_width);
    for (std::size_t oy = 0; oy < out_height; ++oy) {
        // Pixel centers at half-integers; edge samples clamp to the border.
        double sy = (static_cast<double>(oy) + 0.5) * sy_scale - 0.5;
        sy = std::clamp(sy, 0.0, static_cast<double>(src.height - 1));
        const std::size_t y0 = static_cast<std::size_t>(sy);
        const std::size_t y1 = std::min(y0 + 1, src.height - 1);
        const double fy = sy - static_cast<double>(y0);
        for (std::size_t ox = 0; ox < out_width; ++ox) {
            double sx = (static_cast<double>(ox) + 0.5) * sx_scale - 0.5;
            sx = std::clamp(sx, 0.0, static_cast<double>(src.width - 1));
            const std::size_t x0 = static_cast<std::size_t>(sx);
            const std::size_t x1 = std::min(x0 + 1, src.width - 1);
            const double fx = sx - static_cast<double>(x0);

            const double p00 = src.pixels[y0 * src.width + x0];
            const double p01 = src.pixels[y0 * src.width + x1];
            const double p10 = src.pixels[y1 * src.width + x0];
            const double p11 = src.pixels[y1 * src.width + x1];
            const double top = p00 + (p01 - p00) * fx;
            const double bot = p10 + (p11 - p10) * fx;
            out[oy * out_width + ox] = (top + (bot - top) * fy) / 255.0;
        }
    }
    return out;
}

Dataset load_image_dir(const std::filesystem::path& root, std::size_t height, std::size_t width) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root)) {
        throw std::runtime_error("load_image_dir: " + root.string() + " is not a directory");
    }

    // Sorted traversal keeps class ids and row order deterministic.
    std::map<std::string, std::vector<fs::path>> classes;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        std::vector<fs::path> files;
        for (const auto& file : fs::directory_iterator(entry.path())) {
            const std::string ext = file.path().extension().string();
            if (ext == ".pgm" || ext == ".PGM" || ext == ".png" || ext == ".PNG") {
                files.push_back(file.path());
            }
        }
        if (files.empty()) {
            throw FormatError(FormatError::Kind::EmptyClass,
                              "load_image_dir: no images under " + entry.path().string());
        }
        std::sort(files.begin(), files.end());
        classes.emplace(entry.path().filename().string(), std::move(files));
    }
    if (classes.empty()) {
        throw std::runtime_error("load_image_dir: no class subdirectories under " + root.string());
    }

    std::size_t total = 0;
    for (const auto& [name, files] : classes) total += files.size();

    Dataset ds;
    ds.x = Matrix(total, height * width);
    ds.y.reserve(total);
    std::size_t row = 0;
    int class_id = 0;
    for (const auto& [name, files] : classes) {
        for (const auto& file : files) {
            const GrayImage img = load_gray_image(file);
            const std::vector<double> resized = resize_bilinear(img, height, width);
            std::copy(resized.begin(), resized.end(), ds.x.data() + row * ds.x.cols());
            ds.y.push_back(class_id);
            ++row;
        }
        ds.class_names.push_back(name);
        ++class_id;
    }
    ds.image_shape = {height, width};
    ds.validate();
    return ds;
}

}  // namespace discenc
