#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "discenc/errors.hpp"
#include "discenc/network.hpp"

namespace discenc {

namespace {

constexpr int kFormatVersion = 1;

void check_finite_array(const std::vector<double>& values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw FormatError(FormatError::Kind::NonFinite,
                              std::string("model file contains a non-finite ") + what);
        }
    }
}

}  // namespace

std::string network_to_json(const Network& net) {
    nlohmann::json doc;
    doc["format_version"] = kFormatVersion;
    doc["layer_sizes"] = net.spec.layer_sizes;
    doc["hidden_activation"] = activation_name(net.spec.hidden_activation);
    doc["output_activation"] = activation_name(net.spec.output_activation);
    doc["init_seed"] = net.spec.init_seed;
    nlohmann::json weights = nlohmann::json::array();
    for (const Matrix& w : net.weights) {
        weights.push_back(std::vector<double>(w.data(), w.data() + w.size()));
    }
    doc["weights"] = std::move(weights);
    doc["biases"] = net.biases;
    return doc.dump();
}

Network network_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(FormatError::Kind::CorruptLength,
                          std::string("model file is not valid JSON: ") + e.what());
    }
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer()) {
        throw FormatError(FormatError::Kind::VersionMismatch,
                          "model file has no format_version field");
    }
    const int version = doc["format_version"].get<int>();
    if (version != kFormatVersion) {
        throw FormatError(FormatError::Kind::VersionMismatch,
                          "unsupported model format_version " + std::to_string(version) +
                              " (expected " + std::to_string(kFormatVersion) + ")");
    }

    NetworkSpec spec;
    try {
        spec.layer_sizes = doc.at("layer_sizes").get<std::vector<std::size_t>>();
        spec.hidden_activation = activation_from_name(doc.at("hidden_activation").get<std::string>());
        spec.output_activation = activation_from_name(doc.at("output_activation").get<std::string>());
        spec.init_seed = doc.at("init_seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(FormatError::Kind::CorruptLength,
                          std::string("model file is missing fields: ") + e.what());
    }
    if (spec.layer_sizes.size() < 2) {
        throw FormatError(FormatError::Kind::CorruptLength,
                          "model file lists fewer than two layers");
    }

    Network net;
    net.spec = spec;
    const auto& weights = doc.at("weights");
    const auto& biases = doc.at("biases");
    const std::size_t layers = spec.layer_sizes.size() - 1;
    if (weights.size() != layers || biases.size() != layers) {
        throw FormatError(FormatError::Kind::CorruptLength,
                          "model file has " + std::to_string(weights.size()) + " weight blocks and " +
                              std::to_string(biases.size()) + " bias blocks for " +
                              std::to_string(layers) + " layers");
    }
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t din = spec.layer_sizes[l];
        const std::size_t dout = spec.layer_sizes[l + 1];
        auto wdata = weights[l].get<std::vector<double>>();
        if (wdata.size() != din * dout) {
            throw FormatError(FormatError::Kind::CorruptLength,
                              "weight block " + std::to_string(l) + " has length " +
                                  std::to_string(wdata.size()) + ", expected " +
                                  std::to_string(din * dout));
        }
        check_finite_array(wdata, "weight");
        net.weights.emplace_back(din, dout, std::move(wdata));

        auto bdata = biases[l].get<std::vector<double>>();
        if (bdata.size() != dout) {
            throw FormatError(FormatError::Kind::CorruptLength,
                              "bias block " + std::to_string(l) + " has length " +
                                  std::to_string(bdata.size()) + ", expected " +
                                  std::to_string(dout));
        }
        check_finite_array(bdata, "bias");
        net.biases.push_back(std::move(bdata));
    }
    return net;
}

void save_network(const Network& net, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_network: cannot open " + path.string());
    out << network_to_json(net) << '\n';
    if (!out) throw std::runtime_error("save_network: write failed for " + path.string());
}

Network load_network(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_network: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return network_from_json(buf.str());
}

}  // namespace discenc
