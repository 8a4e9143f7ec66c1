#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hatnet/network.hpp"
#include "hatnet/report.hpp"

namespace hatnet {

// Raised for structurally invalid model files; I/O failures raise
// std::ios_base::failure via the stream calls below.
struct ModelFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Schema: { "widths": [...], "layers": [ { "out_dim", "in_dim",
// "triplets": [[row, col, value], ...] sorted by (row, col),
// "bias": [...] } ] }.  Doubles survive a round trip bit for bit.
inline nlohmann::json to_json(const NetworkIR& net) {
    nlohmann::json j;
    j["widths"] = net.widths();
    j["layers"] = nlohmann::json::array();
    for (const SparseAffine& a : net.layers()) {
        nlohmann::json layer;
        layer["out_dim"] = a.out_dim();
        layer["in_dim"] = a.in_dim();
        nlohmann::json triplets = nlohmann::json::array();
        for (const Triplet& e : a.triplets())
            triplets.push_back({e.row, e.col, e.value});
        layer["triplets"] = std::move(triplets);
        layer["bias"] = a.bias();
        j["layers"].push_back(std::move(layer));
    }
    return j;
}

inline NetworkIR from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object() || !j.contains("layers") || !j["layers"].is_array() ||
            j["layers"].empty())
            throw ModelFormatError("model: missing or empty 'layers' array");
        std::vector<SparseAffine> layers;
        for (const nlohmann::json& jl : j["layers"]) {
            const auto out_dim = jl.at("out_dim").get<std::size_t>();
            const auto in_dim = jl.at("in_dim").get<std::size_t>();
            std::vector<Triplet> tr;
            for (const nlohmann::json& jt : jl.at("triplets")) {
                if (!jt.is_array() || jt.size() != 3)
                    throw ModelFormatError("model: triplet entries must be [row, col, value]");
                tr.push_back({jt[0].get<std::size_t>(), jt[1].get<std::size_t>(),
                              jt[2].get<double>()});
            }
            auto bias = jl.at("bias").get<std::vector<double>>();
            layers.emplace_back(out_dim, in_dim, std::move(tr), std::move(bias));
        }
        NetworkIR net{std::move(layers)};
        if (j.contains("widths") &&
            j["widths"].get<std::vector<std::size_t>>() != net.widths())
            throw ModelFormatError("model: 'widths' disagrees with layer shapes");
        return net;
    } catch (const nlohmann::json::exception& e) {
        throw ModelFormatError(std::string("model: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ModelFormatError(std::string("model: ") + e.what());
    }
}

inline void save_json(const NetworkIR& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
    out << to_json(net).dump(2) << "\n";
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

inline NetworkIR load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open for reading: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ModelFormatError(std::string("model: ") + e.what());
    }
    return from_json(j);
}

// One CSV file per layer at <prefix>layer<i>.csv: out_dim rows of
// in_dim dense weights followed by the bias in the last column.
inline std::vector<std::string> save_dense_csv(const NetworkIR& net,
                                               const std::string& prefix) {
    std::vector<std::string> paths;
    for (std::size_t l = 0; l < net.layers().size(); ++l) {
        const SparseAffine& a = net.layers()[l];
        const std::string path = prefix + "layer" + std::to_string(l) + ".csv";
        std::ofstream out(path);
        if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
        const std::vector<double> w = a.dense();
        for (std::size_t r = 0; r < a.out_dim(); ++r) {
            for (std::size_t c = 0; c < a.in_dim(); ++c)
                out << format_full(w[r * a.in_dim() + c]) << ",";
            out << format_full(a.bias()[r]) << "\n";
        }
        if (!out) throw std::ios_base::failure("write failed: " + path);
        paths.push_back(path);
    }
    return paths;
}

} // namespace hatnet
