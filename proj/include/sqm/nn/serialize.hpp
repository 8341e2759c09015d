// Copyright 2026 The sqmgnn Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file serialize.hpp
 * DenseNet persistence.
 *
 * Manifest (JSON): {"format": "sqmgnn.dense.v1", "layer_dims": [...],
 * "activations": [...], "param_count": n, "blob": "<file>.bin"}.
 * Blob: n little-endian float64 values in the flat layout of DenseNet.
 */
#pragma once

#include <string>
#include <vector>

#include "sqm/io.hpp"
#include "sqm/nn/dense.hpp"

namespace sqm::nn {

inline io::json describe(const DenseNet &net) {
    io::json acts = io::json::array();
    for (auto a : net.activations()) {
        acts.push_back(std::string(activation_name(a)));
    }
    return {{"layer_dims", net.layer_dims()},
            {"activations", acts},
            {"param_count", net.num_params()}};
}

inline DenseNet from_description(const io::json &j) {
    try {
        auto dims = j.at("layer_dims").get<std::vector<std::size_t>>();
        std::vector<Activation> acts;
        for (const auto &a : j.at("activations")) {
            acts.push_back(parse_activation(a.get<std::string>()));
        }
        DenseNet net(std::move(dims), std::move(acts));
        if (j.contains("param_count") && j.at("param_count").get<std::size_t>() != net.num_params()) {
            throw DataError("dense manifest param_count disagrees with layer_dims");
        }
        return net;
    } catch (const io::json::exception &e) {
        throw DataError(std::string("malformed dense manifest: ") + e.what());
    }
}

inline void save(const DenseNet &net, const io::fs::path &manifest) {
    const auto blob = io::blob_path_for(manifest);
    io::json j = describe(net);
    j["format"] = "sqmgnn.dense.v1";
    j["blob"] = blob.filename().string();
    io::write_json(manifest, j);
    io::write_f64_blob(blob, net.params());
}

inline DenseNet load(const io::fs::path &manifest) {
    const io::json j = io::read_json(manifest);
    DenseNet net = from_description(j);
    const auto values = io::read_f64_blob(manifest.parent_path() / j.value("blob", io::blob_path_for(manifest).filename().string()));
    if (values.size() != net.num_params()) {
        throw DataError(manifest.string() + ": blob holds " + std::to_string(values.size()) +
                        " values, manifest expects " + std::to_string(net.num_params()));
    }
    net.set_params(values);
    return net;
}

} // namespace sqm::nn
