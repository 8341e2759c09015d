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
 * @file checkpoint.hpp
 * Model checkpoints: a JSON manifest (kind, config, normalization, count)
 * plus a .bin blob of little-endian float64 parameters.
 *
 * Kinds "wmmse" and "max_power" carry no parameters and stand for the
 * reference policies, so evaluation code can treat them like models.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "sqm/d2d/baselines.hpp"
#include "sqm/errors.hpp"
#include "sqm/io.hpp"
#include "sqm/models/classical_gnn.hpp"
#include "sqm/models/common.hpp"
#include "sqm/models/sqm_gnn.hpp"

namespace sqm::models {

inline constexpr const char *kCheckpointFormat = "sqmgnn.checkpoint.v1";

struct WmmseOracle {
    std::size_t iterations{d2d::kWmmseIterations};
    double p_max{1.0};
};

struct MaxPowerPolicy {
    double p_max{1.0};
};

using Policy = std::variant<SqmGnnModel, ClassicalGnnModel, WmmseOracle, MaxPowerPolicy>;

inline std::string policy_kind(const Policy &p) {
    switch (p.index()) {
    case 0:
        return "sqm";
    case 1:
        return "gnn";
    case 2:
        return "wmmse";
    default:
        return "max_power";
    }
}

inline io::json to_json(const graph::NormStats &n) {
    return {{"node_mean", n.node_mean}, {"node_std", n.node_std}, {"edge_mean", n.edge_mean}, {"edge_std", n.edge_std}};
}

inline graph::NormStats norm_from_json(const io::json &j) {
    graph::NormStats n;
    n.node_mean = j.at("node_mean").get<double>();
    n.node_std = j.at("node_std").get<double>();
    n.edge_mean = j.at("edge_mean").get<double>();
    n.edge_std = j.at("edge_std").get<double>();
    return n;
}

inline void set_policy_p_max(Policy &p, double p_max) {
    std::visit(
        [&](auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, WmmseOracle> || std::is_same_v<T, MaxPowerPolicy>) {
                m.p_max = p_max;
            } else {
                m.set_p_max(p_max);
            }
        },
        p);
}

/**
 * Powers for one graph. `sigma2` is used only by the WMMSE oracle; the
 * learned models read normalized features from `g`.
 */
inline std::vector<double> policy_powers(const Policy &p, const PreparedGraph &g, double sigma2,
                                         std::uint64_t sample_seed) {
    return std::visit(
        [&](const auto &m) -> std::vector<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, WmmseOracle>) {
                return d2d::wmmse(g.graph.gains(), m.p_max, sigma2, m.iterations);
            } else if constexpr (std::is_same_v<T, MaxPowerPolicy>) {
                return d2d::max_power(g.graph.num_nodes(), m.p_max);
            } else {
                return m.predict(g.features, sample_seed);
            }
        },
        p);
}

/// `meta` is stored verbatim under "meta" (e.g. the training scenario).
inline void save_checkpoint(const Policy &p, const std::filesystem::path &manifest, const io::json &meta = {}) {
    io::json j = {{"format", kCheckpointFormat}, {"kind", policy_kind(p)}};
    if (!meta.is_null()) {
        j["meta"] = meta;
    }
    std::vector<double> flat;
    std::visit(
        [&](const auto &m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, WmmseOracle>) {
                j["config"] = {{"iterations", m.iterations}, {"p_max", m.p_max}};
            } else if constexpr (std::is_same_v<T, MaxPowerPolicy>) {
                j["config"] = {{"p_max", m.p_max}};
            } else {
                j["config"] = to_json(m.config());
                j["norm"] = to_json(m.norm());
                j["param_count"] = m.num_params();
                j["quantum_params"] = m.num_quantum_params();
                j["classical_params"] = m.num_classical_params();
                flat = m.params();
            }
        },
        p);
    if (!flat.empty()) {
        const auto blob = io::blob_path_for(manifest);
        io::write_f64_blob(blob, flat);
        j["blob"] = blob.filename().string();
    }
    io::write_json(manifest, j);
}

inline Policy load_checkpoint(const std::filesystem::path &manifest) {
    const auto j = io::read_json(manifest);
    const std::string where = manifest.string();
    try {
        if (j.at("format").get<std::string>() != kCheckpointFormat) {
            throw DataError(where + ": unsupported checkpoint format");
        }
        const auto kind = j.at("kind").get<std::string>();
        const auto &cfg = j.at("config");
        if (kind == "wmmse") {
            return WmmseOracle{cfg.value("iterations", d2d::kWmmseIterations), cfg.value("p_max", 1.0)};
        }
        if (kind == "max_power") {
            return MaxPowerPolicy{cfg.value("p_max", 1.0)};
        }
        auto load_params = [&](auto &model) {
            const auto flat = io::read_f64_blob(manifest.parent_path() / j.at("blob").get<std::string>());
            if (flat.size() != model.num_params() || j.at("param_count").get<std::size_t>() != flat.size()) {
                throw DataError(where + ": parameter blob holds " + std::to_string(flat.size()) +
                                " values, model expects " + std::to_string(model.num_params()));
            }
            model.set_params(flat);
            model.set_norm(norm_from_json(j.at("norm")));
        };
        if (kind == "sqm") {
            SqmGnnModel m(sqm_config_from_json(cfg));
            load_params(m);
            return m;
        }
        if (kind == "gnn") {
            ClassicalGnnModel m(gnn_config_from_json(cfg));
            load_params(m);
            return m;
        }
        throw DataError(where + ": unknown checkpoint kind '" + kind + "'");
    } catch (const io::json::exception &e) {
        throw DataError(where + ": " + e.what());
    } catch (const ContractError &e) {
        throw DataError(where + ": " + e.what());
    }
}

} // namespace sqm::models
