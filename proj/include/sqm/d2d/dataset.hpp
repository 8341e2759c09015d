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
 * @file dataset.hpp
 * Collections of channel realizations and their on-disk form.
 *
 * A dataset is a JSON manifest plus a sibling .bin file holding
 * little-endian float64 gains, row-major K x K per realization, in order.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sqm/d2d/scenario.hpp"
#include "sqm/errors.hpp"
#include "sqm/io.hpp"
#include "sqm/seeding.hpp"

namespace sqm::d2d {

inline constexpr const char *kDatasetFormat = "sqmgnn.dataset.v1";

struct Dataset {
    ScenarioConfig config;
    std::string split{"train"};
    std::uint64_t seed{0};
    std::vector<ChannelRealization> realizations;

    [[nodiscard]] std::size_t size() const { return realizations.size(); }
    [[nodiscard]] bool empty() const { return realizations.empty(); }
};

/// Realization i is drawn from its own stream seeded by (seed, i).
inline Dataset generate_dataset(const ScenarioConfig &cfg, std::size_t count, const std::string &split,
                                std::uint64_t seed) {
    cfg.validate();
    Dataset ds;
    ds.config = cfg;
    ds.split = split;
    ds.seed = seed;
    ds.realizations.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::mt19937_64 rng(derive_seed({seed, i}));
        ds.realizations.push_back(generate_realization(cfg, rng));
    }
    return ds;
}

inline void validate(const Dataset &ds) {
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto &r = ds.realizations[i];
        if (r.K != ds.config.K || r.H.size() != r.K * r.K) {
            throw ContractError("realization " + std::to_string(i) + " does not match dataset K = " +
                                std::to_string(ds.config.K));
        }
    }
}

/// Writes `<path>` (manifest, should end in .json) and the paired .bin.
inline void save_dataset(const Dataset &ds, const std::filesystem::path &path) {
    validate(ds);
    const std::size_t K = ds.config.K;
    std::vector<double> flat;
    flat.reserve(ds.size() * K * K);
    for (const auto &r : ds.realizations) {
        flat.insert(flat.end(), r.H.begin(), r.H.end());
    }
    const auto blob = io::blob_path_for(path);
    io::write_f64_blob(blob, flat);
    io::json meta = {{"format", kDatasetFormat},
                     {"split", ds.split},
                     {"seed", ds.seed},
                     {"count", ds.size()},
                     {"K", K},
                     {"config", to_json(ds.config)},
                     {"blob", blob.filename().string()},
                     {"layout", "float64 little-endian, row-major KxK per realization, H[j][k] = gain tx j -> rx k"},
                     {"units", {{"gain", "linear"}, {"power", "W"}, {"noise", "W"}}},
                     {"noise_w", noise_power(ds.config.noise_dbm)}};
    io::write_json(path, meta);
}

inline Dataset load_dataset(const std::filesystem::path &path) {
    const auto meta = io::read_json(path);
    const std::string where = path.string();
    Dataset ds;
    std::size_t count = 0;
    std::size_t K = 0;
    std::string blob_name;
    try {
        if (meta.at("format").get<std::string>() != kDatasetFormat) {
            throw DataError(where + ": unsupported format '" + meta.at("format").get<std::string>() + "'");
        }
        ds.split = meta.at("split").get<std::string>();
        ds.seed = meta.at("seed").get<std::uint64_t>();
        count = meta.at("count").get<std::size_t>();
        K = meta.at("K").get<std::size_t>();
        ds.config = scenario_from_json(meta.at("config"));
        blob_name = meta.at("blob").get<std::string>();
    } catch (const nlohmann::json::exception &e) {
        throw DataError(where + ": " + e.what());
    }
    if (ds.config.K != K) {
        throw DataError(where + ": header K = " + std::to_string(K) + " but config K = " +
                        std::to_string(ds.config.K));
    }
    if (K == 0) {
        throw DataError(where + ": K must be positive");
    }
    const auto blob = path.parent_path() / blob_name;
    const auto flat = io::read_f64_blob(blob);
    if (flat.size() != count * K * K) {
        throw DataError(blob.string() + ": holds " + std::to_string(flat.size()) + " values, expected " +
                        std::to_string(count) + " x " + std::to_string(K) + " x " + std::to_string(K));
    }
    ds.realizations.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto &r = ds.realizations[i];
        r.K = K;
        r.H.assign(flat.begin() + static_cast<std::ptrdiff_t>(i * K * K),
                   flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * K * K));
        for (std::size_t e = 0; e < K * K; ++e) {
            if (!(r.H[e] > 0.0) || !std::isfinite(r.H[e])) {
                throw DataError(blob.string() + ": realization " + std::to_string(i) + " entry (" +
                                std::to_string(e / K) + "," + std::to_string(e % K) +
                                ") is not a positive finite gain");
            }
        }
    }
    return ds;
}

/// One row per gain: realization,tx,rx,gain.
inline std::string to_csv(const Dataset &ds) {
    std::ostringstream os;
    os.precision(17);
    os << "realization,tx,rx,gain\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto &r = ds.realizations[i];
        for (std::size_t j = 0; j < r.K; ++j) {
            for (std::size_t k = 0; k < r.K; ++k) {
                os << i << ',' << j << ',' << k << ',' << r.gain(j, k) << '\n';
            }
        }
    }
    return os.str();
}

} // namespace sqm::d2d
