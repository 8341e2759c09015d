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
 * @file scenario.hpp
 * D2D channel generation: pairs dropped in a square area, log-distance path
 * loss with Rayleigh power fading.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqm/errors.hpp"
#include "sqm/graph/wireless_graph.hpp"

namespace sqm::d2d {

enum class Fading { rayleigh, none };

struct PathLoss {
    double intercept_db{148.1}; // loss at the reference distance
    double slope_db{37.6};      // per decade of distance
    double reference_m{1000.0};
    double min_distance_m{1.0};

    [[nodiscard]] double loss_db(double distance_m) const {
        const double d = std::max(distance_m, min_distance_m);
        return intercept_db + slope_db * std::log10(d / reference_m);
    }
};

struct ScenarioConfig {
    std::size_t K{20};
    double area_side_m{500.0};
    double p_max_w{1.0};
    double noise_dbm{-104.0};
    double pair_dist_min_m{2.0};
    double pair_dist_max_m{65.0};
    PathLoss pathloss{};
    Fading fading{Fading::rayleigh};
    std::uint64_t seed{1};

    void validate() const {
        if (K == 0) {
            throw ContractError("scenario K must be >= 1");
        }
        if (!(area_side_m > 0.0) || !(p_max_w > 0.0)) {
            throw ContractError("area side and p_max must be positive");
        }
        if (!(pair_dist_min_m >= 0.0 && pair_dist_min_m < pair_dist_max_m)) {
            throw ContractError("pair distance range must satisfy 0 <= min < max");
        }
    }
};

/// dBm -> watts.
inline double noise_power(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// H[j*K + k] = gain from transmitter j to receiver k (linear power ratio).
struct ChannelRealization {
    std::size_t K{0};
    std::vector<double> H;

    [[nodiscard]] double gain(std::size_t j, std::size_t k) const { return H[j * K + k]; }
    [[nodiscard]] graph::WirelessGraph to_graph() const { return graph::build_graph(K, H); }
};

struct Position {
    double x;
    double y;
};

struct Layout {
    std::vector<Position> tx;
    std::vector<Position> rx;
};

template <class Rng> Layout drop_pairs(const ScenarioConfig &cfg, Rng &rng) {
    std::uniform_real_distribution<double> pos(0.0, cfg.area_side_m);
    std::uniform_real_distribution<double> dir(0.0, 2.0 * std::numbers::pi);
    // Area-uniform radius on the annulus.
    const double r2min = cfg.pair_dist_min_m * cfg.pair_dist_min_m;
    const double r2max = cfg.pair_dist_max_m * cfg.pair_dist_max_m;
    std::uniform_real_distribution<double> r2(r2min, r2max);
    Layout l;
    l.tx.resize(cfg.K);
    l.rx.resize(cfg.K);
    for (std::size_t k = 0; k < cfg.K; ++k) {
        l.tx[k] = {pos(rng), pos(rng)};
        const double r = std::sqrt(r2(rng));
        Position rx{};
        bool inside = false;
        for (int attempt = 0; attempt < 64 && !inside; ++attempt) {
            const double phi = dir(rng);
            rx = {l.tx[k].x + r * std::cos(phi), l.tx[k].y + r * std::sin(phi)};
            inside = rx.x >= 0.0 && rx.x <= cfg.area_side_m && rx.y >= 0.0 && rx.y <= cfg.area_side_m;
        }
        rx.x = std::clamp(rx.x, 0.0, cfg.area_side_m);
        rx.y = std::clamp(rx.y, 0.0, cfg.area_side_m);
        l.rx[k] = rx;
    }
    return l;
}

inline double distance(const Position &a, const Position &b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline ChannelRealization channel_from_layout(const ScenarioConfig &cfg, const Layout &layout,
                                              const std::vector<double> &fading) {
    ChannelRealization ch;
    ch.K = cfg.K;
    ch.H.resize(cfg.K * cfg.K);
    for (std::size_t j = 0; j < cfg.K; ++j) {
        for (std::size_t k = 0; k < cfg.K; ++k) {
            const double pl = cfg.pathloss.loss_db(distance(layout.tx[j], layout.rx[k]));
            ch.H[j * cfg.K + k] = std::pow(10.0, -pl / 10.0) * fading[j * cfg.K + k];
        }
    }
    return ch;
}

/**
 * One channel draw. Transmitters are uniform in the square; each receiver is
 * area-uniform on the [min, max] annulus around its transmitter, redrawn in
 * direction until it lands inside the area (clamped after 64 misses).
 */
template <class Rng> ChannelRealization generate_realization(const ScenarioConfig &cfg, Rng &rng) {
    cfg.validate();
    const Layout layout = drop_pairs(cfg, rng);
    std::vector<double> fading(cfg.K * cfg.K, 1.0);
    if (cfg.fading == Fading::rayleigh) {
        std::exponential_distribution<double> expo(1.0);
        for (auto &s : fading) {
            do {
                s = expo(rng);
            } while (!(s > 0.0));
        }
    }
    return channel_from_layout(cfg, layout, fading);
}

inline nlohmann::json to_json(const ScenarioConfig &c) {
    return {{"K", c.K},
            {"area_side_m", c.area_side_m},
            {"p_max_w", c.p_max_w},
            {"noise_dbm", c.noise_dbm},
            {"pair_dist_m", {c.pair_dist_min_m, c.pair_dist_max_m}},
            {"pathloss",
             {{"model", "log-distance"},
              {"intercept_db", c.pathloss.intercept_db},
              {"slope_db", c.pathloss.slope_db},
              {"reference_m", c.pathloss.reference_m},
              {"min_distance_m", c.pathloss.min_distance_m}}},
            {"fading", c.fading == Fading::rayleigh ? "rayleigh" : "none"},
            {"seed", c.seed}};
}

/// Fields absent from `j` keep their value in `base`.
inline ScenarioConfig scenario_from_json(const nlohmann::json &j, ScenarioConfig base = {}) {
    try {
        base.K = j.value("K", base.K);
        base.area_side_m = j.value("area_side_m", base.area_side_m);
        base.p_max_w = j.value("p_max_w", base.p_max_w);
        base.noise_dbm = j.value("noise_dbm", base.noise_dbm);
        if (j.contains("pair_dist_m")) {
            const auto r = j.at("pair_dist_m").get<std::vector<double>>();
            if (r.size() != 2) {
                throw DataError("pair_dist_m must be [min, max]");
            }
            base.pair_dist_min_m = r[0];
            base.pair_dist_max_m = r[1];
        }
        if (j.contains("pathloss")) {
            const auto &pl = j.at("pathloss");
            if (pl.value("model", std::string("log-distance")) != "log-distance") {
                throw DataError("unsupported path-loss model");
            }
            base.pathloss.intercept_db = pl.value("intercept_db", base.pathloss.intercept_db);
            base.pathloss.slope_db = pl.value("slope_db", base.pathloss.slope_db);
            base.pathloss.reference_m = pl.value("reference_m", base.pathloss.reference_m);
            base.pathloss.min_distance_m = pl.value("min_distance_m", base.pathloss.min_distance_m);
        }
        if (j.contains("fading")) {
            const auto f = j.at("fading").get<std::string>();
            if (f == "rayleigh") {
                base.fading = Fading::rayleigh;
            } else if (f == "none") {
                base.fading = Fading::none;
            } else {
                throw DataError("unknown fading '" + f + "'");
            }
        }
        base.seed = j.value("seed", base.seed);
    } catch (const nlohmann::json::exception &e) {
        throw DataError(std::string("malformed scenario config: ") + e.what());
    }
    return base;
}

} // namespace sqm::d2d
