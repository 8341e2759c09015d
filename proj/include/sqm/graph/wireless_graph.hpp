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
 * @file wireless_graph.hpp
 * D2D interference graph, gain normalisation, and k-slot star subgraphs.
 *
 * Node k is one transmitter/receiver pair. The graph is complete: every
 * ordered pair (j, k), j != k, carries the interference gain from
 * transmitter j into receiver k.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sqm/errors.hpp"

namespace sqm::graph {

class WirelessGraph {
  public:
    WirelessGraph() = default;

    /// `gains` is row-major K x K: gains[j*K + k] is the gain from
    /// transmitter j to receiver k.
    WirelessGraph(std::size_t K, std::vector<double> gains) : K_{K}, gains_{std::move(gains)} {
        if (K == 0) {
            throw DataError("graph needs at least one node");
        }
        if (gains_.size() != K * K) {
            throw DataError("gain matrix must be K x K");
        }
        for (std::size_t i = 0; i < gains_.size(); ++i) {
            if (!(gains_[i] > 0.0) || !std::isfinite(gains_[i])) {
                throw DataError("non-positive or non-finite gain at (" + std::to_string(i / K) +
                                "," + std::to_string(i % K) + ")");
            }
        }
    }

    [[nodiscard]] std::size_t num_nodes() const noexcept { return K_; }
    [[nodiscard]] std::size_t num_edges() const noexcept { return K_ * (K_ - 1); }
    [[nodiscard]] double node_gain(std::size_t k) const { return gains_.at(k * K_ + k); }
    [[nodiscard]] double edge_gain(std::size_t j, std::size_t k) const {
        if (j == k) {
            throw ContractError("edge_gain requires j != k");
        }
        return gains_.at(j * K_ + k);
    }
    [[nodiscard]] double gain(std::size_t j, std::size_t k) const { return gains_.at(j * K_ + k); }
    [[nodiscard]] std::span<const double> gains() const noexcept { return gains_; }
    [[nodiscard]] std::size_t degree(std::size_t) const noexcept { return K_ - 1; }

    /// Relabel nodes: node i of the result is node perm[i] of this graph.
    [[nodiscard]] WirelessGraph permuted(std::span<const std::size_t> perm) const {
        if (perm.size() != K_) {
            throw ContractError("permutation length mismatch");
        }
        std::vector<double> g(K_ * K_);
        for (std::size_t a = 0; a < K_; ++a) {
            for (std::size_t b = 0; b < K_; ++b) {
                g[a * K_ + b] = gain(perm[a], perm[b]);
            }
        }
        return {K_, std::move(g)};
    }

  private:
    std::size_t K_{0};
    std::vector<double> gains_;
};

inline WirelessGraph build_graph(std::size_t K, std::vector<double> gains) {
    return {K, std::move(gains)};
}

/// Mean / standard deviation of log10 gains, node and edge gains separately.
struct NormStats {
    double node_mean{0.0};
    double node_std{1.0};
    double edge_mean{0.0};
    double edge_std{1.0};
};

/// Fit on the training split only; test data reuse the result unchanged.
inline NormStats fit_normalization(std::span<const WirelessGraph> graphs) {
    if (graphs.empty()) {
        throw ContractError("fit_normalization needs at least one graph");
    }
    double ns = 0, nss = 0, es = 0, ess = 0;
    std::size_t nn = 0, ne = 0;
    for (const auto &g : graphs) {
        const std::size_t K = g.num_nodes();
        for (std::size_t j = 0; j < K; ++j) {
            for (std::size_t k = 0; k < K; ++k) {
                const double v = std::log10(g.gain(j, k));
                if (j == k) {
                    ns += v;
                    nss += v * v;
                    ++nn;
                } else {
                    es += v;
                    ess += v * v;
                    ++ne;
                }
            }
        }
    }
    auto finish = [](double s, double ss, std::size_t n, double &mean, double &sd) {
        if (n == 0) {
            mean = 0.0;
            sd = 1.0;
            return;
        }
        mean = s / static_cast<double>(n);
        const double var = std::max(0.0, ss / static_cast<double>(n) - mean * mean);
        sd = std::sqrt(var);
        if (sd < 1e-12 * std::max(1.0, std::abs(mean))) {
            sd = 1.0;
        }
    };
    NormStats st;
    finish(ns, nss, nn, st.node_mean, st.node_std);
    finish(es, ess, ne, st.edge_mean, st.edge_std);
    return st;
}

inline double standardize(double gain, double mean, double sd) {
    if (!(gain > 0.0)) {
        throw DataError("gain must be positive, got " + std::to_string(gain));
    }
    return (std::log10(gain) - mean) / sd;
}

/// pi * logistic(z) with z the standardised log10 gain. Maps (0, inf) onto
/// (0, pi) monotonically.
inline double angle_from_z(double z) {
    return std::numbers::pi / (1.0 + std::exp(-z));
}

inline double gain_to_angle(double gain, double mean, double sd) {
    return angle_from_z(standardize(gain, mean, sd));
}

inline double node_gain_to_angle(double gain, const NormStats &st) {
    return gain_to_angle(gain, st.node_mean, st.node_std);
}

inline double edge_gain_to_angle(double gain, const NormStats &st) {
    return gain_to_angle(gain, st.edge_mean, st.edge_std);
}

/// Per-graph encoded inputs shared by both models.
struct GraphFeatures {
    std::size_t K{0};
    std::vector<double> node_z;     // standardised log10 h_kk
    std::vector<double> edge_z;     // K x K, [j*K+k] for j != k, diagonal unused
    std::vector<double> node_angle; // rotation angles for the quantum encoder
    std::vector<double> edge_angle; // K x K

    [[nodiscard]] double edge_angle_into(std::size_t from, std::size_t center) const {
        return edge_angle[from * K + center];
    }
};

inline GraphFeatures encode(const WirelessGraph &g, const NormStats &st) {
    GraphFeatures f;
    f.K = g.num_nodes();
    f.node_z.resize(f.K);
    f.node_angle.resize(f.K);
    f.edge_z.assign(f.K * f.K, 0.0);
    f.edge_angle.assign(f.K * f.K, 0.0);
    for (std::size_t j = 0; j < f.K; ++j) {
        for (std::size_t k = 0; k < f.K; ++k) {
            if (j == k) {
                f.node_z[k] = standardize(g.gain(k, k), st.node_mean, st.node_std);
                f.node_angle[k] = angle_from_z(f.node_z[k]);
            } else {
                const double z = standardize(g.gain(j, k), st.edge_mean, st.edge_std);
                f.edge_z[j * f.K + k] = z;
                f.edge_angle[j * f.K + k] = angle_from_z(z);
            }
        }
    }
    return f;
}

/// One of the k register slots of a star subgraph. Padding slots have no
/// neighbour and carry zero angles.
struct StarSlot {
    std::optional<std::size_t> neighbor{};
    double node_angle{0.0};
    double edge_angle{0.0};

    [[nodiscard]] bool is_padding() const noexcept { return !neighbor.has_value(); }
};

struct StarSubgraph {
    std::size_t center{0};
    double center_angle{0.0};
    std::vector<StarSlot> slots;
    std::size_t layer_index{0};

    [[nodiscard]] std::size_t k() const noexcept { return slots.size(); }
    [[nodiscard]] std::size_t num_real() const noexcept {
        return static_cast<std::size_t>(
            std::count_if(slots.begin(), slots.end(), [](const StarSlot &s) { return !s.is_padding(); }));
    }
};

enum class SamplingMode {
    random,       // uniform without replacement, randomised slot order
    deterministic // all neighbours in ascending id order; requires degree <= k
};

/**
 * Draw the k-slot star around `center`. With degree >= k, k distinct
 * neighbours are sampled uniformly without replacement; otherwise every
 * neighbour is used and the remaining slots are zero-angle padding. The
 * edge angle of a slot encodes the interference gain from that neighbour
 * into the center's receiver. Node angles come from `node_angles`.
 */
template <class Rng>
StarSubgraph sample_star(const GraphFeatures &f, std::span<const double> node_angles,
                         std::size_t center, std::size_t k, Rng &rng,
                         SamplingMode mode = SamplingMode::random, std::size_t layer_index = 0) {
    if (center >= f.K) {
        throw ContractError("center " + std::to_string(center) + " out of range");
    }
    if (k == 0) {
        throw ContractError("star subgraphs need k >= 1");
    }
    if (node_angles.size() != f.K) {
        throw ContractError("one node angle per node required");
    }
    std::vector<std::size_t> nbrs;
    nbrs.reserve(f.K - 1);
    for (std::size_t j = 0; j < f.K; ++j) {
        if (j != center) {
            nbrs.push_back(j);
        }
    }
    const std::size_t d = nbrs.size();
    std::size_t take = std::min(d, k);
    if (mode == SamplingMode::deterministic) {
        if (d > k) {
            throw ContractError("deterministic sampling requires degree <= k");
        }
    } else {
        // Partial Fisher-Yates: the first `take` entries become a uniformly
        // random ordered subset.
        const std::size_t stop = (take == d) ? (d == 0 ? 0 : d - 1) : take;
        for (std::size_t i = 0; i < stop; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, d - 1);
            std::swap(nbrs[i], nbrs[pick(rng)]);
        }
    }
    StarSubgraph sub;
    sub.center = center;
    sub.center_angle = node_angles[center];
    sub.layer_index = layer_index;
    sub.slots.resize(k);
    for (std::size_t s = 0; s < take; ++s) {
        const std::size_t j = nbrs[s];
        sub.slots[s] = StarSlot{j, node_angles[j], f.edge_angle_into(j, center)};
    }
    return sub;
}

template <class Rng>
StarSubgraph sample_star(const GraphFeatures &f, std::size_t center, std::size_t k, Rng &rng,
                         SamplingMode mode = SamplingMode::random) {
    return sample_star(f, f.node_angle, center, k, rng, mode, 0);
}

} // namespace sqm::graph
