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
 * @file sqm_gnn.hpp
 * Stacked quantum graph-convolution layers followed by a classical readout
 * that maps each node's final Bloch vector to a transmit power.
 *
 * Layer 1 encodes node gains; every later layer re-encodes the previous
 * layer's <Z> through arccos. The last layer exposes the full Bloch triple.
 */
#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sqm/cfe.hpp"
#include "sqm/errors.hpp"
#include "sqm/graph/wireless_graph.hpp"
#include "sqm/io.hpp"
#include "sqm/models/common.hpp"
#include "sqm/nn/dense.hpp"
#include "sqm/qgcl/qgcl.hpp"
#include "sqm/seeding.hpp"

namespace sqm::models {

struct SqmConfig {
    std::size_t layers{2};
    std::size_t k{6};
    std::size_t depth{2}; // message blocks per neighbor-edge pair
    std::vector<std::size_t> readout_hidden{64, 32};
    qgcl::Backend backend{qgcl::Backend::factorized};
    qgcl::GradEngine engine{qgcl::GradEngine::adjoint};
    graph::SamplingMode sampling{graph::SamplingMode::random};
    double quantum_init_scale{std::numbers::pi}; // quantum params ~ U(-s, s)
    double p_max{1.0};

    void validate() const {
        if (layers == 0 || k == 0 || depth == 0) {
            throw ContractError("SQM layers, k and depth must be >= 1");
        }
        if (!(p_max > 0.0)) {
            throw ContractError("p_max must be positive");
        }
    }

    [[nodiscard]] std::vector<std::size_t> readout_dims() const {
        std::vector<std::size_t> d{3};
        d.insert(d.end(), readout_hidden.begin(), readout_hidden.end());
        d.push_back(1);
        return d;
    }

    [[nodiscard]] std::vector<nn::Activation> readout_acts() const {
        std::vector<nn::Activation> a(readout_hidden.size(), nn::Activation::relu);
        a.push_back(nn::Activation::sigmoid);
        return a;
    }
};

inline std::string backend_name(qgcl::Backend b) {
    return b == qgcl::Backend::statevector ? "statevector" : "factorized";
}
inline std::string engine_name(qgcl::GradEngine e) {
    return e == qgcl::GradEngine::adjoint ? "adjoint" : "parameter_shift";
}
inline std::string sampling_name(graph::SamplingMode m) {
    return m == graph::SamplingMode::random ? "random" : "deterministic";
}
inline qgcl::Backend parse_backend(const std::string &s) {
    if (s == "statevector") {
        return qgcl::Backend::statevector;
    }
    if (s == "factorized") {
        return qgcl::Backend::factorized;
    }
    throw DataError("unknown backend '" + s + "'");
}
inline qgcl::GradEngine parse_engine(const std::string &s) {
    if (s == "adjoint") {
        return qgcl::GradEngine::adjoint;
    }
    if (s == "parameter_shift" || s == "shift") {
        return qgcl::GradEngine::parameter_shift;
    }
    throw DataError("unknown gradient engine '" + s + "'");
}
inline graph::SamplingMode parse_sampling(const std::string &s) {
    if (s == "random") {
        return graph::SamplingMode::random;
    }
    if (s == "deterministic") {
        return graph::SamplingMode::deterministic;
    }
    throw DataError("unknown sampling mode '" + s + "'");
}

inline io::json to_json(const SqmConfig &c) {
    return {{"layers", c.layers},
            {"k", c.k},
            {"depth", c.depth},
            {"readout_hidden", c.readout_hidden},
            {"backend", backend_name(c.backend)},
            {"engine", engine_name(c.engine)},
            {"sampling", sampling_name(c.sampling)},
            {"quantum_init_scale", c.quantum_init_scale},
            {"p_max", c.p_max}};
}

inline SqmConfig sqm_config_from_json(const io::json &j, SqmConfig c = {}) {
    try {
        c.layers = j.value("layers", c.layers);
        c.k = j.value("k", c.k);
        c.depth = j.value("depth", c.depth);
        c.readout_hidden = j.value("readout_hidden", c.readout_hidden);
        c.backend = parse_backend(j.value("backend", backend_name(c.backend)));
        c.engine = parse_engine(j.value("engine", engine_name(c.engine)));
        c.sampling = parse_sampling(j.value("sampling", sampling_name(c.sampling)));
        c.quantum_init_scale = j.value("quantum_init_scale", c.quantum_init_scale);
        c.p_max = j.value("p_max", c.p_max);
    } catch (const io::json::exception &e) {
        throw DataError(std::string("malformed SQM config: ") + e.what());
    }
    return c;
}

/// Forward context kept for the backward pass.
struct SqmTape {
    std::uint64_t stamp{0};
    std::vector<std::vector<double>> layer_inputs; // per layer, per node angle
    std::vector<qgcl::LayerResult> layers;
    nn::DenseTape readout;
    std::vector<double> powers;
};

class SqmGnnModel {
  public:
    explicit SqmGnnModel(SqmConfig cfg = {})
        : cfg_(std::move(cfg)), eval_((cfg_.validate(), cfg_.k), cfg_.depth, cfg_.backend, cfg_.engine),
          quantum_(cfg_.layers * qgcl::QgclParams::count(cfg_.depth), 0.0),
          readout_(cfg_.readout_dims(), cfg_.readout_acts()), stamp_(detail::next_stamp()) {}

    template <class Rng> void init(Rng &rng) {
        std::uniform_real_distribution<double> u(-cfg_.quantum_init_scale, cfg_.quantum_init_scale);
        for (auto &x : quantum_) {
            x = u(rng);
        }
        readout_.init_glorot(rng);
        stamp_ = detail::next_stamp();
    }

    [[nodiscard]] const SqmConfig &config() const noexcept { return cfg_; }
    [[nodiscard]] std::size_t per_layer_params() const { return qgcl::QgclParams::count(cfg_.depth); }
    [[nodiscard]] std::size_t num_quantum_params() const noexcept { return quantum_.size(); }
    [[nodiscard]] std::size_t num_classical_params() const noexcept { return readout_.num_params(); }
    [[nodiscard]] std::size_t num_params() const noexcept { return quantum_.size() + readout_.num_params(); }
    [[nodiscard]] std::size_t qubits() const { return 2 * cfg_.k + 1; }
    [[nodiscard]] const nn::DenseNet &readout() const noexcept { return readout_; }
    [[nodiscard]] const qgcl::QgclEvaluator &evaluator() const noexcept { return eval_; }

    [[nodiscard]] const graph::NormStats &norm() const noexcept { return norm_; }
    void set_norm(const graph::NormStats &n) { norm_ = n; }
    [[nodiscard]] double p_max() const noexcept { return cfg_.p_max; }
    void set_p_max(double p) {
        if (!(p > 0.0)) {
            throw ContractError("p_max must be positive");
        }
        cfg_.p_max = p;
    }

    /// Flat layout: per-layer quantum params (layer 1 first), then readout.
    [[nodiscard]] std::vector<double> params() const {
        std::vector<double> p(quantum_);
        const auto r = readout_.params();
        p.insert(p.end(), r.begin(), r.end());
        return p;
    }

    void set_params(std::span<const double> p) {
        if (p.size() != num_params()) {
            throw ContractError("SQM parameter count mismatch: expected " + std::to_string(num_params()) +
                                ", got " + std::to_string(p.size()));
        }
        std::copy(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(quantum_.size()), quantum_.begin());
        readout_.set_params(p.subspan(quantum_.size()));
        stamp_ = detail::next_stamp();
    }

    [[nodiscard]] std::span<const double> layer_params(std::size_t l) const {
        return std::span<const double>(quantum_).subspan(l * per_layer_params(), per_layer_params());
    }

    /// Sampling streams for layer l of a sample are seeded from (sample_seed, l).
    SqmTape forward(const graph::GraphFeatures &f, std::uint64_t sample_seed,
                    CfeCounter *counter = nullptr) const {
        const std::size_t K = f.K;
        if (K == 0) {
            throw ContractError("empty graph");
        }
        SqmTape tape;
        tape.stamp = stamp_;
        tape.layer_inputs.reserve(cfg_.layers);
        tape.layers.reserve(cfg_.layers);
        std::vector<double> angles = f.node_angle;
        for (std::size_t l = 0; l < cfg_.layers; ++l) {
            tape.layer_inputs.push_back(angles);
            tape.layers.push_back(qgcl::qgcl_layer(f, angles, layer_params(l), eval_, cfg_.sampling,
                                                   derive_seed({sample_seed, l}), l, counter));
            for (std::size_t n = 0; n < K; ++n) {
                angles[n] = qgcl::reencode(tape.layers.back().outputs[n][2]);
            }
        }
        nn::Matrix X(3, static_cast<Eigen::Index>(K));
        const auto &final = tape.layers.back().outputs;
        for (std::size_t n = 0; n < K; ++n) {
            for (int a = 0; a < 3; ++a) {
                X(a, static_cast<Eigen::Index>(n)) = final[n][static_cast<std::size_t>(a)];
            }
        }
        const nn::Matrix y = readout_.forward(X, tape.readout);
        tape.powers.resize(K);
        for (std::size_t n = 0; n < K; ++n) {
            tape.powers[n] = cfg_.p_max * y(0, static_cast<Eigen::Index>(n));
        }
        return tape;
    }

    [[nodiscard]] std::vector<double> predict(const graph::GraphFeatures &f, std::uint64_t sample_seed) const {
        return forward(f, sample_seed).powers;
    }

    /**
     * Accumulates dL/dtheta into `grad` (flat layout) given dL/dp per node.
     * Gradient circuit evaluations are charged to `counter`.
     */
    void backward(const graph::GraphFeatures &f, const SqmTape &tape, std::span<const double> dl_dp,
                  std::span<double> grad, CfeCounter *counter = nullptr) const {
        const std::size_t K = f.K;
        if (tape.stamp != stamp_ || tape.layers.size() != cfg_.layers || tape.powers.size() != K) {
            throw ContractError("missing or stale SQM forward cache");
        }
        if (dl_dp.size() != K || grad.size() != num_params()) {
            throw ContractError("SQM backward buffer size mismatch");
        }
        nn::Matrix dy(1, static_cast<Eigen::Index>(K));
        for (std::size_t n = 0; n < K; ++n) {
            dy(0, static_cast<Eigen::Index>(n)) = dl_dp[n] * cfg_.p_max;
        }
        const nn::Matrix dx = readout_.backward(tape.readout, dy, grad.subspan(quantum_.size()));

        std::vector<qgcl::Bloch> upstream(K);
        for (std::size_t n = 0; n < K; ++n) {
            for (int a = 0; a < 3; ++a) {
                upstream[n][static_cast<std::size_t>(a)] = dx(a, static_cast<Eigen::Index>(n));
            }
        }
        const std::size_t P = per_layer_params();
        for (std::size_t l = cfg_.layers; l-- > 0;) {
            const auto mode = l == 0 ? qgcl::InputGrads::none : qgcl::InputGrads::nodes;
            const auto &layer = tape.layers[l];
            std::vector<double> d_angle(K, 0.0);
            for (std::size_t c = 0; c < K; ++c) {
                const auto g = eval_.backward(layer.subgraphs[c], layer_params(l), upstream[c], mode);
                if (counter != nullptr) {
                    counter->gradient += eval_.gradient_cfe(mode);
                }
                for (std::size_t i = 0; i < P; ++i) {
                    grad[l * P + i] += g.params[i];
                }
                if (mode == qgcl::InputGrads::none) {
                    continue;
                }
                d_angle[c] += g.inputs.center;
                const auto &slots = layer.subgraphs[c].slots;
                for (std::size_t s = 0; s < slots.size(); ++s) {
                    if (slots[s].neighbor) {
                        d_angle[*slots[s].neighbor] += g.inputs.node[s];
                    }
                }
            }
            if (l == 0) {
                break;
            }
            const auto &prev = tape.layers[l - 1].outputs;
            for (std::size_t n = 0; n < K; ++n) {
                upstream[n] = {0.0, 0.0, d_angle[n] * qgcl::reencode_derivative(prev[n][2])};
            }
        }
    }

  private:
    SqmConfig cfg_;
    qgcl::QgclEvaluator eval_;
    std::vector<double> quantum_;
    nn::DenseNet readout_;
    graph::NormStats norm_{};
    std::uint64_t stamp_{0};
};

} // namespace sqm::models
