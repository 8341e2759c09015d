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
 * @file classical_gnn.hpp
 * Message-passing GNN baseline over the complete interference graph.
 *
 * Round t: m_jk = MSG_t([h_j; e_jk]) for every ordered pair j != k,
 * a_k = elementwise max_j m_jk, h_k <- UPD_t([h_k; a_k]). The readout maps
 * the final embedding to p_max * sigmoid(.). The initial embedding is the
 * standardized direct-link gain followed by zeros.
 */
#pragma once

#include <cstdint>
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

namespace sqm::models {

struct GnnConfig {
    std::size_t embed{32};
    std::size_t rounds{2};
    std::size_t message_hidden{128};
    std::size_t update_hidden{128};
    std::size_t readout_hidden{16};
    bool shared_rounds{false}; // one MSG/UPD pair reused by every round
    double p_max{1.0};

    void validate() const {
        if (embed == 0 || rounds == 0 || message_hidden == 0 || update_hidden == 0 || readout_hidden == 0) {
            throw ContractError("GNN dims and rounds must be >= 1");
        }
        if (!(p_max > 0.0)) {
            throw ContractError("p_max must be positive");
        }
    }
};

inline io::json to_json(const GnnConfig &c) {
    return {{"embed", c.embed},
            {"rounds", c.rounds},
            {"message_hidden", c.message_hidden},
            {"update_hidden", c.update_hidden},
            {"readout_hidden", c.readout_hidden},
            {"shared_rounds", c.shared_rounds},
            {"p_max", c.p_max}};
}

inline GnnConfig gnn_config_from_json(const io::json &j, GnnConfig c = {}) {
    try {
        c.embed = j.value("embed", c.embed);
        c.rounds = j.value("rounds", c.rounds);
        c.message_hidden = j.value("message_hidden", c.message_hidden);
        c.update_hidden = j.value("update_hidden", c.update_hidden);
        c.readout_hidden = j.value("readout_hidden", c.readout_hidden);
        c.shared_rounds = j.value("shared_rounds", c.shared_rounds);
        c.p_max = j.value("p_max", c.p_max);
    } catch (const io::json::exception &e) {
        throw DataError(std::string("malformed GNN config: ") + e.what());
    }
    return c;
}

struct GnnRoundTape {
    nn::DenseTape msg;
    nn::DenseTape upd;
    // argmax[k * E + e] = sender j that won feature e at receiver k.
    std::vector<std::size_t> argmax;
};

struct GnnTape {
    std::uint64_t stamp{0};
    std::vector<GnnRoundTape> rounds;
    nn::DenseTape readout;
    std::vector<double> powers;
};

class ClassicalGnnModel {
  public:
    explicit ClassicalGnnModel(GnnConfig cfg = {}) : cfg_(std::move(cfg)), stamp_(detail::next_stamp()) {
        cfg_.validate();
        const std::size_t E = cfg_.embed;
        const std::size_t nets = cfg_.shared_rounds ? 1 : cfg_.rounds;
        for (std::size_t t = 0; t < nets; ++t) {
            msg_.emplace_back(std::vector<std::size_t>{E + 1, cfg_.message_hidden, E},
                              std::vector<nn::Activation>{nn::Activation::relu, nn::Activation::relu});
            upd_.emplace_back(std::vector<std::size_t>{2 * E, cfg_.update_hidden, E},
                              std::vector<nn::Activation>{nn::Activation::relu, nn::Activation::relu});
        }
        readout_ = nn::DenseNet({E, cfg_.readout_hidden, 1}, {nn::Activation::relu, nn::Activation::sigmoid});
    }

    template <class Rng> void init(Rng &rng) {
        for (std::size_t t = 0; t < msg_.size(); ++t) {
            msg_[t].init_glorot(rng);
            upd_[t].init_glorot(rng);
        }
        readout_.init_glorot(rng);
        stamp_ = detail::next_stamp();
    }

    [[nodiscard]] const GnnConfig &config() const noexcept { return cfg_; }
    [[nodiscard]] std::size_t num_params() const {
        std::size_t n = readout_.num_params();
        for (std::size_t t = 0; t < msg_.size(); ++t) {
            n += msg_[t].num_params() + upd_[t].num_params();
        }
        return n;
    }
    [[nodiscard]] std::size_t num_quantum_params() const noexcept { return 0; }
    [[nodiscard]] std::size_t num_classical_params() const { return num_params(); }

    [[nodiscard]] const graph::NormStats &norm() const noexcept { return norm_; }
    void set_norm(const graph::NormStats &n) { norm_ = n; }
    [[nodiscard]] double p_max() const noexcept { return cfg_.p_max; }
    void set_p_max(double p) {
        if (!(p > 0.0)) {
            throw ContractError("p_max must be positive");
        }
        cfg_.p_max = p;
    }

    /// Flat layout: (MSG_t, UPD_t) per distinct round net, then readout.
    [[nodiscard]] std::vector<double> params() const {
        std::vector<double> p;
        p.reserve(num_params());
        for (std::size_t t = 0; t < msg_.size(); ++t) {
            p.insert(p.end(), msg_[t].params().begin(), msg_[t].params().end());
            p.insert(p.end(), upd_[t].params().begin(), upd_[t].params().end());
        }
        p.insert(p.end(), readout_.params().begin(), readout_.params().end());
        return p;
    }

    void set_params(std::span<const double> p) {
        if (p.size() != num_params()) {
            throw ContractError("GNN parameter count mismatch: expected " + std::to_string(num_params()) +
                                ", got " + std::to_string(p.size()));
        }
        std::size_t off = 0;
        auto take = [&](nn::DenseNet &net) {
            net.set_params(p.subspan(off, net.num_params()));
            off += net.num_params();
        };
        for (std::size_t t = 0; t < msg_.size(); ++t) {
            take(msg_[t]);
            take(upd_[t]);
        }
        take(readout_);
        stamp_ = detail::next_stamp();
    }

    /// Seed and counter are accepted for interface parity and ignored.
    GnnTape forward(const graph::GraphFeatures &f, std::uint64_t /*sample_seed*/ = 0,
                    CfeCounter * /*counter*/ = nullptr) const {
        const std::size_t K = f.K;
        const std::size_t E = cfg_.embed;
        if (K == 0) {
            throw ContractError("empty graph");
        }
        const auto Ki = static_cast<Eigen::Index>(K);
        const auto Ei = static_cast<Eigen::Index>(E);
        GnnTape tape;
        tape.stamp = stamp_;
        tape.rounds.resize(cfg_.rounds);
        nn::Matrix h = nn::Matrix::Zero(Ei, Ki);
        for (std::size_t k = 0; k < K; ++k) {
            h(0, static_cast<Eigen::Index>(k)) = f.node_z[k];
        }
        for (std::size_t t = 0; t < cfg_.rounds; ++t) {
            auto &rt = tape.rounds[t];
            nn::Matrix agg = nn::Matrix::Zero(Ei, Ki);
            rt.argmax.assign(K * E, 0);
            if (K > 1) {
                nn::Matrix in(Ei + 1, Ki * (Ki - 1));
                for (std::size_t k = 0; k < K; ++k) {
                    std::size_t col = k * (K - 1);
                    for (std::size_t j = 0; j < K; ++j) {
                        if (j == k) {
                            continue;
                        }
                        const auto c = static_cast<Eigen::Index>(col++);
                        in.col(c).head(Ei) = h.col(static_cast<Eigen::Index>(j));
                        in(Ei, c) = f.edge_z[j * K + k];
                    }
                }
                const nn::Matrix m = msg_net(t).forward(in, rt.msg);
                for (std::size_t k = 0; k < K; ++k) {
                    for (std::size_t e = 0; e < E; ++e) {
                        double best = 0.0;
                        std::size_t who = K;
                        std::size_t col = k * (K - 1);
                        for (std::size_t j = 0; j < K; ++j) {
                            if (j == k) {
                                continue;
                            }
                            const double v = m(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(col++));
                            if (who == K || v > best) {
                                best = v;
                                who = j;
                            }
                        }
                        agg(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(k)) = best;
                        rt.argmax[k * E + e] = who;
                    }
                }
            }
            nn::Matrix u(2 * Ei, Ki);
            u.topRows(Ei) = h;
            u.bottomRows(Ei) = agg;
            h = upd_net(t).forward(u, rt.upd);
        }
        const nn::Matrix y = readout_.forward(h, tape.readout);
        tape.powers.resize(K);
        for (std::size_t k = 0; k < K; ++k) {
            tape.powers[k] = cfg_.p_max * y(0, static_cast<Eigen::Index>(k));
        }
        return tape;
    }

    [[nodiscard]] std::vector<double> predict(const graph::GraphFeatures &f, std::uint64_t seed = 0) const {
        return forward(f, seed).powers;
    }

    /// Accumulates dL/dtheta into `grad`. The counter is unused (no circuits).
    void backward(const graph::GraphFeatures &f, const GnnTape &tape, std::span<const double> dl_dp,
                  std::span<double> grad, CfeCounter * /*counter*/ = nullptr) const {
        const std::size_t K = f.K;
        const std::size_t E = cfg_.embed;
        if (tape.stamp != stamp_ || tape.rounds.size() != cfg_.rounds || tape.powers.size() != K) {
            throw ContractError("missing or stale GNN forward cache");
        }
        if (dl_dp.size() != K || grad.size() != num_params()) {
            throw ContractError("GNN backward buffer size mismatch");
        }
        const auto Ki = static_cast<Eigen::Index>(K);
        const auto Ei = static_cast<Eigen::Index>(E);
        nn::Matrix dy(1, Ki);
        for (std::size_t k = 0; k < K; ++k) {
            dy(0, static_cast<Eigen::Index>(k)) = dl_dp[k] * cfg_.p_max;
        }
        nn::Matrix dh = readout_.backward(tape.readout, dy, grad.subspan(grad.size() - readout_.num_params()));
        for (std::size_t t = cfg_.rounds; t-- > 0;) {
            const auto &rt = tape.rounds[t];
            const std::size_t net = cfg_.shared_rounds ? 0 : t;
            const nn::Matrix du = upd_[net].backward(rt.upd, dh, upd_grad(grad, net));
            nn::Matrix dprev = du.topRows(Ei);
            if (K > 1) {
                nn::Matrix dm = nn::Matrix::Zero(Ei, Ki * (Ki - 1));
                for (std::size_t k = 0; k < K; ++k) {
                    for (std::size_t e = 0; e < E; ++e) {
                        const std::size_t j = rt.argmax[k * E + e];
                        const std::size_t col = k * (K - 1) + (j < k ? j : j - 1);
                        dm(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(col)) +=
                            du(Ei + static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(k));
                    }
                }
                const nn::Matrix din = msg_[net].backward(rt.msg, dm, msg_grad(grad, net));
                for (std::size_t k = 0; k < K; ++k) {
                    std::size_t col = k * (K - 1);
                    for (std::size_t j = 0; j < K; ++j) {
                        if (j == k) {
                            continue;
                        }
                        dprev.col(static_cast<Eigen::Index>(j)) +=
                            din.col(static_cast<Eigen::Index>(col++)).head(Ei);
                    }
                }
            }
            dh = std::move(dprev);
        }
    }

  private:
    [[nodiscard]] const nn::DenseNet &msg_net(std::size_t t) const { return msg_[cfg_.shared_rounds ? 0 : t]; }
    [[nodiscard]] const nn::DenseNet &upd_net(std::size_t t) const { return upd_[cfg_.shared_rounds ? 0 : t]; }

    [[nodiscard]] std::size_t net_offset(std::size_t net) const {
        return net * (msg_[0].num_params() + upd_[0].num_params());
    }
    std::span<double> msg_grad(std::span<double> grad, std::size_t net) const {
        return grad.subspan(net_offset(net), msg_[net].num_params());
    }
    std::span<double> upd_grad(std::span<double> grad, std::size_t net) const {
        return grad.subspan(net_offset(net) + msg_[net].num_params(), upd_[net].num_params());
    }

    GnnConfig cfg_;
    std::vector<nn::DenseNet> msg_;
    std::vector<nn::DenseNet> upd_;
    nn::DenseNet readout_;
    graph::NormStats norm_{};
    std::uint64_t stamp_{0};
};

} // namespace sqm::models
