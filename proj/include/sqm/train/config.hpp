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
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqm/errors.hpp"
#include "sqm/io.hpp"

namespace sqm::train {

struct TrainConfig {
    std::size_t epochs{100};
    std::size_t batch{64};
    double lr{1e-3};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::uint64_t n_shot{1}; // shots per circuit, CFE accounting only
    std::size_t eval_every{1};
    std::uint64_t eval_seed{7};
    std::size_t workers{1};
    bool forward_only{false}; // skip backward and optimizer (CFE audits)

    void validate() const {
        if (epochs == 0 || batch == 0) {
            throw ContractError("epochs and batch must be >= 1");
        }
        if (seeds.empty()) {
            throw ContractError("at least one seed required");
        }
        if (n_shot == 0 || eval_every == 0 || workers == 0) {
            throw ContractError("n_shot, eval_every and workers must be >= 1");
        }
        if (!(lr >= 0.0)) {
            throw ContractError("learning rate must be non-negative");
        }
    }
};

inline io::json to_json(const TrainConfig &c) {
    return {{"epochs", c.epochs},         {"batch", c.batch},         {"lr", c.lr},
            {"seeds", c.seeds},           {"n_shot", c.n_shot},       {"eval_every", c.eval_every},
            {"eval_seed", c.eval_seed},   {"workers", c.workers},     {"forward_only", c.forward_only}};
}

inline TrainConfig train_config_from_json(const io::json &j, TrainConfig c = {}) {
    try {
        c.epochs = j.value("epochs", c.epochs);
        c.batch = j.value("batch", c.batch);
        c.lr = j.value("lr", c.lr);
        c.seeds = j.value("seeds", c.seeds);
        c.n_shot = j.value("n_shot", c.n_shot);
        c.eval_every = j.value("eval_every", c.eval_every);
        c.eval_seed = j.value("eval_seed", c.eval_seed);
        c.workers = j.value("workers", c.workers);
        c.forward_only = j.value("forward_only", c.forward_only);
    } catch (const io::json::exception &e) {
        throw DataError(std::string("malformed train config: ") + e.what());
    }
    return c;
}

/// Closed-form training cost: T * B * N * N_shot.
inline std::uint64_t predicted_cfe(std::uint64_t T, std::uint64_t B, std::uint64_t N, std::uint64_t n_shot) {
    if (T == 0 || B == 0 || N == 0 || n_shot == 0) {
        throw ContractError("predicted_cfe needs positive inputs");
    }
    return T * B * N * n_shot;
}

inline std::uint64_t predicted_cfe(const TrainConfig &cfg, std::uint64_t N) {
    return predicted_cfe(cfg.epochs, cfg.batch, N, cfg.n_shot);
}

} // namespace sqm::train
