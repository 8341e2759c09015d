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
 * @file run_config.hpp
 * Resolved experiment configuration: scenario, training, both model
 * families, dataset sizes, sweep grid and qubit-budget settings.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "sqm/d2d/scenario.hpp"
#include "sqm/errors.hpp"
#include "sqm/io.hpp"
#include "sqm/models/classical_gnn.hpp"
#include "sqm/models/sqm_gnn.hpp"
#include "sqm/train/config.hpp"

namespace sqm::xp {

inline constexpr const char *kConfigFormat = "sqmgnn.config.v1";

struct DataConfig {
    std::size_t train_count{10000};
    std::size_t test_count{10000};
};

struct SweepConfig {
    std::vector<std::size_t> K{10, 20, 40, 80};
    std::vector<double> p_max{1.0, 2.0};
    std::size_t count{1000};
    std::uint64_t seed{2024};
};

struct BudgetConfig {
    std::vector<std::size_t> K{4, 8, 10, 20};
    std::size_t k{6};
    std::size_t budget{70};
    // share of the device left for the register itself; the rest goes to
    // routing and ancillas
    double usable_fraction{0.75};

    std::size_t usable() const { return static_cast<std::size_t>(static_cast<double>(budget) * usable_fraction); }
};

struct RunConfig {
    d2d::ScenarioConfig scenario{};
    DataConfig data{};
    std::string model{"sqm"};
    models::SqmConfig sqm{};
    models::GnnConfig gnn{};
    train::TrainConfig train{};
    SweepConfig sweep{};
    BudgetConfig qubit_budget{};

    void validate() const {
        scenario.validate();
        sqm.validate();
        gnn.validate();
        train.validate();
        if (model != "sqm" && model != "gnn") {
            throw ContractError("model must be 'sqm' or 'gnn', got '" + model + "'");
        }
        if (data.train_count == 0 || data.test_count == 0) {
            throw ContractError("dataset counts must be >= 1");
        }
    }
};

inline io::json to_json(const RunConfig &c) {
    return {{"format", kConfigFormat},
            {"scenario", d2d::to_json(c.scenario)},
            {"data", {{"train_count", c.data.train_count}, {"test_count", c.data.test_count}}},
            {"model", c.model},
            {"sqm", models::to_json(c.sqm)},
            {"gnn", models::to_json(c.gnn)},
            {"train", train::to_json(c.train)},
            {"sweep", {{"K", c.sweep.K}, {"p_max", c.sweep.p_max}, {"count", c.sweep.count}, {"seed", c.sweep.seed}}},
            {"qubit_budget", {{"K", c.qubit_budget.K}, {"k", c.qubit_budget.k}, {"budget", c.qubit_budget.budget},
                              {"usable_fraction", c.qubit_budget.usable_fraction}}}};
}

/// Missing keys keep their defaults; unknown top-level keys are rejected.
inline RunConfig run_config_from_json(const io::json &j) {
    RunConfig c;
    if (!j.is_object()) {
        throw DataError("config must be a JSON object");
    }
    static const char *known[] = {"format", "scenario", "data", "model", "sqm", "gnn", "train", "sweep", "qubit_budget"};
    for (const auto &item : j.items()) {
        if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known)) {
            throw DataError("unknown config key '" + item.key() + "'");
        }
    }
    try {
        if (j.contains("scenario")) {
            c.scenario = d2d::scenario_from_json(j.at("scenario"), c.scenario);
        }
        if (j.contains("data")) {
            c.data.train_count = j.at("data").value("train_count", c.data.train_count);
            c.data.test_count = j.at("data").value("test_count", c.data.test_count);
        }
        c.model = j.value("model", c.model);
        if (j.contains("sqm")) {
            c.sqm = models::sqm_config_from_json(j.at("sqm"), c.sqm);
        }
        if (j.contains("gnn")) {
            c.gnn = models::gnn_config_from_json(j.at("gnn"), c.gnn);
        }
        if (j.contains("train")) {
            c.train = train::train_config_from_json(j.at("train"), c.train);
        }
        if (j.contains("sweep")) {
            const auto &s = j.at("sweep");
            c.sweep.K = s.value("K", c.sweep.K);
            c.sweep.p_max = s.value("p_max", c.sweep.p_max);
            c.sweep.count = s.value("count", c.sweep.count);
            c.sweep.seed = s.value("seed", c.sweep.seed);
        }
        if (j.contains("qubit_budget")) {
            const auto &q = j.at("qubit_budget");
            c.qubit_budget.K = q.value("K", c.qubit_budget.K);
            c.qubit_budget.k = q.value("k", c.qubit_budget.k);
            c.qubit_budget.budget = q.value("budget", c.qubit_budget.budget);
            c.qubit_budget.usable_fraction = q.value("usable_fraction", c.qubit_budget.usable_fraction);
        }
    } catch (const io::json::exception &e) {
        throw DataError(std::string("malformed config: ") + e.what());
    }
    return c;
}

} // namespace sqm::xp
