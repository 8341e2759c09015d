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
 * @file sweep.hpp
 * Evaluation of fixed policies across (K, p_max) cells without retraining.
 * Each cell draws its own test set from a seed derived from (seed, K, p_max).
 */
#pragma once

#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "sqm/d2d/dataset.hpp"
#include "sqm/models/checkpoint.hpp"
#include "sqm/train/evaluate.hpp"
#include "sqm/train/report.hpp"

namespace sqm::train {

struct SweepCell {
    std::size_t K;
    double p_max;
};

struct SweepRow {
    std::string model;
    std::size_t K{0};
    double p_max{0.0};
    double sum_rate{0.0};
    double wmmse_sum_rate{0.0};
    double ratio{0.0};
};

inline std::uint64_t cell_seed(std::uint64_t seed, const SweepCell &c) {
    return derive_seed({seed, 0xCE11ULL, static_cast<std::uint64_t>(c.K), std::bit_cast<std::uint64_t>(c.p_max)});
}

inline d2d::Dataset cell_dataset(const d2d::ScenarioConfig &base, const SweepCell &c, std::size_t count,
                                 std::uint64_t seed) {
    d2d::ScenarioConfig cfg = base;
    cfg.K = c.K;
    cfg.p_max_w = c.p_max;
    return d2d::generate_dataset(cfg, count, "test", cell_seed(seed, c));
}

inline graph::NormStats policy_norm(const models::Policy &p) {
    if (const auto *s = std::get_if<models::SqmGnnModel>(&p)) {
        return s->norm();
    }
    if (const auto *g = std::get_if<models::ClassicalGnnModel>(&p)) {
        return g->norm();
    }
    return {};
}

/// Evaluates `policy` (with its stored normalization) on `ds` at the
/// dataset's power budget.
inline EvalResult evaluate_policy(models::Policy policy, const d2d::Dataset &ds, std::uint64_t eval_seed,
                                  std::span<const double> wmmse_reference = {}) {
    models::set_policy_p_max(policy, ds.config.p_max_w);
    const double sigma2 = d2d::noise_power(ds.config.noise_dbm);
    std::vector<graph::WirelessGraph> graphs;
    graphs.reserve(ds.size());
    for (const auto &r : ds.realizations) {
        graphs.push_back(r.to_graph());
    }
    const auto set = models::prepare(graphs, policy_norm(policy));
    return evaluate(
        [&](const models::PreparedGraph &g, std::size_t i) {
            return models::policy_powers(policy, g, sigma2, eval_sample_seed(eval_seed, i));
        },
        set, ds.config.p_max_w, sigma2, wmmse_reference);
}

/// One row per (policy, cell); cell datasets are shared by all policies.
inline std::vector<SweepRow> generalization_sweep(const std::vector<std::pair<std::string, models::Policy>> &policies,
                                                  const std::vector<SweepCell> &cells,
                                                  const d2d::ScenarioConfig &base, std::size_t count,
                                                  std::uint64_t seed, std::uint64_t eval_seed) {
    std::vector<SweepRow> rows;
    for (const auto &cell : cells) {
        const auto ds = cell_dataset(base, cell, count, seed);
        std::vector<graph::WirelessGraph> graphs;
        for (const auto &r : ds.realizations) {
            graphs.push_back(r.to_graph());
        }
        const auto ref = wmmse_rates(models::prepare(graphs, {}), cell.p_max, d2d::noise_power(base.noise_dbm));
        for (const auto &[name, policy] : policies) {
            const auto ev = evaluate_policy(policy, ds, eval_seed, ref);
            rows.push_back({name, cell.K, cell.p_max, ev.sum_rate, ev.wmmse_sum_rate, ev.ratio});
        }
    }
    return rows;
}

/// Columns: model, K, p_max, sum_rate, ratio (plus the WMMSE reference).
inline std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::ostringstream os;
    os << "model,K,p_max,sum_rate,ratio,wmmse_sum_rate\n";
    for (const auto &r : rows) {
        os << r.model << ',' << r.K << ',' << fmt(r.p_max) << ',' << fmt(r.sum_rate) << ',' << fmt(r.ratio) << ','
           << fmt(r.wmmse_sum_rate) << '\n';
    }
    return os.str();
}

} // namespace sqm::train
