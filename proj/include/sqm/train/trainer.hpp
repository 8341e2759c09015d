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
 * @file trainer.hpp
 * Mini-batch Adam training of a power-control model on the negative
 * sum-rate, with per-seed replication and CFE accounting.
 *
 * The batch loss is the mean of -sum_rate over the batch. Per-sample
 * gradients are reduced in sample order, so results do not depend on the
 * worker count.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <mutex>
#include <thread>
#include <vector>

#include "sqm/cfe.hpp"
#include "sqm/d2d/dataset.hpp"
#include "sqm/d2d/objective.hpp"
#include "sqm/errors.hpp"
#include "sqm/graph/wireless_graph.hpp"
#include "sqm/models/common.hpp"
#include "sqm/nn/adam.hpp"
#include "sqm/seeding.hpp"
#include "sqm/train/config.hpp"
#include "sqm/train/evaluate.hpp"

namespace sqm::train {

struct EpochRecord {
    std::size_t epoch{0};
    double train_sum_rate{0.0}; // mean over the epoch's training forwards
    double test_sum_rate{std::numeric_limits<double>::quiet_NaN()};
    double ratio{std::numeric_limits<double>::quiet_NaN()};
};

struct SeedResult {
    std::uint64_t seed{0};
    std::vector<EpochRecord> curve;
    EvalResult final_eval;
    CfeCounter cfe;              // training forwards and gradients
    std::uint64_t eval_forward{0}; // circuit executions spent on evaluation
};

struct TrainReport {
    std::string model;
    std::size_t param_count{0};
    std::size_t quantum_params{0};
    std::size_t classical_params{0};
    std::size_t K{0};
    std::size_t train_count{0};
    std::size_t test_count{0};
    double p_max{0.0};
    double wmmse_test_sum_rate{0.0};
    TrainConfig config;
    std::vector<SeedResult> seeds;
    std::uint64_t predicted_cfe{0};

    [[nodiscard]] std::vector<double> final_ratios() const {
        std::vector<double> r;
        for (const auto &s : seeds) {
            r.push_back(s.final_eval.ratio);
        }
        return r;
    }
    [[nodiscard]] std::vector<double> final_sum_rates() const {
        std::vector<double> r;
        for (const auto &s : seeds) {
            r.push_back(s.final_eval.sum_rate);
        }
        return r;
    }
    [[nodiscard]] CfeCounter total_cfe() const {
        CfeCounter c;
        for (const auto &s : seeds) {
            c += s.cfe;
        }
        return c;
    }
};

template <class Model> struct TrainResult {
    TrainReport report;
    std::vector<Model> models; // one per seed, final parameters
};

/// Seed of the sampling streams for training sample i in an epoch.
inline std::uint64_t train_sample_seed(std::uint64_t seed, std::size_t epoch, std::size_t i) {
    return derive_seed({seed, 0x7A1EULL, static_cast<std::uint64_t>(epoch), static_cast<std::uint64_t>(i)});
}

namespace detail {

inline void check_compatible(const d2d::Dataset &a, const d2d::Dataset &b) {
    if (d2d::to_json(a.config) != d2d::to_json(b.config)) {
        throw ContractError("train and test datasets were generated from different scenario configs");
    }
}

inline std::vector<graph::WirelessGraph> graphs_of(const d2d::Dataset &ds) {
    std::vector<graph::WirelessGraph> g;
    g.reserve(ds.size());
    for (const auto &r : ds.realizations) {
        g.push_back(r.to_graph());
    }
    return g;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <class Fn> void parallel_for(std::size_t n, std::size_t workers, Fn &&fn) {
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex m;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace detail

/**
 * Evaluate a trained model on a prepared set. Sample i uses the sampling
 * seed eval_sample_seed(eval_seed, i). Forward CFEs go to `counter`.
 */
template <class Model>
EvalResult evaluate_model(const Model &model, std::span<const models::PreparedGraph> set, double sigma2,
                          std::uint64_t eval_seed, std::span<const double> wmmse_reference = {},
                          CfeCounter *counter = nullptr) {
    return evaluate(
        [&](const models::PreparedGraph &g, std::size_t i) {
            return model.forward(g.features, eval_sample_seed(eval_seed, i), counter).powers;
        },
        set, model.p_max(), sigma2, wmmse_reference);
}

/**
 * Trains a fresh model from `make_model()` for every seed. Normalization is
 * fitted on the training split only.
 */
template <class Model>
TrainResult<Model> train(const std::function<Model()> &make_model, const std::string &name,
                         const d2d::Dataset &train_ds, const d2d::Dataset &test_ds, const TrainConfig &cfg,
                         const std::function<void(const std::string &)> &log = {}) {
    cfg.validate();
    detail::check_compatible(train_ds, test_ds);
    if (train_ds.empty() || test_ds.empty()) {
        throw ContractError("training and test datasets must be non-empty");
    }
    const double sigma2 = d2d::noise_power(train_ds.config.noise_dbm);
    const double p_max = train_ds.config.p_max_w;
    const auto train_graphs = detail::graphs_of(train_ds);
    const auto norm = graph::fit_normalization(train_graphs);
    const auto train_set = models::prepare(train_graphs, norm);
    const auto test_set = models::prepare(detail::graphs_of(test_ds), norm);
    const auto wmmse_ref = wmmse_rates(test_set, p_max, sigma2);

    TrainResult<Model> out;
    auto &rep = out.report;
    rep.model = name;
    rep.K = train_ds.config.K;
    rep.train_count = train_ds.size();
    rep.test_count = test_ds.size();
    rep.p_max = p_max;
    rep.wmmse_test_sum_rate = mean(wmmse_ref);
    rep.config = cfg;
    rep.predicted_cfe = predicted_cfe(cfg, train_ds.config.K);

    const std::size_t N = train_set.size();
    for (const std::uint64_t seed : cfg.seeds) {
        Model model = make_model();
        model.set_p_max(p_max);
        model.set_norm(norm);
        std::mt19937_64 init_rng(derive_seed({seed, 0x1417ULL}));
        model.init(init_rng);
        rep.param_count = model.num_params();
        rep.quantum_params = model.num_quantum_params();
        rep.classical_params = model.num_classical_params();

        nn::AdamState adam(model.num_params(), nn::AdamConfig{cfg.lr});
        SeedResult sr;
        sr.seed = seed;
        std::vector<std::size_t> order(N);
        std::iota(order.begin(), order.end(), 0);

        for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
            std::mt19937_64 shuffle_rng(derive_seed({seed, 0x5F0FULL, static_cast<std::uint64_t>(epoch)}));
            std::shuffle(order.begin(), order.end(), shuffle_rng);
            double rate_sum = 0.0;
            for (std::size_t start = 0; start < N; start += cfg.batch) {
                const std::size_t B = std::min(cfg.batch, N - start);
                std::vector<std::vector<double>> grads(cfg.forward_only ? 0 : B);
                std::vector<double> rates(B);
                std::vector<CfeCounter> counters(B);
                detail::parallel_for(B, cfg.workers, [&](std::size_t b) {
                    const std::size_t i = order[start + b];
                    const auto &g = train_set[i];
                    const auto tape = model.forward(g.features, train_sample_seed(seed, epoch, i), &counters[b]);
                    rates[b] = d2d::sum_rate(tape.powers, g.graph.gains(), sigma2);
                    if (cfg.forward_only) {
                        return;
                    }
                    auto dl = d2d::loss_gradient(tape.powers, g.graph.gains(), sigma2);
                    for (auto &x : dl) {
                        x /= static_cast<double>(B);
                    }
                    grads[b].assign(model.num_params(), 0.0);
                    model.backward(g.features, tape, dl, grads[b], &counters[b]);
                });
                for (std::size_t b = 0; b < B; ++b) {
                    rate_sum += rates[b];
                    sr.cfe += counters[b];
                }
                if (cfg.forward_only) {
                    continue;
                }
                std::vector<double> total(model.num_params(), 0.0);
                for (const auto &g : grads) {
                    for (std::size_t p = 0; p < total.size(); ++p) {
                        total[p] += g[p];
                    }
                }
                auto params = model.params();
                adam.step(params, total);
                model.set_params(params);
            }
            EpochRecord rec;
            rec.epoch = epoch + 1;
            rec.train_sum_rate = rate_sum / static_cast<double>(N);
            if ((epoch + 1) % cfg.eval_every == 0 || epoch + 1 == cfg.epochs) {
                CfeCounter ec;
                const auto ev = evaluate_model(model, test_set, sigma2, cfg.eval_seed, wmmse_ref, &ec);
                sr.eval_forward += ec.forward;
                rec.test_sum_rate = ev.sum_rate;
                rec.ratio = ev.ratio;
                if (epoch + 1 == cfg.epochs) {
                    sr.final_eval = ev;
                }
            }
            if (log) {
                log(name + " seed " + std::to_string(seed) + " epoch " + std::to_string(rec.epoch) +
                    " train_sr " + std::to_string(rec.train_sum_rate) + " test_sr " +
                    std::to_string(rec.test_sum_rate) + " ratio " + std::to_string(rec.ratio));
            }
            sr.curve.push_back(rec);
        }
        rep.seeds.push_back(std::move(sr));
        out.models.push_back(std::move(model));
    }
    return out;
}

} // namespace sqm::train
