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
 * @file commands.hpp
 * Experiment commands behind the sqmgnn CLI. Every command is a pure
 * function of its resolved configuration and writes into its own directory;
 * reruns overwrite with identical bytes.
 */
#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sqm/d2d/dataset.hpp"
#include "sqm/errors.hpp"
#include "sqm/io.hpp"
#include "sqm/models/checkpoint.hpp"
#include "sqm/train/report.hpp"
#include "sqm/train/sweep.hpp"
#include "sqm/train/trainer.hpp"
#include "sqm/xp/run_config.hpp"

namespace sqm::xp {

namespace fs = std::filesystem;

inline constexpr const char *kRunDirEnv = "SQMGNN_RUN_DIR";

/// $SQMGNN_RUN_DIR if set and non-empty, else ./runs.
inline fs::path default_run_dir() {
    const char *env = std::getenv(kRunDirEnv);
    return (env != nullptr && *env != '\0') ? fs::path(env) : fs::path("runs");
}

/// Train and test seeds are derived from the scenario seed.
inline std::uint64_t split_seed(const RunConfig &c, const std::string &split) {
    return derive_seed({c.scenario.seed, split == "train" ? 0ULL : 1ULL});
}

inline void echo_config(const RunConfig &c, const fs::path &dir) { io::write_json(dir / "config.json", to_json(c)); }

// ---------------------------------------------------------------- generate

inline void cmd_generate(const RunConfig &c, const fs::path &out, std::ostream &log) {
    c.validate();
    fs::create_directories(out);
    echo_config(c, out);
    for (const auto &[split, count] : {std::pair<std::string, std::size_t>{"train", c.data.train_count},
                                       std::pair<std::string, std::size_t>{"test", c.data.test_count}}) {
        const auto ds = d2d::generate_dataset(c.scenario, count, split, split_seed(c, split));
        d2d::save_dataset(ds, out / (split + ".json"));
        log << "wrote " << (out / (split + ".json")).string() << " (" << count << " realizations, K=" << c.scenario.K
            << ")\n";
    }
}

// ------------------------------------------------------------------- train

inline train::TrainReport cmd_train(const RunConfig &c, const fs::path &data, const fs::path &out, std::ostream &log) {
    c.validate();
    const auto tr = d2d::load_dataset(data / "train.json");
    const auto te = d2d::load_dataset(data / "test.json");
    fs::create_directories(out / "checkpoints");
    echo_config(c, out);
    auto progress = [&](const std::string &line) { log << line << '\n'; };
    train::TrainReport report;
    std::vector<models::Policy> trained;
    if (c.model == "sqm") {
        auto res = train::train<models::SqmGnnModel>([&] { return models::SqmGnnModel(c.sqm); }, "sqm", tr, te,
                                                     c.train, progress);
        report = std::move(res.report);
        trained.assign(res.models.begin(), res.models.end());
    } else {
        auto res = train::train<models::ClassicalGnnModel>([&] { return models::ClassicalGnnModel(c.gnn); }, "gnn",
                                                           tr, te, c.train, progress);
        report = std::move(res.report);
        trained.assign(res.models.begin(), res.models.end());
    }
    for (std::size_t i = 0; i < trained.size(); ++i) {
        models::save_checkpoint(trained[i],
                                out / "checkpoints" / ("seed_" + std::to_string(c.train.seeds[i]) + ".json"),
                                {{"seed", c.train.seeds[i]}, {"scenario", d2d::to_json(tr.config)}});
    }
    io::write_json(out / "report.json", train::to_json(report));
    io::write_file(out / "curves.csv", train::curves_csv(report));
    const auto ratios = report.final_ratios();
    log << report.model << ": ratio " << train::fmt(train::mean(ratios)) << " +- "
        << train::fmt(train::sample_std(ratios)) << " % of WMMSE over " << ratios.size() << " seed(s)\n";
    return report;
}

// -------------------------------------------------------------------- eval

struct EvalRow {
    std::string model;
    std::size_t K;
    double p_max;
    double sum_rate;
    double ratio;
};

inline std::string eval_csv(const std::vector<EvalRow> &rows) {
    std::ostringstream os;
    os << "model,K,p_max,sum_rate,ratio\n";
    for (const auto &r : rows) {
        os << r.model << ',' << r.K << ',' << train::fmt(r.p_max) << ',' << train::fmt(r.sum_rate) << ','
           << train::fmt(r.ratio) << '\n';
    }
    return os.str();
}

inline std::string format_table(const std::vector<EvalRow> &rows) {
    std::ostringstream os;
    os << std::left << std::setw(12) << "model" << std::right << std::setw(6) << "K" << std::setw(8) << "p_max"
       << std::setw(14) << "sum_rate" << std::setw(10) << "ratio%" << '\n';
    for (const auto &r : rows) {
        os << std::left << std::setw(12) << r.model << std::right << std::setw(6) << r.K << std::setw(8)
           << std::fixed << std::setprecision(2) << r.p_max << std::setw(14) << std::setprecision(4) << r.sum_rate
           << std::setw(10) << std::setprecision(2) << r.ratio << '\n';
        os.unsetf(std::ios::fixed);
    }
    return os.str();
}

/**
 * Checkpoint vs. WMMSE on one dataset, plus max-power and random-power
 * reference rows. A K different from the training K is allowed.
 */
inline std::vector<EvalRow> cmd_eval(const fs::path &checkpoint, const fs::path &data, const fs::path &out,
                                     std::uint64_t eval_seed, std::ostream &log) {
    const auto policy = models::load_checkpoint(checkpoint);
    const auto ds = d2d::load_dataset(data);
    const std::size_t K = ds.config.K;
    const double p_max = ds.config.p_max_w;
    const double sigma2 = d2d::noise_power(ds.config.noise_dbm);
    std::vector<graph::WirelessGraph> graphs;
    for (const auto &r : ds.realizations) {
        graphs.push_back(r.to_graph());
    }
    const auto set = models::prepare(graphs, train::policy_norm(policy));
    const auto ref = train::wmmse_rates(set, p_max, sigma2);

    const auto manifest = io::read_json(checkpoint);
    if (manifest.contains("meta") && manifest["meta"].contains("scenario")) {
        const auto trained = d2d::scenario_from_json(manifest["meta"]["scenario"]);
        if (trained.K != K || trained.p_max_w != p_max) {
            log << "warning: evaluating at K=" << K << ", p_max=" << p_max << " (trained at K=" << trained.K
                << ", p_max=" << trained.p_max_w << ")\n";
        }
    }
    std::vector<EvalRow> rows;
    const auto main = train::evaluate_policy(policy, ds, eval_seed, ref);
    rows.push_back({models::policy_kind(policy), K, p_max, main.sum_rate, main.ratio});
    rows.push_back({"wmmse", K, p_max, main.wmmse_sum_rate, 100.0});
    const auto mp = train::evaluate_policy(models::MaxPowerPolicy{p_max}, ds, eval_seed, ref);
    rows.push_back({"max_power", K, p_max, mp.sum_rate, mp.ratio});
    const auto rp = train::evaluate(
        [&](const models::PreparedGraph &g, std::size_t i) {
            std::mt19937_64 rng(train::eval_sample_seed(eval_seed, i));
            return d2d::random_power(g.graph.num_nodes(), p_max, rng);
        },
        set, p_max, sigma2, ref);
    rows.push_back({"random_power", K, p_max, rp.sum_rate, rp.ratio});

    fs::create_directories(out);
    io::write_file(out / "eval.csv", eval_csv(rows));
    log << format_table(rows);
    return rows;
}

// ------------------------------------------------------------------- sweep

inline std::vector<train::SweepRow> cmd_sweep(const RunConfig &c, const std::vector<fs::path> &checkpoints,
                                              const fs::path &out, std::ostream &log) {
    if (checkpoints.empty()) {
        throw ContractError("sweep needs at least one checkpoint");
    }
    std::vector<std::pair<std::string, models::Policy>> policies;
    std::map<std::string, int> seen;
    for (const auto &p : checkpoints) {
        auto pol = models::load_checkpoint(p);
        std::string name = models::policy_kind(pol);
        if (seen[name]++ > 0) {
            name += "_" + std::to_string(seen[name] - 1);
        }
        policies.emplace_back(name, std::move(pol));
    }
    std::vector<train::SweepCell> cells;
    for (const auto K : c.sweep.K) {
        for (const auto p : c.sweep.p_max) {
            cells.push_back({K, p});
        }
    }
    const auto rows =
        train::generalization_sweep(policies, cells, c.scenario, c.sweep.count, c.sweep.seed, c.train.eval_seed);
    fs::create_directories(out);
    echo_config(c, out);
    io::write_file(out / "sweep.csv", train::sweep_csv(rows));
    std::vector<EvalRow> table;
    for (const auto &r : rows) {
        table.push_back({r.model, r.K, r.p_max, r.sum_rate, r.ratio});
    }
    log << format_table(table);
    return rows;
}

// ------------------------------------------------------------ qubit-budget

struct BudgetRow {
    std::size_t K;
    std::size_t qsgcn_qubits;
    std::size_t sqm_qubits;
    bool qsgcn_feasible;
    bool sqm_feasible;
};

/// Full-graph encoding: one qubit per node plus one per undirected edge.
inline std::size_t qsgcn_qubits(std::size_t K) { return K + K * (K - 1) / 2; }
/// Star subgraph: center, k neighbors, k edges.
inline std::size_t sqm_qubits(std::size_t k) { return 2 * k + 1; }

inline std::vector<BudgetRow> qubit_budget(const BudgetConfig &b) {
    if (b.k == 0 || !(b.usable_fraction > 0.0 && b.usable_fraction <= 1.0)) {
        throw ContractError("qubit budget needs k >= 1 and usable_fraction in (0, 1]");
    }
    std::vector<BudgetRow> rows;
    for (const auto K : b.K) {
        if (K == 0) {
            throw ContractError("K must be positive");
        }
        const std::size_t cap = b.usable();
        rows.push_back({K, qsgcn_qubits(K), sqm_qubits(b.k), qsgcn_qubits(K) <= cap, sqm_qubits(b.k) <= cap});
    }
    return rows;
}

inline std::string budget_csv(const std::vector<BudgetRow> &rows, const BudgetConfig &b) {
    std::ostringstream os;
    os << "K,qsgcn_qubits,sqm_qubits,budget,usable,qsgcn_feasible,sqm_feasible\n";
    for (const auto &r : rows) {
        os << r.K << ',' << r.qsgcn_qubits << ',' << r.sqm_qubits << ',' << b.budget << ',' << b.usable() << ','
           << (r.qsgcn_feasible ? "yes" : "no") << ',' << (r.sqm_feasible ? "yes" : "no") << '\n';
    }
    return os.str();
}

inline std::vector<BudgetRow> cmd_qubit_budget(const BudgetConfig &b, const fs::path &out, std::ostream &log) {
    const auto rows = qubit_budget(b);
    fs::create_directories(out);
    io::write_file(out / "qubit_budget.csv", budget_csv(rows, b));
    log << std::left << std::setw(6) << "K" << std::right << std::setw(8) << "QSGCN" << std::setw(6) << "ok"
        << std::setw(8) << "SQM" << std::setw(6) << "ok" << "   (budget " << b.budget << ", usable " << b.usable() << ")\n";
    for (const auto &r : rows) {
        log << std::left << std::setw(6) << r.K << std::right << std::setw(8) << r.qsgcn_qubits << std::setw(6)
            << (r.qsgcn_feasible ? "yes" : "no") << std::setw(8) << r.sqm_qubits << std::setw(6)
            << (r.sqm_feasible ? "yes" : "no") << '\n';
    }
    return rows;
}

// --------------------------------------------------------------- plot-data

/**
 * Merges reports into one epoch-indexed CSV: per model, mean and sample std
 * over seeds of train and test sum-rate, plus the WMMSE test reference.
 */
inline std::string plot_data(const std::vector<train::TrainReport> &reports) {
    if (reports.empty()) {
        throw ContractError("plot-data needs at least one report");
    }
    std::size_t epochs = 0;
    for (const auto &r : reports) {
        if (r.seeds.empty()) {
            throw DataError("report for '" + r.model + "' has no seeds");
        }
        for (const auto &s : r.seeds) {
            epochs = std::max(epochs, s.curve.size());
        }
    }
    std::ostringstream os;
    os << "epoch";
    std::map<std::string, int> seen;
    for (const auto &r : reports) {
        std::string m = r.model;
        if (seen[m]++ > 0) {
            m += "_" + std::to_string(seen[r.model] - 1);
        }
        os << ',' << m << "_train_mean," << m << "_train_std," << m << "_test_mean," << m << "_test_std";
    }
    os << ",wmmse_test\n";
    for (std::size_t e = 0; e < epochs; ++e) {
        os << e + 1;
        for (const auto &r : reports) {
            std::vector<double> trs, tes;
            for (const auto &s : r.seeds) {
                if (e < s.curve.size()) {
                    trs.push_back(s.curve[e].train_sum_rate);
                    if (std::isfinite(s.curve[e].test_sum_rate)) {
                        tes.push_back(s.curve[e].test_sum_rate);
                    }
                }
            }
            os << ',' << train::fmt(trs.empty() ? NAN : train::mean(trs)) << ','
               << train::fmt(trs.empty() ? NAN : train::sample_std(trs)) << ','
               << train::fmt(tes.empty() ? NAN : train::mean(tes)) << ','
               << train::fmt(tes.empty() ? NAN : train::sample_std(tes));
        }
        os << ',' << train::fmt(reports.front().wmmse_test_sum_rate) << '\n';
    }
    return os.str();
}

inline void cmd_plot_data(const std::vector<fs::path> &report_files, const fs::path &out, std::ostream &log) {
    std::vector<train::TrainReport> reports;
    for (const auto &f : report_files) {
        try {
            reports.push_back(train::report_from_json(io::read_json(f)));
        } catch (const DataError &e) {
            throw DataError(f.string() + ": " + e.what());
        }
    }
    fs::create_directories(out);
    io::write_file(out / "plot.csv", plot_data(reports));
    log << "wrote " << (out / "plot.csv").string() << '\n';
}

} // namespace sqm::xp
