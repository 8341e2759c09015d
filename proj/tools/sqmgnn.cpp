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
// sqmgnn: dataset generation, training, evaluation and analysis for
// quantum and classical GNN power control.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sqm/errors.hpp"
#include "sqm/xp/commands.hpp"

namespace {

using namespace sqm;
namespace fs = std::filesystem;

int exit_code(const std::string &category) {
    if (category == "usage" || category == "contract") {
        return 2;
    }
    if (category == "data") {
        return 3;
    }
    if (category == "io") {
        return 4;
    }
    if (category == "capacity") {
        return 5;
    }
    return 1;
}

int fail(const std::string &category, const std::string &msg) {
    std::string one_line = msg;
    for (auto &ch : one_line) {
        if (ch == '\n' || ch == '\r') {
            ch = ' ';
        }
    }
    std::cerr << "error: " << category << ": " << one_line << '\n';
    return exit_code(category);
}

// Flags shared by commands that take a RunConfig.
struct Overrides {
    std::string config;
    std::optional<std::size_t> K, train_count, test_count, count, epochs, batch, workers, k, layers, depth;
    std::optional<std::uint64_t> seed, sweep_seed;
    std::optional<double> p_max, lr;
    std::optional<std::string> model, backend, engine, sampling;
    std::vector<std::uint64_t> seeds;
    std::vector<std::size_t> sweep_K;
    std::vector<double> sweep_p;
};

void add_config_flags(CLI::App *cmd, Overrides &o) {
    cmd->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--K", o.K, "number of D2D pairs");
    cmd->add_option("--seed", o.seed, "scenario seed");
    cmd->add_option("--p-max", o.p_max, "max transmit power [W]");
}

xp::RunConfig resolve(const Overrides &o) {
    xp::RunConfig c = o.config.empty() ? xp::RunConfig{} : xp::run_config_from_json(io::read_json(o.config));
    if (o.K) {
        c.scenario.K = *o.K;
    }
    if (o.seed) {
        c.scenario.seed = *o.seed;
    }
    if (o.p_max) {
        c.scenario.p_max_w = *o.p_max;
    }
    if (o.count) {
        c.data.train_count = *o.count;
        c.data.test_count = *o.count;
        c.sweep.count = *o.count;
    }
    if (o.train_count) {
        c.data.train_count = *o.train_count;
    }
    if (o.test_count) {
        c.data.test_count = *o.test_count;
    }
    if (o.epochs) {
        c.train.epochs = *o.epochs;
    }
    if (o.batch) {
        c.train.batch = *o.batch;
    }
    if (o.lr) {
        c.train.lr = *o.lr;
    }
    if (o.workers) {
        c.train.workers = *o.workers;
    }
    if (!o.seeds.empty()) {
        c.train.seeds = o.seeds;
    }
    if (o.model) {
        c.model = *o.model;
    }
    if (o.k) {
        c.sqm.k = *o.k;
        c.qubit_budget.k = *o.k;
    }
    if (o.layers) {
        c.sqm.layers = *o.layers;
        c.gnn.rounds = *o.layers;
    }
    if (o.depth) {
        c.sqm.depth = *o.depth;
    }
    if (o.backend) {
        c.sqm.backend = models::parse_backend(*o.backend);
    }
    if (o.engine) {
        c.sqm.engine = models::parse_engine(*o.engine);
    }
    if (o.sampling) {
        c.sqm.sampling = models::parse_sampling(*o.sampling);
    }
    if (!o.sweep_K.empty()) {
        c.sweep.K = o.sweep_K;
        c.qubit_budget.K = o.sweep_K;
    }
    if (!o.sweep_p.empty()) {
        c.sweep.p_max = o.sweep_p;
    }
    if (o.sweep_seed) {
        c.sweep.seed = *o.sweep_seed;
    }
    c.validate();
    return c;
}

fs::path or_default(const std::string &given, const fs::path &fallback) {
    return given.empty() ? fallback : fs::path(given);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum and classical GNN power control for D2D networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sqmgnn 1.0.0");

    Overrides o;
    std::string out, data, checkpoint;
    std::vector<std::string> checkpoints, reports;
    std::uint64_t eval_seed = train::TrainConfig{}.eval_seed;
    xp::BudgetConfig qb_cfg;
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "suppress progress output");

    auto *gen = app.add_subcommand("generate", "generate train and test datasets");
    add_config_flags(gen, o);
    gen->add_option("--count", o.count, "realizations per split");
    gen->add_option("--train-count", o.train_count, "training realizations");
    gen->add_option("--test-count", o.test_count, "test realizations");
    gen->add_option("--out", out, "output directory (default $SQMGNN_RUN_DIR/data)");

    auto *trn = app.add_subcommand("train", "train a model on generated data");
    add_config_flags(trn, o);
    trn->add_option("--model", o.model, "sqm or gnn")->check(CLI::IsMember({"sqm", "gnn"}));
    trn->add_option("--data", data, "dataset directory (default $SQMGNN_RUN_DIR/data)");
    trn->add_option("--out", out, "output directory (default $SQMGNN_RUN_DIR/<model>)");
    trn->add_option("--epochs", o.epochs, "epochs");
    trn->add_option("--batch", o.batch, "mini-batch size");
    trn->add_option("--lr", o.lr, "Adam learning rate");
    trn->add_option("--seeds", o.seeds, "training seeds")->delimiter(',');
    trn->add_option("--workers", o.workers, "threads per batch");
    trn->add_option("--k", o.k, "sampled neighbors per star subgraph");
    trn->add_option("--layers", o.layers, "QGCL layers / GNN rounds");
    trn->add_option("--depth", o.depth, "message blocks per neighbor");
    trn->add_option("--backend", o.backend, "statevector or factorized");
    trn->add_option("--engine", o.engine, "adjoint or parameter_shift");
    trn->add_option("--sampling", o.sampling, "random or deterministic");

    auto *ev = app.add_subcommand("eval", "evaluate a checkpoint against WMMSE");
    ev->add_option("--checkpoint", checkpoint, "checkpoint manifest")->required();
    ev->add_option("--data", data, "dataset manifest (default $SQMGNN_RUN_DIR/data/test.json)");
    ev->add_option("--out", out, "output directory (default $SQMGNN_RUN_DIR/eval)");
    ev->add_option("--eval-seed", eval_seed, "sampling seed for evaluation");

    auto *sw = app.add_subcommand("sweep", "generalization sweep over K and p_max");
    add_config_flags(sw, o);
    sw->add_option("--checkpoint", checkpoints, "checkpoint manifest (repeatable)")->required();
    sw->add_option("--K-list", o.sweep_K, "pair counts")->delimiter(',');
    sw->add_option("--p-max-list", o.sweep_p, "power budgets [W]")->delimiter(',');
    sw->add_option("--count", o.count, "test realizations per cell");
    sw->add_option("--sweep-seed", o.sweep_seed, "seed for per-cell test sets");
    sw->add_option("--out", out, "output directory (default $SQMGNN_RUN_DIR/sweep)");

    auto *qb = app.add_subcommand("qubit-budget", "qubit counts of full-graph and star-subgraph encodings");
    qb->add_option("--K-list", o.sweep_K, "pair counts")->delimiter(',');
    qb->add_option("--k", o.k, "sampled neighbors per star subgraph");
    qb->add_option("--budget", qb_cfg.budget, "available qubits");
    qb->add_option("--usable-fraction", qb_cfg.usable_fraction, "share of the budget usable by the register");
    qb->add_option("--out", out, "output directory (default $SQMGNN_RUN_DIR/qubit_budget)");

    auto *pd = app.add_subcommand("plot-data", "merge training reports into plot-ready CSV");
    pd->add_option("--report", reports, "report.json (repeatable)")->required();
    pd->add_option("--out", out, "output directory (default $SQMGNN_RUN_DIR/plot)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail("usage", e.what());
    }

    std::ostringstream sink;
    std::ostream &log = quiet ? static_cast<std::ostream &>(sink) : std::cout;
    const fs::path run_dir = xp::default_run_dir();
    try {
        if (*gen) {
            xp::cmd_generate(resolve(o), or_default(out, run_dir / "data"), log);
        } else if (*trn) {
            const auto c = resolve(o);
            xp::cmd_train(c, or_default(data, run_dir / "data"), or_default(out, run_dir / c.model), log);
        } else if (*ev) {
            xp::cmd_eval(checkpoint, or_default(data, run_dir / "data" / "test.json"), or_default(out, run_dir / "eval"),
                         eval_seed, log);
        } else if (*sw) {
            std::vector<fs::path> cps(checkpoints.begin(), checkpoints.end());
            xp::cmd_sweep(resolve(o), cps, or_default(out, run_dir / "sweep"), log);
        } else if (*qb) {
            xp::BudgetConfig b = qb_cfg;
            if (!o.sweep_K.empty()) {
                b.K = o.sweep_K;
            }
            if (o.k) {
                b.k = *o.k;
            }
            xp::cmd_qubit_budget(b, or_default(out, run_dir / "qubit_budget"), log);
        } else if (*pd) {
            std::vector<fs::path> rs(reports.begin(), reports.end());
            xp::cmd_plot_data(rs, or_default(out, run_dir / "plot"), log);
        }
    } catch (const fs::filesystem_error &e) {
        return fail("io", e.what());
    } catch (const std::exception &e) {
        return fail(error_category(e), e.what());
    }
    return 0;
}
