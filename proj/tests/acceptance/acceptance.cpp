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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
//
//   acceptance --workdir DIR [--only 1,5,9]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sqm/d2d/baselines.hpp"
#include "sqm/d2d/objective.hpp"
#include "sqm/d2d/scenario.hpp"
#include "sqm/io.hpp"
#include "sqm/models/checkpoint.hpp"
#include "sqm/qgcl/qgcl.hpp"
#include "sqm/qsim/gradients.hpp"
#include "sqm/train/trainer.hpp"
#include "sqm/xp/commands.hpp"

#include "../oracles.hpp"
#include "../test_helpers.hpp"

namespace {

using namespace sqm;
namespace fs = std::filesystem;

struct Outcome {
    bool pass;
    std::string detail;
};

struct Context {
    fs::path work;
};

std::string f(double v, int prec = 4) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

std::string fixed(double v, int prec = 2) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(prec) << v;
    return os.str();
}

int cli(const std::string &args) {
    const std::string cmd = "\"" SQMGNN_CLI_PATH "\" -q " + args;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void cli_or_throw(const std::string &args) {
    if (const int rc = cli(args); rc != 0) {
        throw std::runtime_error("sqmgnn " + args + " exited with " + std::to_string(rc));
    }
}

std::vector<std::vector<std::string>> read_csv(const fs::path &p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(io::read_file(p));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

// 1. qubit budget

Outcome qubit_budget(const Context &) {
    const auto rows = xp::qubit_budget(xp::BudgetConfig{});
    const std::vector<std::size_t> want_q{10, 36, 55, 210};
    const std::vector<bool> want_ok{true, true, false, false};
    bool ok = rows.size() == 4;
    std::ostringstream os;
    for (std::size_t i = 0; ok && i < rows.size(); ++i) {
        ok = ok && rows[i].qsgcn_qubits == want_q[i] && rows[i].sqm_qubits == 13 && rows[i].qsgcn_feasible == want_ok[i] &&
             rows[i].sqm_feasible;
        os << "K=" << rows[i].K << ":" << rows[i].qsgcn_qubits << (rows[i].qsgcn_feasible ? "/yes" : "/no") << " ";
    }
    os << "sqm=" << (rows.empty() ? 0 : rows[0].sqm_qubits);
    return {ok, os.str()};
}

// 2. parameter efficiency

Outcome param_ratio(const Context &) {
    const models::SqmGnnModel sqm;
    const models::ClassicalGnnModel gnn;
    const double ratio = static_cast<double>(sqm.num_params()) / static_cast<double>(gnn.num_params());
    return {ratio <= 0.10, "sqm " + std::to_string(sqm.num_params()) + " (quantum " +
                               std::to_string(sqm.num_quantum_params()) + ") vs gnn " +
                               std::to_string(gnn.num_params()) + " = " + fixed(100.0 * ratio) + "%"};
}

// 3. gradients

Outcome gradients(const Context &) {
    using namespace qsim;
    std::mt19937_64 rng(31337);
    double worst_shift_fd = 0.0, worst_adj_shift = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const auto c = test::random_circuit(rng, n, 12 + trial % 19, 6);
        const auto p = test::random_params(rng, 6);
        const Observable obs{static_cast<Pauli>(trial % 3), trial % n};
        const auto shift = grad_parameter_shift(c, p, obs, test::all_slots(c));
        const auto fd = test::central_difference([&](const std::vector<double> &x) { return expectation(run(c, x), obs); },
                                                 p, 1e-5);
        const auto adj = grad_adjoint(c, p, Hamiltonian{{1.0, obs}});
        worst_shift_fd = std::max(worst_shift_fd, test::max_rel_err(shift, fd));
        worst_adj_shift = std::max(worst_adj_shift, test::max_abs_diff(adj, shift));
    }

    double worst_model = 0.0;
    const double sigma2 = d2d::noise_power(-104.0);
    d2d::ScenarioConfig sc;
    sc.K = 2;
    sc.area_side_m = 120.0;
    for (int t = 0; t < 5; ++t) {
        models::SqmConfig cfg;
        cfg.layers = 1;
        models::SqmGnnModel m(cfg);
        m.init(rng);
        const auto r = d2d::generate_realization(sc, rng);
        const auto g = r.to_graph();
        graph::WirelessGraph gs[] = {g};
        const auto feats = graph::encode(g, graph::fit_normalization(gs));
        const auto tape = m.forward(feats, 7);
        std::vector<double> grad(m.num_params(), 0.0);
        m.backward(feats, tape, d2d::loss_gradient(tape.powers, g.gains(), sigma2), grad);
        auto probe = m;
        const auto fd = test::five_point_difference(
            [&](const std::vector<double> &x) {
                probe.set_params(x);
                return d2d::loss(probe.forward(feats, 7).powers, g.gains(), sigma2);
            },
            m.params(), 1e-5);
        worst_model = std::max(worst_model, test::max_rel_err(grad, fd));
    }
    const bool ok = worst_shift_fd <= 1e-6 && worst_adj_shift <= 1e-9 && worst_model <= 1e-5;
    return {ok, "shift-vs-fd " + f(worst_shift_fd, 3) + " (<=1e-6), adjoint-vs-shift " + f(worst_adj_shift, 3) +
                    " (<=1e-9), model " + f(worst_model, 3) + " (<=1e-5)"};
}

// 4. permutation properties

graph::StarSubgraph random_star(std::mt19937_64 &rng, std::size_t k, std::size_t padding) {
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    graph::StarSubgraph s;
    s.center_angle = angle(rng);
    s.slots.resize(k);
    for (std::size_t j = 0; j + padding < k; ++j) {
        s.slots[j] = graph::StarSlot{j + 1, angle(rng), angle(rng)};
    }
    return s;
}

Outcome permutations(const Context &) {
    std::mt19937_64 rng(4242);
    double worst_slot = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t k = 1 + t % 6;
        const auto sub = random_star(rng, k, t % 4 == 0 ? k / 2 : 0);
        const auto params = test::random_params(rng, qgcl::QgclParams::count(2));
        auto shuffled = sub;
        std::shuffle(shuffled.slots.begin(), shuffled.slots.end(), rng);
        qgcl::QgclEvaluator eval(k, 2, qgcl::Backend::statevector);
        const auto a = eval.bloch(sub, params);
        const auto b = eval.bloch(shuffled, params);
        for (int i = 0; i < 3; ++i) {
            worst_slot = std::max(worst_slot, std::abs(a[i] - b[i]));
        }
    }

    double worst_model = 0.0;
    for (std::size_t K = 2; K <= 6; ++K) {
        for (int rep = 0; rep < 4; ++rep) {
            models::SqmConfig cfg;
            cfg.k = K - 1 + static_cast<std::size_t>(rep % 2);
            cfg.sampling = graph::SamplingMode::deterministic;
            models::SqmGnnModel m(cfg);
            m.init(rng);
            const auto g = graph::build_graph(K, test::synthetic_gains(K, rng));
            std::vector<std::size_t> perm(K);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            const auto gp = g.permuted(perm);
            graph::WirelessGraph gs[] = {g};
            const auto stats = graph::fit_normalization(gs);
            const auto a = m.predict(graph::encode(g, stats), 1);
            const auto b = m.predict(graph::encode(gp, stats), 2);
            for (std::size_t i = 0; i < K; ++i) {
                worst_model = std::max(worst_model, std::abs(b[i] - a[perm[i]]));
            }
        }
    }
    return {worst_slot <= 1e-10 && worst_model <= 1e-9,
            "slot permutation " + f(worst_slot, 3) + " (<=1e-10), model equivariance " + f(worst_model, 3) +
                " (<=1e-9)"};
}

// 5. WMMSE against brute force

Outcome wmmse_oracle(const Context &) {
    d2d::ScenarioConfig sc;
    sc.K = 2;
    const double sigma2 = d2d::noise_power(sc.noise_dbm);
    std::mt19937_64 rng(derive_seed({sc.seed, 0xACCE55ULL}));
    std::size_t good = 0;
    double worst = 1.0;
    for (int t = 0; t < 50; ++t) {
        const auto r = d2d::generate_realization(sc, rng);
        const auto p = d2d::wmmse(r.H, sc.p_max_w, sigma2, d2d::kWmmseIterations);
        const double got = d2d::sum_rate(p, r.H, sigma2);
        const auto grid = test::grid_optimum_k2(r.H, sc.p_max_w, sigma2, 101);
        const double ratio = got / grid.rate;
        worst = std::min(worst, ratio);
        good += ratio >= 0.99 ? 1 : 0;
    }

    double worst_drop = 0.0;
    std::mt19937_64 mrng(derive_seed({sc.seed, 0x3070ULL}));
    for (int t = 0; t < 20; ++t) {
        d2d::ScenarioConfig mc = sc;
        mc.K = 2 + static_cast<std::size_t>(t % 5);
        const auto r = d2d::generate_realization(mc, mrng);
        std::vector<double> trace;
        (void)d2d::wmmse(r.H, mc.p_max_w, sigma2, d2d::kWmmseIterations, &trace);
        for (std::size_t i = 1; i < trace.size(); ++i) {
            worst_drop = std::max(worst_drop, trace[i - 1] - trace[i]);
        }
    }
    const bool ok = good == 50 && worst_drop <= 1e-9;
    return {ok, std::to_string(good) + "/50 instances >= 99% of grid optimum (worst " + fixed(100.0 * worst) +
                    "%), max per-iteration decrease " + f(worst_drop, 3) + " (<=1e-9)"};
}

// 6 and 7 share trained checkpoints.

struct Trained {
    bool done{false};
    std::string error;
    double sqm_ratio{NAN}, gnn_ratio{NAN}, sqm_std{NAN}, gnn_std{NAN}, wmmse{NAN};
    std::vector<fs::path> checkpoints;
};

Trained &trained_models(const Context &ctx) {
    static Trained t;
    if (t.done) {
        return t;
    }
    t.done = true;
    const fs::path dir = ctx.work / "learning";
    try {
        cli_or_throw("generate --K 10 --p-max 1 --train-count 2000 --test-count 500 --out \"" +
                     (dir / "data").string() + "\"");
        for (const std::string model : {"sqm", "gnn"}) {
            cli_or_throw("train --model " + model + " --epochs 50 --seeds 1,2,3 --data \"" + (dir / "data").string() +
                         "\" --out \"" + (dir / model).string() + "\"");
            const auto rep = io::read_json(dir / model / "report.json");
            const double mean = rep["summary"]["ratio_mean"].get<double>();
            const double sd = rep["summary"]["ratio_std"].get<double>();
            (model == "sqm" ? t.sqm_ratio : t.gnn_ratio) = mean;
            (model == "sqm" ? t.sqm_std : t.gnn_std) = sd;
            t.wmmse = rep["wmmse_test_sum_rate"].get<double>();
            for (const int s : {1, 2, 3}) {
                t.checkpoints.push_back(dir / model / "checkpoints" / ("seed_" + std::to_string(s) + ".json"));
            }
        }
    } catch (const std::exception &e) {
        t.error = e.what();
    }
    return t;
}

Outcome learning(const Context &ctx) {
    const auto &t = trained_models(ctx);
    if (!t.error.empty()) {
        return {false, t.error};
    }
    const bool a = t.sqm_ratio >= 90.0;
    const bool b = t.sqm_ratio >= t.gnn_ratio - 2.0;
    return {a && b, "sqm " + fixed(t.sqm_ratio) + " +- " + fixed(t.sqm_std) + "% of WMMSE (a: >=90 " +
                        (a ? "ok" : "no") + "), gnn " + fixed(t.gnn_ratio) + " +- " + fixed(t.gnn_std) +
                        "% (b: sqm >= gnn-2 " + (b ? "ok" : "no") + "), WMMSE " + f(t.wmmse) + " bps/Hz"};
}

Outcome generalization(const Context &ctx) {
    const auto &t = trained_models(ctx);
    if (!t.error.empty()) {
        return {false, t.error};
    }
    const fs::path out = ctx.work / "generalization";
    std::string args = "sweep --K-list 5,10,20 --p-max-list 1 --count 500 --out \"" + out.string() + "\"";
    for (const auto &c : t.checkpoints) {
        args += " --checkpoint \"" + c.string() + "\"";
    }
    try {
        cli_or_throw(args);
    } catch (const std::exception &e) {
        return {false, e.what()};
    }
    // model column is sqm, sqm_1, sqm_2, gnn, ...; average over seeds
    std::map<std::pair<std::string, std::size_t>, std::vector<double>> by;
    bool finite = true;
    const auto rows = read_csv(out / "sweep.csv");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::string family = rows[i][0].substr(0, 3);
        const double ratio = rows[i][4].empty() ? NAN : std::stod(rows[i][4]);
        finite = finite && std::isfinite(ratio);
        by[{family, std::stoul(rows[i][1])}].push_back(ratio);
    }
    auto avg = [&](const std::string &m, std::size_t K) { return train::mean(by[{m, K}]); };
    bool order = true;
    std::ostringstream os;
    for (const std::size_t K : {5, 10, 20}) {
        order = order && avg("sqm", K) >= avg("gnn", K) - 2.0;
        os << "K=" << K << " sqm " << fixed(avg("sqm", K)) << " gnn " << fixed(avg("gnn", K)) << "; ";
    }
    const double drop = avg("sqm", 10) - avg("sqm", 20);
    os << "sqm drop 10->20 " << fixed(drop) << " pp (<=15)";
    const bool ok = finite && rows.size() == 1 + 3 * 6 && order && drop <= 15.0;
    return {ok, os.str() + (order ? "" : ", sqm < gnn-2 somewhere")};
}

// 8. CFE accounting

Outcome cfe_accounting(const Context &) {
    d2d::ScenarioConfig sc;
    sc.K = 10;
    const auto tr = d2d::generate_dataset(sc, 40, "train", 11);
    const auto te = d2d::generate_dataset(sc, 8, "test", 12);
    train::TrainConfig cfg;
    cfg.epochs = 2;
    cfg.batch = 8;
    cfg.seeds = {1};
    cfg.forward_only = true;
    const auto res = train::train<models::SqmGnnModel>([] { return models::SqmGnnModel(); }, "sqm", tr, te, cfg);
    const auto &s = res.report.seeds[0];
    const std::uint64_t L = models::SqmConfig{}.layers;
    // batches of 8 graphs, 5 per epoch, each graph N=10 centres per layer
    const std::uint64_t want = 2 * 5 * 8 * 10 * L;
    const bool counted = s.cfe.forward == want && s.cfe.gradient == 0;
    const bool predicted = train::predicted_cfe(2, 8, 10, 1) == 160 && train::predicted_cfe(50, 64, 20, 3) == 192000 &&
                           res.report.predicted_cfe == 2 * 8 * 10;
    return {counted && predicted, "forward " + std::to_string(s.cfe.forward) + " expected " + std::to_string(want) +
                                      ", predicted_cfe " + std::to_string(res.report.predicted_cfe)};
}

// 9. reproducibility

std::map<std::string, std::string> snapshot(const fs::path &root) {
    std::map<std::string, std::string> files;
    for (const auto &e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) {
            files[fs::relative(e.path(), root).string()] = io::read_file(e.path());
        }
    }
    return files;
}

Outcome reproducibility(const Context &ctx) {
    std::vector<std::map<std::string, std::string>> runs;
    for (const char *tag : {"a", "b"}) {
        const fs::path d = ctx.work / "repro" / tag;
        fs::remove_all(d);
        const std::string q = "\"";
        try {
            cli_or_throw("generate --K 6 --count 40 --seed 9 --out " + q + (d / "data").string() + q);
            for (const std::string m : {"sqm", "gnn"}) {
                cli_or_throw("train --model " + m + " --epochs 3 --batch 8 --seeds 1,2 --data " + q +
                             (d / "data").string() + q + " --out " + q + (d / m).string() + q);
            }
            cli_or_throw("eval --checkpoint " + q + (d / "sqm/checkpoints/seed_1.json").string() + q + " --data " + q +
                         (d / "data/test.json").string() + q + " --out " + q + (d / "eval").string() + q);
            cli_or_throw("sweep --K-list 4,8 --p-max-list 1,2 --count 20 --checkpoint " + q +
                         (d / "sqm/checkpoints/seed_2.json").string() + q + " --checkpoint " + q +
                         (d / "gnn/checkpoints/seed_1.json").string() + q + " --out " + q + (d / "sweep").string() + q);
            cli_or_throw("qubit-budget --out " + q + (d / "qubits").string() + q);
            cli_or_throw("plot-data --report " + q + (d / "sqm/report.json").string() + q + " --report " + q +
                         (d / "gnn/report.json").string() + q + " --out " + q + (d / "plot").string() + q);
        } catch (const std::exception &e) {
            return {false, e.what()};
        }
        runs.push_back(snapshot(d));
    }
    std::size_t differing = 0;
    for (const auto &[name, bytes] : runs[0]) {
        const auto it = runs[1].find(name);
        differing += (it == runs[1].end() || it->second != bytes) ? 1 : 0;
    }
    const bool ok = differing == 0 && runs[0].size() == runs[1].size() && !runs[0].empty();
    return {ok, std::to_string(runs[0].size()) + " files compared, " + std::to_string(differing) + " differ"};
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"acceptance criteria"};
    std::string workdir = "acceptance_runs";
    std::vector<int> only;
    app.add_option("--workdir", workdir, "scratch directory");
    app.add_option("--only", only, "criteria to run")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    const Context ctx{fs::absolute(workdir)};
    fs::create_directories(ctx.work);

    const std::vector<std::pair<std::string, std::function<Outcome(const Context &)>>> criteria{
        {"qubit budget", qubit_budget},
        {"parameter efficiency", param_ratio},
        {"gradient correctness", gradients},
        {"permutation properties", permutations},
        {"WMMSE oracle", wmmse_oracle},
        {"learning result", learning},
        {"generalization sweep", generalization},
        {"CFE accounting", cfe_accounting},
        {"reproducibility", reproducibility},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) {
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second(ctx);
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += o.pass ? 0 : 1;
        std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
                  << o.detail << " [" << fixed(secs, 1) << "s]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
