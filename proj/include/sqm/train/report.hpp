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
 * @file report.hpp
 * TrainReport as JSON (summary) and CSV (one row per seed and epoch).
 */
#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "sqm/io.hpp"
#include "sqm/train/trainer.hpp"

namespace sqm::train {

inline constexpr const char *kReportFormat = "sqmgnn.report.v1";

namespace detail {
// JSON has no NaN; unevaluated epochs are written as null.
inline io::json num_or_null(double v) { return std::isfinite(v) ? io::json(v) : io::json(nullptr); }
inline double null_or_num(const io::json &j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}
inline io::json cfe_json(const CfeCounter &c) {
    return {{"forward", c.forward}, {"gradient", c.gradient}, {"total", c.total()}};
}
inline io::json eval_json(const EvalResult &e) {
    return {{"sum_rate", e.sum_rate}, {"wmmse_sum_rate", e.wmmse_sum_rate}, {"ratio", e.ratio}, {"count", e.count}};
}
} // namespace detail

inline io::json to_json(const TrainReport &r) {
    io::json seeds = io::json::array();
    for (const auto &s : r.seeds) {
        io::json curve = io::json::array();
        for (const auto &e : s.curve) {
            curve.push_back({{"epoch", e.epoch},
                             {"train_sum_rate", e.train_sum_rate},
                             {"test_sum_rate", detail::num_or_null(e.test_sum_rate)},
                             {"ratio", detail::num_or_null(e.ratio)}});
        }
        seeds.push_back({{"seed", s.seed},
                         {"final", detail::eval_json(s.final_eval)},
                         {"cfe", detail::cfe_json(s.cfe)},
                         {"eval_forward_cfe", s.eval_forward},
                         {"curve", curve}});
    }
    const auto ratios = r.final_ratios();
    const auto rates = r.final_sum_rates();
    return {{"format", kReportFormat},
            {"model", r.model},
            {"params", {{"total", r.param_count}, {"quantum", r.quantum_params}, {"classical", r.classical_params}}},
            {"K", r.K},
            {"p_max", r.p_max},
            {"train_count", r.train_count},
            {"test_count", r.test_count},
            {"wmmse_test_sum_rate", r.wmmse_test_sum_rate},
            {"train_config", to_json(r.config)},
            {"summary",
             {{"ratio_mean", mean(ratios)},
              {"ratio_std", sample_std(ratios)},
              {"sum_rate_mean", mean(rates)},
              {"sum_rate_std", sample_std(rates)}}},
            {"cfe", {{"counted", detail::cfe_json(r.total_cfe())}, {"predicted", r.predicted_cfe}}},
            {"seeds", seeds}};
}

inline TrainReport report_from_json(const io::json &j) {
    TrainReport r;
    try {
        if (j.at("format").get<std::string>() != kReportFormat) {
            throw DataError("unsupported report format");
        }
        r.model = j.at("model").get<std::string>();
        r.param_count = j.at("params").at("total").get<std::size_t>();
        r.quantum_params = j.at("params").at("quantum").get<std::size_t>();
        r.classical_params = j.at("params").at("classical").get<std::size_t>();
        r.K = j.at("K").get<std::size_t>();
        r.p_max = j.at("p_max").get<double>();
        r.train_count = j.at("train_count").get<std::size_t>();
        r.test_count = j.at("test_count").get<std::size_t>();
        r.wmmse_test_sum_rate = j.at("wmmse_test_sum_rate").get<double>();
        r.config = train_config_from_json(j.at("train_config"));
        r.predicted_cfe = j.at("cfe").at("predicted").get<std::uint64_t>();
        for (const auto &s : j.at("seeds")) {
            SeedResult sr;
            sr.seed = s.at("seed").get<std::uint64_t>();
            const auto &f = s.at("final");
            sr.final_eval = {f.at("sum_rate").get<double>(), f.at("wmmse_sum_rate").get<double>(),
                             f.at("ratio").get<double>(), f.at("count").get<std::size_t>()};
            sr.cfe.forward = s.at("cfe").at("forward").get<std::uint64_t>();
            sr.cfe.gradient = s.at("cfe").at("gradient").get<std::uint64_t>();
            sr.eval_forward = s.at("eval_forward_cfe").get<std::uint64_t>();
            for (const auto &e : s.at("curve")) {
                sr.curve.push_back({e.at("epoch").get<std::size_t>(), e.at("train_sum_rate").get<double>(),
                                    detail::null_or_num(e.at("test_sum_rate")), detail::null_or_num(e.at("ratio"))});
            }
            r.seeds.push_back(std::move(sr));
        }
    } catch (const io::json::exception &e) {
        throw DataError(std::string("malformed report: ") + e.what());
    }
    return r;
}

inline std::string fmt(double v) {
    if (!std::isfinite(v)) {
        return "";
    }
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

/// Columns: seed, epoch, train_sr, test_sr, ratio. Exactly T rows per seed.
inline std::string curves_csv(const TrainReport &r) {
    std::ostringstream os;
    os << "seed,epoch,train_sr,test_sr,ratio\n";
    for (const auto &s : r.seeds) {
        for (const auto &e : s.curve) {
            os << s.seed << ',' << e.epoch << ',' << fmt(e.train_sum_rate) << ',' << fmt(e.test_sum_rate) << ','
               << fmt(e.ratio) << '\n';
        }
    }
    return os.str();
}

} // namespace sqm::train
