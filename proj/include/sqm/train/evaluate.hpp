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
 * @file evaluate.hpp
 * Mean sum-rate of a policy on a dataset and its ratio to WMMSE on the
 * same realizations.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sqm/d2d/baselines.hpp"
#include "sqm/d2d/objective.hpp"
#include "sqm/errors.hpp"
#include "sqm/models/common.hpp"
#include "sqm/seeding.hpp"

namespace sqm::train {

/// Powers for graph `index` of the evaluated set.
using PowerFn = std::function<std::vector<double>(const models::PreparedGraph &, std::size_t index)>;

struct EvalResult {
    double sum_rate{0.0};       // mean over realizations, bps/Hz
    double wmmse_sum_rate{0.0}; // same realizations
    double ratio{0.0};          // percent
    std::size_t count{0};
};

/// Per-realization WMMSE(100) sum-rates; throws if any is not positive.
inline std::vector<double> wmmse_rates(std::span<const models::PreparedGraph> set, double p_max, double sigma2) {
    std::vector<double> r;
    r.reserve(set.size());
    for (const auto &g : set) {
        const auto p = d2d::wmmse(g.graph.gains(), p_max, sigma2);
        r.push_back(d2d::sum_rate(p, g.graph.gains(), sigma2));
        if (!(r.back() > 0.0)) {
            throw DataError("WMMSE reference rate is not positive");
        }
    }
    return r;
}

inline double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

/// Sample standard deviation (n-1); zero for fewer than two values.
inline double sample_std(std::span<const double> v) {
    if (v.size() < 2) {
        return 0.0;
    }
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) {
        s += (x - m) * (x - m);
    }
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

/// `wmmse_reference` may carry precomputed per-realization WMMSE rates.
inline EvalResult evaluate(const PowerFn &policy, std::span<const models::PreparedGraph> set, double p_max,
                           double sigma2, std::span<const double> wmmse_reference = {}) {
    if (set.empty()) {
        throw ContractError("cannot evaluate on an empty dataset");
    }
    std::vector<double> ref;
    if (wmmse_reference.empty()) {
        ref = wmmse_rates(set, p_max, sigma2);
        wmmse_reference = ref;
    } else if (wmmse_reference.size() != set.size()) {
        throw ContractError("WMMSE reference size mismatch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto p = policy(set[i], i);
        total += d2d::sum_rate(p, set[i].graph.gains(), sigma2);
    }
    EvalResult r;
    r.count = set.size();
    r.sum_rate = total / static_cast<double>(set.size());
    r.wmmse_sum_rate = mean(wmmse_reference);
    r.ratio = 100.0 * r.sum_rate / r.wmmse_sum_rate;
    return r;
}

/// Seed of evaluation sample i under evaluation seed s.
inline std::uint64_t eval_sample_seed(std::uint64_t eval_seed, std::size_t i) {
    return derive_seed({eval_seed, 0xE7A1ULL, static_cast<std::uint64_t>(i)});
}

} // namespace sqm::train
