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
 * @file baselines.hpp
 * Reference power-control policies: scalar-channel WMMSE, full power, and
 * i.i.d. uniform random power.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "sqm/d2d/objective.hpp"
#include "sqm/errors.hpp"

namespace sqm::d2d {

inline constexpr std::size_t kWmmseIterations = 100;

/**
 * WMMSE for single-antenna interference channels, started at full power
 * with a fixed iteration count. If `trace` is given, the sum-rate after each
 * iteration is appended to it.
 */
inline std::vector<double> wmmse(std::span<const double> H, double p_max, double sigma2,
                                 std::size_t iters = kWmmseIterations,
                                 std::vector<double> *trace = nullptr) {
    const std::size_t K = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(H.size()))));
    if (K * K != H.size() || K == 0) {
        throw ContractError("wmmse: gain matrix must be square and non-empty");
    }
    if (!(p_max > 0.0) || !(sigma2 > 0.0)) {
        throw ContractError("wmmse: p_max and sigma2 must be positive");
    }
    const double v_max = std::sqrt(p_max);
    std::vector<double> v(K, v_max), u(K), w(K), sq(K);
    for (std::size_t k = 0; k < K; ++k) {
        sq[k] = std::sqrt(H[k * K + k]);
    }
    std::vector<double> p(K);
    for (std::size_t it = 0; it < iters; ++it) {
        for (std::size_t k = 0; k < K; ++k) {
            double rx = sigma2;
            for (std::size_t j = 0; j < K; ++j) {
                rx += H[j * K + k] * v[j] * v[j];
            }
            u[k] = sq[k] * v[k] / rx;
            w[k] = 1.0 / (1.0 - u[k] * sq[k] * v[k]);
        }
        for (std::size_t k = 0; k < K; ++k) {
            double denom = 0.0;
            for (std::size_t j = 0; j < K; ++j) {
                denom += H[k * K + j] * u[j] * u[j] * w[j];
            }
            v[k] = std::clamp(w[k] * u[k] * sq[k] / denom, 0.0, v_max);
        }
        if (trace != nullptr) {
            for (std::size_t k = 0; k < K; ++k) {
                p[k] = v[k] * v[k];
            }
            trace->push_back(sum_rate(p, H, sigma2));
        }
    }
    for (std::size_t k = 0; k < K; ++k) {
        p[k] = v[k] * v[k];
    }
    return p;
}

inline std::vector<double> max_power(std::size_t K, double p_max) { return std::vector<double>(K, p_max); }

template <class Rng> std::vector<double> random_power(std::size_t K, double p_max, Rng &rng) {
    std::uniform_real_distribution<double> u(0.0, p_max);
    std::vector<double> p(K);
    for (auto &x : p) {
        x = u(rng);
    }
    return p;
}

} // namespace sqm::d2d
