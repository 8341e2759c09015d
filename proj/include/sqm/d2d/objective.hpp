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
 * @file objective.hpp
 * Sum-rate of the K-pair interference channel and its negation as a
 * training loss.
 *
 *   R(p) = sum_k log2(1 + p_k h_kk / (sum_{j != k} p_j h_jk + sigma2))
 */
#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "sqm/errors.hpp"

namespace sqm::d2d {

namespace detail {
inline void check_inputs(std::span<const double> p, std::span<const double> H, double sigma2) {
    const std::size_t K = p.size();
    if (H.size() != K * K) {
        throw ContractError("gain matrix must be K x K for K = " + std::to_string(K));
    }
    if (!(sigma2 > 0.0)) {
        throw ContractError("noise power must be positive");
    }
    for (std::size_t k = 0; k < K; ++k) {
        if (!(p[k] >= 0.0)) {
            throw ContractError("negative transmit power at index " + std::to_string(k));
        }
    }
}
} // namespace detail

/// Bits/s/Hz. H[j*K+k] is the gain from transmitter j to receiver k.
inline double sum_rate(std::span<const double> p, std::span<const double> H, double sigma2) {
    detail::check_inputs(p, H, sigma2);
    const std::size_t K = p.size();
    double rate = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        double interference = 0.0;
        for (std::size_t j = 0; j < K; ++j) {
            if (j != k) {
                interference += p[j] * H[j * K + k];
            }
        }
        rate += std::log2(1.0 + p[k] * H[k * K + k] / (interference + sigma2));
    }
    return rate;
}

inline double loss(std::span<const double> p, std::span<const double> H, double sigma2) {
    return -sum_rate(p, H, sigma2);
}

/// Closed-form d loss / d p.
inline std::vector<double> loss_gradient(std::span<const double> p, std::span<const double> H,
                                         double sigma2) {
    detail::check_inputs(p, H, sigma2);
    const std::size_t K = p.size();
    std::vector<double> total(K);
    std::vector<double> noise_plus_int(K);
    for (std::size_t k = 0; k < K; ++k) {
        double all = sigma2;
        for (std::size_t j = 0; j < K; ++j) {
            all += p[j] * H[j * K + k];
        }
        total[k] = all;
        noise_plus_int[k] = all - p[k] * H[k * K + k];
    }
    std::vector<double> g(K, 0.0);
    const double inv_ln2 = 1.0 / std::numbers::ln2;
    for (std::size_t m = 0; m < K; ++m) {
        double d = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            const double h = H[m * K + k];
            d += h / total[k];
            if (m != k) {
                d -= h / noise_plus_int[k];
            }
        }
        g[m] = -inv_ln2 * d;
    }
    return g;
}

} // namespace sqm::d2d
