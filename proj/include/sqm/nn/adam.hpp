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
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sqm/errors.hpp"

namespace sqm::nn {

struct AdamConfig {
    double learning_rate{1e-3};
    double beta1{0.9};
    double beta2{0.999};
    double epsilon{1e-8};
};

/// Adam with bias correction over a flat parameter vector.
class AdamState {
  public:
    AdamState() = default;
    AdamState(std::size_t n_params, AdamConfig cfg)
        : cfg_{cfg}, m_(n_params, 0.0), v_(n_params, 0.0) {}

    void step(std::span<double> params, std::span<const double> grads) {
        if (params.size() != m_.size() || grads.size() != m_.size()) {
            throw ContractError("adam: expected " + std::to_string(m_.size()) +
                                " params/grads, got " + std::to_string(params.size()) + "/" +
                                std::to_string(grads.size()));
        }
        ++t_;
        const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
        const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
        for (std::size_t i = 0; i < params.size(); ++i) {
            m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * grads[i];
            v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * grads[i] * grads[i];
            const double m_hat = m_[i] / bc1;
            const double v_hat = v_[i] / bc2;
            params[i] -= cfg_.learning_rate * m_hat / (std::sqrt(v_hat) + cfg_.epsilon);
        }
    }

    [[nodiscard]] std::uint64_t step_count() const noexcept { return t_; }
    [[nodiscard]] const AdamConfig &config() const noexcept { return cfg_; }
    [[nodiscard]] std::span<const double> first_moment() const noexcept { return m_; }
    [[nodiscard]] std::span<const double> second_moment() const noexcept { return v_; }

  private:
    AdamConfig cfg_{};
    std::vector<double> m_;
    std::vector<double> v_;
    std::uint64_t t_{0};
};

} // namespace sqm::nn
