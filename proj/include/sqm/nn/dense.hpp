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
 * @file dense.hpp
 * Feed-forward dense network over a flat parameter vector.
 *
 * Flat layout, per layer in order: W (d_out x d_in, column-major) then b
 * (d_out). Inputs are batched column-wise: X is d_in x n_samples.
 */
#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sqm/errors.hpp"

namespace sqm::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Activation { identity, relu, sigmoid };

inline std::string_view activation_name(Activation a) {
    switch (a) {
    case Activation::identity:
        return "identity";
    case Activation::relu:
        return "relu";
    case Activation::sigmoid:
        return "sigmoid";
    }
    return "?";
}

inline Activation parse_activation(std::string_view s) {
    if (s == "identity") {
        return Activation::identity;
    }
    if (s == "relu") {
        return Activation::relu;
    }
    if (s == "sigmoid") {
        return Activation::sigmoid;
    }
    throw DataError("unknown activation '" + std::string(s) + "'");
}

/// Closed-form trainable scalar count: sum over layers of d_in*d_out + d_out.
inline std::size_t param_count(std::span<const std::size_t> dims) {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        n += dims[l] * dims[l + 1] + dims[l + 1];
    }
    return n;
}

/// Cached activations from one forward pass.
struct DenseTape {
    std::uint64_t stamp{0}; // parameter generation the tape was taken at
    std::vector<Matrix> inputs;  // input to each layer
    std::vector<Matrix> outputs; // post-activation output of each layer
};

class DenseNet {
  public:
    DenseNet() = default;

    DenseNet(std::vector<std::size_t> layer_dims, std::vector<Activation> activations)
        : dims_{std::move(layer_dims)}, acts_{std::move(activations)} {
        if (dims_.size() < 2) {
            throw ContractError("dense net needs at least input and output dims");
        }
        if (acts_.size() != dims_.size() - 1) {
            throw ContractError("one activation per layer required");
        }
        for (auto d : dims_) {
            if (d == 0) {
                throw ContractError("layer dims must be positive");
            }
        }
        params_.assign(param_count(dims_), 0.0);
        touch();
    }

    /// Weights uniform in +-sqrt(6/(d_in+d_out)), biases zero.
    template <class Rng> void init_glorot(Rng &rng) {
        std::size_t off = 0;
        for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
            const double lim = std::sqrt(6.0 / static_cast<double>(dims_[l] + dims_[l + 1]));
            std::uniform_real_distribution<double> u(-lim, lim);
            const std::size_t nw = dims_[l] * dims_[l + 1];
            for (std::size_t i = 0; i < nw; ++i) {
                params_[off + i] = u(rng);
            }
            off += nw;
            for (std::size_t i = 0; i < dims_[l + 1]; ++i) {
                params_[off + i] = 0.0;
            }
            off += dims_[l + 1];
        }
        touch();
    }

    [[nodiscard]] std::size_t num_layers() const noexcept { return acts_.size(); }
    [[nodiscard]] std::size_t input_dim() const { return dims_.front(); }
    [[nodiscard]] std::size_t output_dim() const { return dims_.back(); }
    [[nodiscard]] const std::vector<std::size_t> &layer_dims() const noexcept { return dims_; }
    [[nodiscard]] const std::vector<Activation> &activations() const noexcept { return acts_; }
    [[nodiscard]] std::size_t num_params() const noexcept { return params_.size(); }
    [[nodiscard]] std::span<const double> params() const noexcept { return params_; }

    /// Mutable parameter access bumps the version, invalidating older tapes.
    [[nodiscard]] std::span<double> mutable_params() noexcept {
        touch();
        return params_;
    }

    void set_params(std::span<const double> p) {
        if (p.size() != params_.size()) {
            throw ContractError("parameter count mismatch: expected " +
                                std::to_string(params_.size()) + ", got " +
                                std::to_string(p.size()));
        }
        params_.assign(p.begin(), p.end());
        touch();
    }

    [[nodiscard]] Eigen::Map<const Matrix> weight(std::size_t l) const {
        return {params_.data() + offset(l), static_cast<Eigen::Index>(dims_[l + 1]),
                static_cast<Eigen::Index>(dims_[l])};
    }
    [[nodiscard]] Eigen::Map<const Vector> bias(std::size_t l) const {
        return {params_.data() + offset(l) + dims_[l] * dims_[l + 1],
                static_cast<Eigen::Index>(dims_[l + 1])};
    }

    /// Batched forward pass; fills `tape` for a later backward call.
    Matrix forward(const Matrix &x, DenseTape &tape) const {
        if (static_cast<std::size_t>(x.rows()) != dims_.front()) {
            throw ContractError("dense input has " + std::to_string(x.rows()) +
                                " rows, expected " + std::to_string(dims_.front()));
        }
        tape.stamp = stamp_;
        tape.inputs.resize(num_layers());
        tape.outputs.resize(num_layers());
        Matrix cur = x;
        for (std::size_t l = 0; l < num_layers(); ++l) {
            tape.inputs[l] = cur;
            Matrix z = weight(l) * cur;
            z.colwise() += bias(l);
            activate(acts_[l], z);
            tape.outputs[l] = z;
            cur = std::move(z);
        }
        return cur;
    }

    [[nodiscard]] Matrix forward(const Matrix &x) const {
        DenseTape tape;
        return forward(x, tape);
    }

    [[nodiscard]] Vector forward(const Vector &x) const {
        return forward(Matrix(x)).col(0);
    }

    /**
     * Reverse pass. Accumulates (adds) parameter gradients into `grad` (flat
     * layout, same length as params) and returns dL/dX.
     */
    Matrix backward(const DenseTape &tape, const Matrix &dy, std::span<double> grad) const {
        if (tape.stamp != stamp_ ||
            tape.inputs.size() != num_layers()) {
            throw ContractError("stale or foreign dense tape");
        }
        if (grad.size() != params_.size()) {
            throw ContractError("gradient buffer has wrong length");
        }
        if (dy.rows() != tape.outputs.back().rows() || dy.cols() != tape.outputs.back().cols()) {
            throw ContractError("upstream gradient shape mismatch");
        }
        Matrix delta = dy;
        for (std::size_t l = num_layers(); l-- > 0;) {
            activation_backward(acts_[l], tape.outputs[l], delta);
            const std::size_t off = offset(l);
            Eigen::Map<Matrix> gw(grad.data() + off, static_cast<Eigen::Index>(dims_[l + 1]),
                                  static_cast<Eigen::Index>(dims_[l]));
            Eigen::Map<Vector> gb(grad.data() + off + dims_[l] * dims_[l + 1],
                                  static_cast<Eigen::Index>(dims_[l + 1]));
            gw.noalias() += delta * tape.inputs[l].transpose();
            gb += delta.rowwise().sum();
            delta = weight(l).transpose() * delta;
        }
        return delta;
    }

  private:
    // Every parameter mutation draws a fresh process-wide stamp.
    void touch() noexcept {
        static std::atomic<std::uint64_t> generation{0};
        stamp_ = ++generation;
    }

    [[nodiscard]] std::size_t offset(std::size_t l) const {
        std::size_t off = 0;
        for (std::size_t i = 0; i < l; ++i) {
            off += dims_[i] * dims_[i + 1] + dims_[i + 1];
        }
        return off;
    }

    static void activate(Activation a, Matrix &z) {
        switch (a) {
        case Activation::identity:
            break;
        case Activation::relu:
            z = z.cwiseMax(0.0);
            break;
        case Activation::sigmoid:
            z = z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
            break;
        }
    }

    // `out` is the post-activation value.
    static void activation_backward(Activation a, const Matrix &out, Matrix &delta) {
        switch (a) {
        case Activation::identity:
            break;
        case Activation::relu:
            delta = (out.array() > 0.0).select(delta, 0.0);
            break;
        case Activation::sigmoid:
            delta = delta.cwiseProduct(out.cwiseProduct((1.0 - out.array()).matrix()));
            break;
        }
    }

    std::vector<std::size_t> dims_;
    std::vector<Activation> acts_;
    std::vector<double> params_;
    std::uint64_t stamp_{0};
};

} // namespace sqm::nn
