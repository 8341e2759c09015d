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
 * @file qgcl.hpp
 * Quantum graph convolution layer on a k-slot star subgraph.
 *
 * Register layout (2k+1 qubits): center on qubit 0, neighbour of slot j on
 * qubit 1+j, edge of slot j on qubit k+1+j.
 *
 * Circuit, in execution order:
 *   1. RY encoding of the center, every neighbour and every edge angle;
 *   2. per slot, D_msg repetitions of
 *        RZ RY RZ (neighbour), RZ RY RZ (edge), CX(edge -> neighbour)
 *      with angles shared across slots;
 *   3. per slot, CRX(upd; control neighbour, target center);
 *   4. RZ RY RZ on the center.
 *
 * The CRX gates share target and axis, so they commute and the layer output
 * does not depend on slot order. Only the Z-basis populations of the
 * neighbour qubits reach the center, so the two RZ angles of the last
 * message block (neighbour RZ before the CX target, edge RZ on the CX
 * control) always have zero gradient.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sqm/cfe.hpp"
#include "sqm/errors.hpp"
#include "sqm/graph/wireless_graph.hpp"
#include "sqm/qsim/circuit.hpp"
#include "sqm/qsim/gradients.hpp"
#include "sqm/seeding.hpp"

namespace sqm::qgcl {

using Bloch = std::array<double, 3>; // (<X>, <Y>, <Z>)

/// Flat layout: msg[6*depth] (block d: nbr RZ,RY,RZ then edge RZ,RY,RZ),
/// upd, post[3].
struct QgclParams {
    std::size_t depth{2};
    std::vector<double> msg;
    double upd{0.0};
    std::array<double, 3> post{};

    static constexpr std::size_t count(std::size_t depth) { return 6 * depth + 4; }

    explicit QgclParams(std::size_t d = 2) : depth{d}, msg(6 * d, 0.0) {}

    static QgclParams from_flat(std::span<const double> flat, std::size_t depth) {
        if (flat.size() != count(depth)) {
            throw ContractError("QGCL expects " + std::to_string(count(depth)) +
                                " parameters, got " + std::to_string(flat.size()));
        }
        QgclParams p(depth);
        std::copy_n(flat.begin(), 6 * depth, p.msg.begin());
        p.upd = flat[6 * depth];
        for (std::size_t i = 0; i < 3; ++i) {
            p.post[i] = flat[6 * depth + 1 + i];
        }
        return p;
    }

    [[nodiscard]] std::vector<double> flat() const {
        std::vector<double> out(msg);
        out.push_back(upd);
        out.insert(out.end(), post.begin(), post.end());
        return out;
    }
};

struct QubitLayout {
    std::size_t k;
    [[nodiscard]] static constexpr std::size_t center() noexcept { return 0; }
    [[nodiscard]] constexpr std::size_t neighbor(std::size_t slot) const noexcept { return 1 + slot; }
    [[nodiscard]] constexpr std::size_t edge(std::size_t slot) const noexcept { return k + 1 + slot; }
    [[nodiscard]] constexpr std::size_t total() const noexcept { return 2 * k + 1; }
};

/// Slot indices of the full circuit: trainable QGCL parameters first (flat
/// order), then input encodings: center, neighbours 0..k-1, edges 0..k-1.
struct SlotMap {
    std::size_t k;
    std::size_t depth;
    [[nodiscard]] std::size_t n_trainable() const noexcept { return QgclParams::count(depth); }
    [[nodiscard]] std::size_t center() const noexcept { return n_trainable(); }
    [[nodiscard]] std::size_t neighbor(std::size_t j) const noexcept { return n_trainable() + 1 + j; }
    [[nodiscard]] std::size_t edge(std::size_t j) const noexcept { return n_trainable() + 1 + k + j; }
    [[nodiscard]] std::size_t total() const noexcept { return n_trainable() + 1 + 2 * k; }
};

/// Parameter-free circuit structure for a given (k, depth).
inline qsim::Circuit qgcl_circuit_template(std::size_t k, std::size_t depth) {
    using namespace qsim;
    if (k == 0) {
        throw ContractError("QGCL needs k >= 1");
    }
    const QubitLayout q{k};
    const SlotMap s{k, depth};
    Circuit c(q.total());
    for (std::size_t i = 0; i < s.n_trainable(); ++i) {
        c.add_slot(SlotRole::trainable);
    }
    for (std::size_t i = 0; i < 1 + 2 * k; ++i) {
        c.add_slot(SlotRole::input_encoding);
    }
    c.add(GateOp::ry(q.center(), Slot{s.center()}));
    for (std::size_t j = 0; j < k; ++j) {
        c.add(GateOp::ry(q.neighbor(j), Slot{s.neighbor(j)}));
        c.add(GateOp::ry(q.edge(j), Slot{s.edge(j)}));
    }
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t d = 0; d < depth; ++d) {
            const std::size_t b = 6 * d;
            c.add(GateOp::rz(q.neighbor(j), Slot{b + 0}));
            c.add(GateOp::ry(q.neighbor(j), Slot{b + 1}));
            c.add(GateOp::rz(q.neighbor(j), Slot{b + 2}));
            c.add(GateOp::rz(q.edge(j), Slot{b + 3}));
            c.add(GateOp::ry(q.edge(j), Slot{b + 4}));
            c.add(GateOp::rz(q.edge(j), Slot{b + 5}));
            c.add(GateOp::cx(q.edge(j), q.neighbor(j)));
        }
    }
    const std::size_t upd = 6 * depth;
    for (std::size_t j = 0; j < k; ++j) {
        c.add(GateOp::crx(q.neighbor(j), q.center(), Slot{upd}));
    }
    c.add(GateOp::rz(q.center(), Slot{upd + 1}));
    c.add(GateOp::ry(q.center(), Slot{upd + 2}));
    c.add(GateOp::rz(q.center(), Slot{upd + 3}));
    return c;
}

/// Slot values for the template: trainable parameters then encodings.
inline std::vector<double> assemble_slots(const graph::StarSubgraph &sub,
                                          std::span<const double> params_flat) {
    std::vector<double> v(params_flat.begin(), params_flat.end());
    v.push_back(sub.center_angle);
    for (const auto &s : sub.slots) {
        v.push_back(s.node_angle);
    }
    for (const auto &s : sub.slots) {
        v.push_back(s.edge_angle);
    }
    return v;
}

struct QgclCircuit {
    qsim::Circuit circuit;
    std::vector<double> slot_values;
};

inline QgclCircuit build_qgcl_circuit(const graph::StarSubgraph &sub, const QgclParams &params) {
    return {qgcl_circuit_template(sub.k(), params.depth), assemble_slots(sub, params.flat())};
}

enum class Backend {
    statevector, // full 2k+1 qubit simulation
    factorized   // exact reduction exploiting the product structure before U^UPD
};

enum class GradEngine { adjoint, parameter_shift };

/// Which encoding-angle gradients a backward call must produce. Layer-1
/// encodings come straight from data and need none; deeper layers need the
/// center and neighbour angles to reach the previous layer.
enum class InputGrads { none, nodes, all };

struct EncodingGrads {
    double center{0.0};
    std::vector<double> node; // per slot
    std::vector<double> edge; // per slot
};

struct QgclGrads {
    std::vector<double> params; // QgclParams flat layout
    EncodingGrads inputs;
};

/// arccos with the argument clamped to [-1+eps, 1-eps].
inline constexpr double kReencodeEps = 1e-6;

inline double reencode(double h) {
    return std::acos(std::clamp(h, -1.0 + kReencodeEps, 1.0 - kReencodeEps));
}

/// d reencode / dh; zero where the clamp is active.
inline double reencode_derivative(double h) {
    if (h <= -1.0 + kReencodeEps || h >= 1.0 - kReencodeEps) {
        return 0.0;
    }
    return -1.0 / std::sqrt(1.0 - h * h);
}

namespace detail {

using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 rot(qsim::Pauli axis, double a) {
    const double c = std::cos(a);
    const double s = std::sin(a);
    switch (axis) {
    case qsim::Pauli::X:
        return {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
    case qsim::Pauli::Y:
        return {{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}};
    case qsim::Pauli::Z:
        return {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
    }
    return {};
}

/// d rot(axis, a) / da
inline Mat3 drot(qsim::Pauli axis, double a) {
    const double c = std::cos(a);
    const double s = std::sin(a);
    switch (axis) {
    case qsim::Pauli::X:
        return {{{0, 0, 0}, {0, -s, -c}, {0, c, -s}}};
    case qsim::Pauli::Y:
        return {{{-s, 0, c}, {0, 0, 0}, {-c, 0, -s}}};
    case qsim::Pauli::Z:
        return {{{-s, -c, 0}, {c, -s, 0}, {0, 0, 0}}};
    }
    return {};
}

inline Bloch mul(const Mat3 &m, const Bloch &v) {
    Bloch out{};
    for (int i = 0; i < 3; ++i) {
        out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    }
    return out;
}

inline Bloch mul_t(const Mat3 &m, const Bloch &v) {
    Bloch out{};
    for (int i = 0; i < 3; ++i) {
        out[i] = m[0][i] * v[0] + m[1][i] * v[1] + m[2][i] * v[2];
    }
    return out;
}

inline double dot(const Bloch &a, const Bloch &b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Distribution of the number of successes among independent Bernoulli(p_j),
/// optionally leaving one index out.
inline std::vector<double> poisson_binomial(std::span<const double> p,
                                            std::size_t skip = static_cast<std::size_t>(-1)) {
    std::vector<double> dist{1.0};
    dist.reserve(p.size() + 1);
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (j == skip) {
            continue;
        }
        dist.push_back(0.0);
        for (std::size_t m = dist.size() - 1; m > 0; --m) {
            dist[m] = dist[m] * (1.0 - p[j]) + dist[m - 1] * p[j];
        }
        dist[0] *= (1.0 - p[j]);
    }
    return dist;
}

/// Two-qubit circuit of one neighbour/edge pair: qubit 0 neighbour, qubit 1
/// edge. Slots: msg[6*depth], neighbour angle, edge angle.
inline qsim::Circuit pair_circuit_template(std::size_t depth) {
    using namespace qsim;
    Circuit c(2);
    for (std::size_t i = 0; i < 6 * depth; ++i) {
        c.add_slot(SlotRole::trainable);
    }
    const Slot alpha = c.add_slot(SlotRole::input_encoding);
    const Slot beta = c.add_slot(SlotRole::input_encoding);
    c.add(GateOp::ry(0, alpha)).add(GateOp::ry(1, beta));
    for (std::size_t d = 0; d < depth; ++d) {
        const std::size_t b = 6 * d;
        c.add(GateOp::rz(0, Slot{b})).add(GateOp::ry(0, Slot{b + 1})).add(GateOp::rz(0, Slot{b + 2}));
        c.add(GateOp::rz(1, Slot{b + 3})).add(GateOp::ry(1, Slot{b + 4})).add(GateOp::rz(1, Slot{b + 5}));
        c.add(GateOp::cx(1, 0));
    }
    return c;
}

} // namespace detail

/**
 * Evaluates one QGCL circuit (forward Bloch vector of the center qubit and
 * reverse-mode gradients). Both backends compute the same circuit exactly;
 * `factorized` uses that before U^UPD the state is a product of the center
 * qubit and k independent two-qubit pair states, and that the CRX gates act
 * on the center as RX(upd * m) where m counts neighbour qubits in |1>.
 */
class QgclEvaluator {
  public:
    QgclEvaluator(std::size_t k, std::size_t depth, Backend backend = Backend::factorized,
                  GradEngine engine = GradEngine::adjoint)
        : k_{k}, depth_{depth}, backend_{backend}, engine_{engine},
          full_{qgcl_circuit_template(k, depth)}, pair_{detail::pair_circuit_template(depth)} {}

    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] std::size_t depth() const noexcept { return depth_; }
    [[nodiscard]] Backend backend() const noexcept { return backend_; }
    [[nodiscard]] GradEngine engine() const noexcept { return engine_; }
    [[nodiscard]] const qsim::Circuit &circuit() const noexcept { return full_; }
    [[nodiscard]] std::size_t num_params() const noexcept { return QgclParams::count(depth_); }

    /// Bloch vector of the center qubit after the full circuit.
    [[nodiscard]] Bloch bloch(const graph::StarSubgraph &sub, std::span<const double> params) const {
        check(sub, params);
        if (backend_ == Backend::statevector) {
            const auto state = qsim::run(full_, assemble_slots(sub, params));
            return {qsim::expectation(state, {qsim::Pauli::X, 0}),
                    qsim::expectation(state, {qsim::Pauli::Y, 0}),
                    qsim::expectation(state, {qsim::Pauli::Z, 0})};
        }
        return factorized_forward(sub, params).out;
    }

    [[nodiscard]] double center_z(const graph::StarSubgraph &sub, std::span<const double> params) const {
        return bloch(sub, params)[2];
    }

    /**
     * Gradient of upstream . Bloch with respect to the QGCL parameters and
     * the encoding angles selected by `input_grads` (the rest are zero).
     */
    [[nodiscard]] QgclGrads backward(const graph::StarSubgraph &sub, std::span<const double> params,
                                     const Bloch &upstream,
                                     InputGrads input_grads = InputGrads::all) const {
        check(sub, params);
        if (backend_ == Backend::statevector) {
            return statevector_backward(sub, params, upstream, input_grads);
        }
        return factorized_backward(sub, params, upstream, input_grads);
    }

    /// Logical circuit executions charged for one backward call.
    [[nodiscard]] std::uint64_t gradient_cfe(InputGrads input_grads) const {
        if (engine_ == GradEngine::adjoint) {
            return 1;
        }
        return qsim::shift_evaluations(full_, shifted_slots(input_grads));
    }

  private:
    struct FactorizedForward {
        std::vector<double> p; // P(neighbour j in |1>) after U^MSG
        std::vector<double> dist;
        Bloch r0{};
        Bloch r1{};
        Bloch a{};
        Bloch b{};
        Bloch out{};
    };

    void check(const graph::StarSubgraph &sub, std::span<const double> params) const {
        if (sub.k() != k_) {
            throw ContractError("subgraph has " + std::to_string(sub.k()) + " slots, layer expects " +
                                std::to_string(k_));
        }
        if (params.size() != num_params()) {
            throw ContractError("QGCL expects " + std::to_string(num_params()) + " parameters");
        }
    }

    [[nodiscard]] std::vector<std::size_t> shifted_slots(InputGrads input_grads) const {
        const SlotMap s{k_, depth_};
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < s.n_trainable(); ++i) {
            out.push_back(i);
        }
        if (input_grads != InputGrads::none) {
            out.push_back(s.center());
            for (std::size_t j = 0; j < k_; ++j) {
                out.push_back(s.neighbor(j));
            }
        }
        if (input_grads == InputGrads::all) {
            for (std::size_t j = 0; j < k_; ++j) {
                out.push_back(s.edge(j));
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<double> pair_slots(const graph::StarSlot &slot,
                                                 std::span<const double> params) const {
        std::vector<double> v(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(6 * depth_));
        v.push_back(slot.node_angle);
        v.push_back(slot.edge_angle);
        return v;
    }

    [[nodiscard]] FactorizedForward factorized_forward(const graph::StarSubgraph &sub,
                                                       std::span<const double> params) const {
        using qsim::Pauli;
        FactorizedForward f;
        f.p.resize(k_);
        for (std::size_t j = 0; j < k_; ++j) {
            const auto state = qsim::run(pair_, pair_slots(sub.slots[j], params));
            f.p[j] = 0.5 * (1.0 - qsim::expectation(state, {Pauli::Z, 0}));
        }
        f.dist = detail::poisson_binomial(f.p);
        const double upd = params[6 * depth_];
        f.r0 = {std::sin(sub.center_angle), 0.0, std::cos(sub.center_angle)};
        f.r1 = {0.0, 0.0, 0.0};
        for (std::size_t m = 0; m < f.dist.size(); ++m) {
            const Bloch v = detail::mul(detail::rot(Pauli::X, upd * static_cast<double>(m)), f.r0);
            for (int i = 0; i < 3; ++i) {
                f.r1[i] += f.dist[m] * v[i];
            }
        }
        const double *post = params.data() + 6 * depth_ + 1;
        f.a = detail::mul(detail::rot(Pauli::Z, post[0]), f.r1);
        f.b = detail::mul(detail::rot(Pauli::Y, post[1]), f.a);
        f.out = detail::mul(detail::rot(Pauli::Z, post[2]), f.b);
        return f;
    }

    [[nodiscard]] QgclGrads factorized_backward(const graph::StarSubgraph &sub,
                                                std::span<const double> params, const Bloch &g,
                                                InputGrads input_grads) const {
        using qsim::Pauli;
        using namespace detail;
        const FactorizedForward f = factorized_forward(sub, params);
        QgclGrads out;
        out.params.assign(num_params(), 0.0);
        out.inputs.node.assign(k_, 0.0);
        out.inputs.edge.assign(k_, 0.0);
        const std::size_t iu = 6 * depth_;
        const double upd = params[iu];
        const double *post = params.data() + iu + 1;

        out.params[iu + 3] = dot(g, mul(drot(Pauli::Z, post[2]), f.b));
        const Bloch gb = mul_t(rot(Pauli::Z, post[2]), g);
        out.params[iu + 2] = dot(gb, mul(drot(Pauli::Y, post[1]), f.a));
        const Bloch ga = mul_t(rot(Pauli::Y, post[1]), gb);
        out.params[iu + 1] = dot(ga, mul(drot(Pauli::Z, post[0]), f.r1));
        const Bloch g1 = mul_t(rot(Pauli::Z, post[0]), ga);

        std::vector<double> d_dist(f.dist.size(), 0.0);
        Bloch g_r0{0.0, 0.0, 0.0};
        double d_upd = 0.0;
        for (std::size_t m = 0; m < f.dist.size(); ++m) {
            const double mm = static_cast<double>(m);
            const Mat3 R = rot(Pauli::X, upd * mm);
            d_dist[m] = dot(g1, mul(R, f.r0));
            d_upd += f.dist[m] * mm * dot(g1, mul(drot(Pauli::X, upd * mm), f.r0));
            const Bloch back = mul_t(R, g1);
            for (int i = 0; i < 3; ++i) {
                g_r0[i] += f.dist[m] * back[i];
            }
        }
        out.params[iu] = d_upd;
        out.inputs.center =
            g_r0[0] * std::cos(sub.center_angle) - g_r0[2] * std::sin(sub.center_angle);

        const std::size_t n_msg = 6 * depth_;
        for (std::size_t j = 0; j < k_; ++j) {
            const auto rest = poisson_binomial(f.p, j);
            double d_p = 0.0;
            for (std::size_t m = 0; m < f.dist.size(); ++m) {
                const double with = (m >= 1 && m - 1 < rest.size()) ? rest[m - 1] : 0.0;
                const double without = m < rest.size() ? rest[m] : 0.0;
                d_p += d_dist[m] * (with - without);
            }
            // p = (1 - <Z>)/2
            const qsim::Hamiltonian obs{{-0.5 * d_p, {Pauli::Z, 0}}};
            const auto slots = pair_slots(sub.slots[j], params);
            std::vector<double> pg;
            if (engine_ == GradEngine::adjoint) {
                pg = qsim::grad_adjoint(pair_, slots, obs);
            } else {
                std::vector<std::size_t> which(n_msg + 2);
                for (std::size_t i = 0; i < which.size(); ++i) {
                    which[i] = i;
                }
                pg = qsim::grad_parameter_shift(pair_, slots, obs, which);
            }
            for (std::size_t i = 0; i < n_msg; ++i) {
                out.params[i] += pg[i];
            }
            out.inputs.node[j] = pg[n_msg];
            out.inputs.edge[j] = pg[n_msg + 1];
        }
        if (input_grads != InputGrads::all) {
            std::fill(out.inputs.edge.begin(), out.inputs.edge.end(), 0.0);
        }
        if (input_grads == InputGrads::none) {
            out.inputs.center = 0.0;
            std::fill(out.inputs.node.begin(), out.inputs.node.end(), 0.0);
        }
        return out;
    }

    [[nodiscard]] QgclGrads statevector_backward(const graph::StarSubgraph &sub,
                                                 std::span<const double> params, const Bloch &g,
                                                 InputGrads input_grads) const {
        using qsim::Pauli;
        const qsim::Hamiltonian obs{{g[0], {Pauli::X, 0}}, {g[1], {Pauli::Y, 0}}, {g[2], {Pauli::Z, 0}}};
        const auto slots = assemble_slots(sub, params);
        const SlotMap s{k_, depth_};
        std::vector<double> all(s.total(), 0.0);
        if (engine_ == GradEngine::adjoint) {
            all = qsim::grad_adjoint(full_, slots, obs);
        } else {
            const auto which = shifted_slots(input_grads);
            const auto partial = qsim::grad_parameter_shift(full_, slots, obs, which);
            for (std::size_t i = 0; i < which.size(); ++i) {
                all[which[i]] = partial[i];
            }
        }
        QgclGrads out;
        out.params.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(s.n_trainable()));
        out.inputs.node.assign(k_, 0.0);
        out.inputs.edge.assign(k_, 0.0);
        if (input_grads != InputGrads::none) {
            out.inputs.center = all[s.center()];
            for (std::size_t j = 0; j < k_; ++j) {
                out.inputs.node[j] = all[s.neighbor(j)];
            }
        }
        if (input_grads == InputGrads::all) {
            for (std::size_t j = 0; j < k_; ++j) {
                out.inputs.edge[j] = all[s.edge(j)];
            }
        }
        return out;
    }

    std::size_t k_;
    std::size_t depth_;
    Backend backend_;
    GradEngine engine_;
    qsim::Circuit full_;
    qsim::Circuit pair_;
};

/// One layer's sampled subgraphs and center-qubit readouts.
struct LayerResult {
    std::vector<graph::StarSubgraph> subgraphs;
    std::vector<Bloch> outputs;
};

/// Seed of the sampling stream for one (layer seed, node) pair.
inline std::uint64_t node_seed(std::uint64_t layer_seed, std::size_t node) {
    return derive_seed({layer_seed, static_cast<std::uint64_t>(node)});
}

/**
 * Run the layer for every node as center: sample its star, encode neighbour
 * angles from `embeddings_in`, execute, read out the center. Charges exactly
 * one forward CFE per node.
 */
inline LayerResult qgcl_layer(const graph::GraphFeatures &features,
                              std::span<const double> embeddings_in, std::span<const double> params,
                              const QgclEvaluator &eval, graph::SamplingMode mode,
                              std::uint64_t layer_seed, std::size_t layer_index,
                              CfeCounter *counter = nullptr) {
    if (embeddings_in.size() != features.K) {
        throw ContractError("one input angle per node required");
    }
    LayerResult res;
    res.subgraphs.reserve(features.K);
    res.outputs.reserve(features.K);
    for (std::size_t c = 0; c < features.K; ++c) {
        std::mt19937_64 rng(node_seed(layer_seed, c));
        res.subgraphs.push_back(
            graph::sample_star(features, embeddings_in, c, eval.k(), rng, mode, layer_index));
        res.outputs.push_back(eval.bloch(res.subgraphs.back(), params));
        if (counter != nullptr) {
            ++counter->forward;
        }
    }
    return res;
}

/// Per-node <Z> of the center qubit.
inline std::vector<double> qgcl_forward(const graph::GraphFeatures &features,
                                        std::span<const double> embeddings_in,
                                        std::span<const double> params, const QgclEvaluator &eval,
                                        graph::SamplingMode mode, std::uint64_t layer_seed,
                                        CfeCounter *counter = nullptr) {
    const auto res = qgcl_layer(features, embeddings_in, params, eval, mode, layer_seed, 0, counter);
    std::vector<double> h;
    h.reserve(res.outputs.size());
    for (const auto &b : res.outputs) {
        h.push_back(b[2]);
    }
    return h;
}

/// Per-node Bloch triple of the center qubit (one execution, three
/// expectations).
inline std::vector<Bloch> qgcl_final_measure(const graph::GraphFeatures &features,
                                             std::span<const double> embeddings_in,
                                             std::span<const double> params,
                                             const QgclEvaluator &eval, graph::SamplingMode mode,
                                             std::uint64_t layer_seed, CfeCounter *counter = nullptr) {
    return qgcl_layer(features, embeddings_in, params, eval, mode, layer_seed, 0, counter).outputs;
}

} // namespace sqm::qgcl
