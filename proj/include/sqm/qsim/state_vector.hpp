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
 * @file state_vector.hpp
 * Dense statevector over n qubits.
 *
 * Qubit 0 is the most significant bit of the amplitude index, so the ket
 * |q0 q1 ... q_{n-1}> maps to index sum_i q_i 2^(n-1-i).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sqm/errors.hpp"
#include "sqm/qsim/gates.hpp"

namespace sqm::qsim {

inline constexpr std::size_t kMaxQubits = 24;

struct Observable {
    Pauli pauli{Pauli::Z};
    std::size_t target{0};
};

/// Real linear combination of single-qubit Pauli observables.
struct PauliTerm {
    double coeff{1.0};
    Observable op{};
};
using Hamiltonian = std::vector<PauliTerm>;

class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits) : n_qubits_{n_qubits} {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw CapacityError("statevector supports 1.." +
                                std::to_string(kMaxQubits) + " qubits, got " +
                                std::to_string(n_qubits));
        }
        amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
        amps_[0] = 1.0;
    }

    static StateVector from_amplitudes(std::vector<Complex> amps) {
        const std::size_t len = amps.size();
        if (len < 2 || (len & (len - 1)) != 0) {
            throw ContractError("amplitude count must be a power of two >= 2");
        }
        std::size_t n = 0;
        while ((std::size_t{1} << n) < len) {
            ++n;
        }
        StateVector sv(n);
        sv.amps_ = std::move(amps);
        return sv;
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm() const {
        double acc = 0.0;
        for (const auto &a : amps_) {
            acc += std::norm(a);
        }
        return std::sqrt(acc);
    }

    [[nodiscard]] std::size_t mask(std::size_t qubit) const {
        check_wire(qubit);
        return std::size_t{1} << (n_qubits_ - 1 - qubit);
    }

    /// Apply an arbitrary 2x2 matrix to one qubit.
    void apply_matrix(std::size_t target, const Mat2 &m) {
        const std::size_t tm = mask(target);
        const std::size_t len = amps_.size();
        for (std::size_t base = 0; base < len; base += 2 * tm) {
            for (std::size_t i = base; i < base + tm; ++i) {
                const Complex a0 = amps_[i];
                const Complex a1 = amps_[i + tm];
                amps_[i] = m[0] * a0 + m[1] * a1;
                amps_[i + tm] = m[2] * a0 + m[3] * a1;
            }
        }
    }

    /// Apply a 2x2 matrix to `target` on the control=1 subspace.
    void apply_controlled_matrix(std::size_t control, std::size_t target,
                                 const Mat2 &m) {
        const std::size_t cm = mask(control);
        const std::size_t tm = mask(target);
        if (cm == tm) {
            throw ContractError("control and target must differ");
        }
        const std::size_t len = amps_.size();
        for (std::size_t base = 0; base < len; base += 2 * tm) {
            for (std::size_t i = base; i < base + tm; ++i) {
                if ((i & cm) == 0) {
                    continue;
                }
                const Complex a0 = amps_[i];
                const Complex a1 = amps_[i + tm];
                amps_[i] = m[0] * a0 + m[1] * a1;
                amps_[i + tm] = m[2] * a0 + m[3] * a1;
            }
        }
    }

    void apply_cx(std::size_t control, std::size_t target) {
        const std::size_t cm = mask(control);
        const std::size_t tm = mask(target);
        if (cm == tm) {
            throw ContractError("control and target must differ");
        }
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & cm) != 0 && (i & tm) == 0) {
                std::swap(amps_[i], amps_[i | tm]);
            }
        }
    }

    /// Apply `gate`. The angle must be supplied exactly when the gate reads
    /// a parameter slot; bound rotations use their stored angle.
    void apply(const GateOp &gate, std::optional<double> angle = {}) {
        if (gate.is_parameterized() != angle.has_value()) {
            throw ContractError(std::string(gate_name(gate.kind)) +
                                (angle ? ": unexpected angle for unparameterised gate"
                                       : ": missing angle for parameterised gate"));
        }
        if (gate.kind == GateKind::CX && gate.slot) {
            throw ContractError("CX takes no parameter");
        }
        if (is_controlled(gate.kind) != gate.control.has_value()) {
            throw ContractError(std::string(gate_name(gate.kind)) +
                                ": control wire mismatch");
        }
        const double theta = angle.value_or(gate.angle);
        switch (gate.kind) {
        case GateKind::RX:
            apply_matrix(gate.target, rotation_matrix(Pauli::X, theta));
            break;
        case GateKind::RY:
            apply_matrix(gate.target, rotation_matrix(Pauli::Y, theta));
            break;
        case GateKind::RZ:
            apply_diagonal(gate.target, theta);
            break;
        case GateKind::CX:
            apply_cx(*gate.control, gate.target);
            break;
        case GateKind::CRX:
            apply_controlled_matrix(*gate.control, gate.target,
                                    rotation_matrix(Pauli::X, theta));
            break;
        }
    }

    /// Multiply by the Pauli `p` on `target`, restricted to the control=1
    /// subspace when a control is given (amplitudes with control=0 are
    /// zeroed). Not unitary in the controlled case; used for gradients.
    void apply_generator(Pauli p, std::size_t target,
                         std::optional<std::size_t> control = {}) {
        const std::size_t tm = mask(target);
        const std::size_t cm = control ? mask(*control) : 0;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (cm != 0 && (i & cm) == 0) {
                amps_[i] = 0.0;
                continue;
            }
            if ((i & tm) != 0) {
                continue;
            }
            Complex &a0 = amps_[i];
            Complex &a1 = amps_[i | tm];
            switch (p) {
            case Pauli::X:
                std::swap(a0, a1);
                break;
            case Pauli::Y: {
                const Complex t0 = a0;
                a0 = Complex{0, -1} * a1;
                a1 = Complex{0, 1} * t0;
                break;
            }
            case Pauli::Z:
                a1 = -a1;
                break;
            }
        }
    }

  private:
    void check_wire(std::size_t q) const {
        if (q >= n_qubits_) {
            throw ContractError("qubit index " + std::to_string(q) +
                                " out of range for " +
                                std::to_string(n_qubits_) + " qubits");
        }
    }

    void apply_diagonal(std::size_t target, double theta) {
        const std::size_t tm = mask(target);
        const Complex d0 = std::polar(1.0, -theta / 2.0);
        const Complex d1 = std::polar(1.0, theta / 2.0);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            amps_[i] *= (i & tm) ? d1 : d0;
        }
    }

    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

inline StateVector init_state(std::size_t n_qubits) { return StateVector(n_qubits); }

inline StateVector apply_gate(StateVector state, const GateOp &gate,
                              std::optional<double> angle = {}) {
    state.apply(gate, angle);
    return state;
}

/// Exact (infinite-shot) expectation of a single-qubit Pauli.
inline double expectation(const StateVector &state, const Observable &obs) {
    const std::size_t tm = state.mask(obs.target);
    const auto amps = state.amplitudes();
    double acc = 0.0;
    switch (obs.pauli) {
    case Pauli::Z:
        for (std::size_t i = 0; i < amps.size(); ++i) {
            acc += ((i & tm) ? -1.0 : 1.0) * std::norm(amps[i]);
        }
        break;
    case Pauli::X:
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & tm) == 0) {
                acc += 2.0 * std::real(std::conj(amps[i]) * amps[i | tm]);
            }
        }
        break;
    case Pauli::Y:
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & tm) == 0) {
                acc += 2.0 * std::imag(std::conj(amps[i]) * amps[i | tm]);
            }
        }
        break;
    }
    return acc;
}

inline double expectation(const StateVector &state, const Hamiltonian &h) {
    double acc = 0.0;
    for (const auto &term : h) {
        acc += term.coeff * expectation(state, term.op);
    }
    return acc;
}

/// Finite-shot estimate: `shots` projective measurements in the Pauli
/// eigenbasis, returned as the sample mean of the +/-1 outcomes.
template <class Rng>
double sampled_expectation(const StateVector &state, const Observable &obs,
                           std::uint64_t shots, Rng &rng) {
    if (shots == 0) {
        throw ContractError("shot count must be positive");
    }
    const double exact = expectation(state, obs);
    const double p_plus = std::clamp((1.0 + exact) / 2.0, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(shots, p_plus);
    const auto plus = static_cast<double>(draw(rng));
    return (2.0 * plus - static_cast<double>(shots)) / static_cast<double>(shots);
}

} // namespace sqm::qsim
