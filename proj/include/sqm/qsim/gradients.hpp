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
 * @file gradients.hpp
 * Exact gradients of Pauli expectations with respect to circuit slots.
 *
 * Two independent engines are provided:
 *  - parameter shift: re-executes the circuit with one gate occurrence
 *    shifted at a time. Single-qubit rotations use the two-term +/-pi/2 rule;
 *    CRX (generator eigenvalues {0, +-1/2}) uses the four-term rule.
 *  - adjoint: one forward pass, then a reverse sweep that carries the bra
 *    H|psi> alongside the ket, giving all slot gradients at once.
 */
#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "sqm/errors.hpp"
#include "sqm/qsim/circuit.hpp"

namespace sqm::qsim {

/// H|psi> for a Pauli sum.
inline StateVector apply_hamiltonian(const StateVector &psi, const Hamiltonian &h) {
    std::vector<Complex> acc(psi.size(), Complex{0.0, 0.0});
    for (const auto &term : h) {
        StateVector tmp = psi;
        tmp.apply_generator(term.op.pauli, term.op.target);
        const auto src = tmp.amplitudes();
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] += term.coeff * src[i];
        }
    }
    return StateVector::from_amplitudes(std::move(acc));
}

namespace detail {

inline double shifted_value(const Circuit &circuit, std::span<const double> params,
                            const Hamiltonian &obs, std::size_t gate, double angle) {
    const Circuit shifted = circuit.with_bound_gate(gate, angle);
    return expectation(run(shifted, params), obs);
}

/// Im <lambda| G |psi> where G is the (possibly control-projected) Pauli
/// generator of `gate`. Equals d<H>/d(theta) of that gate occurrence.
inline double generator_overlap(const StateVector &lambda, const StateVector &psi,
                                const GateOp &gate) {
    const Pauli p = generator_axis(gate.kind);
    const std::size_t tm = psi.mask(gate.target);
    const std::size_t cm = gate.control ? psi.mask(*gate.control) : 0;
    const auto l = lambda.amplitudes();
    const auto a = psi.amplitudes();
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (cm != 0 && (i & cm) == 0) {
            continue;
        }
        const std::size_t j = i ^ tm;
        switch (p) {
        case Pauli::X:
            acc += std::conj(l[i]) * a[j];
            break;
        case Pauli::Y:
            // (Y psi)_i = -i psi_j for bit 0, +i psi_j for bit 1
            acc += std::conj(l[i]) * ((i & tm) ? Complex{0, 1} : Complex{0, -1}) * a[j];
            break;
        case Pauli::Z:
            acc += std::conj(l[i]) * ((i & tm) ? -a[i] : a[i]);
            break;
        }
    }
    return acc.imag();
}

inline GateOp inverse(const GateOp &g, std::span<const double> params) {
    GateOp inv = g;
    if (is_rotation(g.kind)) {
        inv.angle = -(g.slot ? params[*g.slot] : g.angle);
        inv.slot.reset();
    }
    return inv;
}

} // namespace detail

/**
 * Parameter-shift gradient of <obs> for each slot in `which_slots`, summed
 * over every gate occurrence that reads the slot.
 */
inline std::vector<double> grad_parameter_shift(const Circuit &circuit,
                                                std::span<const double> params,
                                                const Hamiltonian &obs,
                                                std::span<const std::size_t> which_slots) {
    check_params(circuit, params);
    constexpr double half_pi = std::numbers::pi / 2.0;
    const double c_inner = (std::numbers::sqrt2 + 1.0) / (4.0 * std::numbers::sqrt2);
    const double c_outer = (std::numbers::sqrt2 - 1.0) / (4.0 * std::numbers::sqrt2);

    std::vector<double> grads(which_slots.size(), 0.0);
    const auto gates = circuit.gates();
    for (std::size_t w = 0; w < which_slots.size(); ++w) {
        const std::size_t slot = which_slots[w];
        if (slot >= circuit.num_slots()) {
            throw ContractError("slot " + std::to_string(slot) + " out of range");
        }
        const double theta = params[slot];
        double g = 0.0;
        for (std::size_t i = 0; i < gates.size(); ++i) {
            if (gates[i].slot != slot) {
                continue;
            }
            auto f = [&](double shift) {
                return detail::shifted_value(circuit, params, obs, i, theta + shift);
            };
            if (gates[i].kind == GateKind::CRX) {
                g += c_inner * (f(half_pi) - f(-half_pi)) -
                     c_outer * (f(3.0 * half_pi) - f(-3.0 * half_pi));
            } else {
                g += 0.5 * (f(half_pi) - f(-half_pi));
            }
        }
        grads[w] = g;
    }
    return grads;
}

inline std::vector<double> grad_parameter_shift(const Circuit &circuit,
                                                std::span<const double> params,
                                                const Observable &obs,
                                                std::span<const std::size_t> which_slots) {
    return grad_parameter_shift(circuit, params, Hamiltonian{{1.0, obs}}, which_slots);
}

/// Number of circuit executions the shift rule spends on `which_slots`.
inline std::size_t shift_evaluations(const Circuit &circuit,
                                     std::span<const std::size_t> which_slots) {
    std::size_t n = 0;
    for (const std::size_t slot : which_slots) {
        for (const auto &g : circuit.gates()) {
            if (g.slot == slot) {
                n += g.kind == GateKind::CRX ? 4 : 2;
            }
        }
    }
    return n;
}

/// Adjoint-method gradient of <obs> for every slot of the circuit.
inline std::vector<double> grad_adjoint(const Circuit &circuit,
                                        std::span<const double> params,
                                        const Hamiltonian &obs) {
    check_params(circuit, params);
    std::vector<double> grads(circuit.num_slots(), 0.0);
    if (circuit.gates().empty() || circuit.num_slots() == 0) {
        return grads;
    }
    StateVector psi = run(circuit, params);
    StateVector lambda = apply_hamiltonian(psi, obs);

    const auto gates = circuit.gates();
    for (std::size_t i = gates.size(); i-- > 0;) {
        const GateOp &g = gates[i];
        if (g.slot) {
            grads[*g.slot] += detail::generator_overlap(lambda, psi, g);
        }
        const GateOp inv = detail::inverse(g, params);
        psi.apply(inv);
        lambda.apply(inv);
    }
    return grads;
}

inline std::vector<double> grad_adjoint(const Circuit &circuit,
                                        std::span<const double> params,
                                        const Observable &obs) {
    return grad_adjoint(circuit, params, Hamiltonian{{1.0, obs}});
}

} // namespace sqm::qsim
