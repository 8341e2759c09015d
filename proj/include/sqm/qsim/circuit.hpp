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
 * @file circuit.hpp
 * Ordered gate lists with tagged parameter slots, and their execution.
 */
#pragma once

#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sqm/errors.hpp"
#include "sqm/qsim/gates.hpp"
#include "sqm/qsim/state_vector.hpp"

namespace sqm::qsim {

enum class SlotRole { trainable, input_encoding };

class Circuit {
  public:
    explicit Circuit(std::size_t n_qubits) : n_qubits_{n_qubits} {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw CapacityError("circuit qubit count out of range: " +
                                std::to_string(n_qubits));
        }
    }

    Slot add_slot(SlotRole role) {
        roles_.push_back(role);
        return Slot{roles_.size() - 1};
    }

    Circuit &add(const GateOp &gate) {
        check_wire(gate.target);
        if (is_controlled(gate.kind)) {
            if (!gate.control) {
                throw ContractError(std::string(gate_name(gate.kind)) + " needs a control");
            }
            check_wire(*gate.control);
            if (*gate.control == gate.target) {
                throw ContractError("control and target must be distinct");
            }
        } else if (gate.control) {
            throw ContractError(std::string(gate_name(gate.kind)) + " takes no control");
        }
        if (gate.slot) {
            if (!is_rotation(gate.kind)) {
                throw ContractError("CX cannot read a parameter slot");
            }
            if (*gate.slot >= roles_.size()) {
                throw ContractError("gate references undeclared slot " +
                                    std::to_string(*gate.slot));
            }
        }
        gates_.push_back(gate);
        return *this;
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t num_slots() const noexcept { return roles_.size(); }
    [[nodiscard]] std::span<const GateOp> gates() const noexcept { return gates_; }
    [[nodiscard]] std::span<const SlotRole> slot_roles() const noexcept { return roles_; }

    /// Copy of this circuit with gate `index` rebound to a constant angle.
    /// Used by the shift rule to perturb a single occurrence of a shared slot.
    [[nodiscard]] Circuit with_bound_gate(std::size_t index, double angle) const {
        Circuit out = *this;
        out.gates_.at(index).slot.reset();
        out.gates_.at(index).angle = angle;
        return out;
    }

  private:
    void check_wire(std::size_t q) const {
        if (q >= n_qubits_) {
            throw ContractError("wire " + std::to_string(q) + " out of range");
        }
    }

    std::size_t n_qubits_;
    std::vector<GateOp> gates_;
    std::vector<SlotRole> roles_;
};

inline void check_params(const Circuit &circuit, std::span<const double> params) {
    if (params.size() != circuit.num_slots()) {
        throw ContractError("expected " + std::to_string(circuit.num_slots()) +
                            " parameters, got " + std::to_string(params.size()));
    }
}

inline void apply_circuit(StateVector &state, const Circuit &circuit,
                          std::span<const double> params) {
    for (const auto &g : circuit.gates()) {
        if (g.slot) {
            state.apply(g, params[*g.slot]);
        } else {
            state.apply(g);
        }
    }
}

/// Execute `circuit` from |0...0>.
inline StateVector run(const Circuit &circuit, std::span<const double> params) {
    check_params(circuit, params);
    StateVector state(circuit.num_qubits());
    apply_circuit(state, circuit, params);
    return state;
}

/// Human-readable listing, one gate per line: `KIND wires param`.
inline std::string dump(const Circuit &circuit) {
    std::ostringstream os;
    os << "qubits " << circuit.num_qubits() << " slots " << circuit.num_slots() << '\n';
    for (const auto &g : circuit.gates()) {
        os << gate_name(g.kind);
        if (g.control) {
            os << ' ' << *g.control;
        }
        os << ' ' << g.target;
        if (g.slot) {
            os << " slot=" << *g.slot
               << (circuit.slot_roles()[*g.slot] == SlotRole::trainable ? ":train"
                                                                       : ":input");
        } else if (is_rotation(g.kind)) {
            os << " angle=" << g.angle;
        }
        os << '\n';
    }
    return os.str();
}

} // namespace sqm::qsim
