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
 * @file gates.hpp
 * Gate descriptions for the statevector simulator. The gate set is closed:
 * {RX, RY, RZ, CX, CRX}. Every parameterised member is generated by a Pauli
 * operator, which keeps shift-rule gradients exact.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>

#include "sqm/errors.hpp"

namespace sqm::qsim {

using Complex = std::complex<double>;
/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

enum class GateKind { RX, RY, RZ, CX, CRX };

enum class Pauli { X, Y, Z };

constexpr std::string_view gate_name(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CX:
        return "CX";
    case GateKind::CRX:
        return "CRX";
    }
    return "?";
}

constexpr bool is_rotation(GateKind kind) noexcept {
    return kind != GateKind::CX;
}

constexpr bool is_controlled(GateKind kind) noexcept {
    return kind == GateKind::CX || kind == GateKind::CRX;
}

/// Index of a parameter slot inside a circuit's parameter vector.
struct Slot {
    std::size_t index;
};

/**
 * One gate application. Rotations take their angle either from a parameter
 * slot or from a bound constant; CX takes no angle at all.
 */
struct GateOp {
    GateKind kind{GateKind::RX};
    std::size_t target{0};
    std::optional<std::size_t> control{};
    std::optional<std::size_t> slot{};
    double angle{0.0};

    [[nodiscard]] bool is_parameterized() const noexcept {
        return slot.has_value();
    }

    static GateOp rx(std::size_t q, Slot s) { return {GateKind::RX, q, {}, s.index, 0.0}; }
    static GateOp ry(std::size_t q, Slot s) { return {GateKind::RY, q, {}, s.index, 0.0}; }
    static GateOp rz(std::size_t q, Slot s) { return {GateKind::RZ, q, {}, s.index, 0.0}; }
    static GateOp rx(std::size_t q, double theta) { return {GateKind::RX, q, {}, {}, theta}; }
    static GateOp ry(std::size_t q, double theta) { return {GateKind::RY, q, {}, {}, theta}; }
    static GateOp rz(std::size_t q, double theta) { return {GateKind::RZ, q, {}, {}, theta}; }
    static GateOp cx(std::size_t control, std::size_t target) {
        return {GateKind::CX, target, control, {}, 0.0};
    }
    static GateOp crx(std::size_t control, std::size_t target, Slot s) {
        return {GateKind::CRX, target, control, s.index, 0.0};
    }
    static GateOp crx(std::size_t control, std::size_t target, double theta) {
        return {GateKind::CRX, target, control, {}, theta};
    }
};

/// Single-qubit rotation exp(-i theta P / 2).
inline Mat2 rotation_matrix(Pauli axis, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    switch (axis) {
    case Pauli::X:
        return {Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0}};
    case Pauli::Y:
        return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
    case Pauli::Z:
        return {Complex{c, -s}, Complex{0, 0}, Complex{0, 0}, Complex{c, s}};
    }
    return {};
}

/// Pauli generator of a rotation gate (CRX is generated by X on its target).
constexpr Pauli generator_axis(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
    case GateKind::CRX:
        return Pauli::X;
    case GateKind::RY:
        return Pauli::Y;
    case GateKind::RZ:
        return Pauli::Z;
    case GateKind::CX:
        break;
    }
    throw ContractError("CX has no rotation generator");
}

} // namespace sqm::qsim
