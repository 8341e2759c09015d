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

#include <cstdint>

namespace sqm {

/// Circuit-forward evaluations, split by purpose. One forward CFE is one
/// execution of a message-passing circuit for one center node.
struct CfeCounter {
    std::uint64_t forward{0};
    std::uint64_t gradient{0};

    CfeCounter &operator+=(const CfeCounter &o) noexcept {
        forward += o.forward;
        gradient += o.gradient;
        return *this;
    }
    [[nodiscard]] std::uint64_t total() const noexcept { return forward + gradient; }
};

} // namespace sqm
