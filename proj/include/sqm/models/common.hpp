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

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "sqm/graph/wireless_graph.hpp"

namespace sqm::models {

/// A graph together with its normalized features.
struct PreparedGraph {
    graph::WirelessGraph graph;
    graph::GraphFeatures features;
};

inline std::vector<PreparedGraph> prepare(std::span<const graph::WirelessGraph> graphs,
                                          const graph::NormStats &stats) {
    std::vector<PreparedGraph> out;
    out.reserve(graphs.size());
    for (const auto &g : graphs) {
        out.push_back({g, graph::encode(g, stats)});
    }
    return out;
}

namespace detail {
inline std::uint64_t next_stamp() {
    static std::atomic<std::uint64_t> generation{0};
    return ++generation;
}
} // namespace detail

} // namespace sqm::models
