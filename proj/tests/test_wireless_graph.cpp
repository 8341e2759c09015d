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
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "sqm/graph/wireless_graph.hpp"
#include "sqm/seeding.hpp"

using namespace sqm;
using namespace sqm::graph;
using std::numbers::pi;

namespace {

WirelessGraph random_graph(std::size_t K, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> e(-14.0, -8.0);
    std::vector<double> g(K * K);
    for (auto &v : g) {
        v = std::pow(10.0, e(rng));
    }
    return build_graph(K, std::move(g));
}

} // namespace

TEST(BuildGraph, Shapes) {
    const auto one = build_graph(1, {2.0});
    EXPECT_EQ(one.num_nodes(), 1U);
    EXPECT_EQ(one.node_gain(0), 2.0);
    EXPECT_EQ(one.num_edges(), 0U);

    const auto two = build_graph(2, {1.0, 0.01, 0.02, 1.0});
    EXPECT_EQ(two.num_edges(), 2U);
    EXPECT_EQ(two.edge_gain(0, 1), 0.01);
    EXPECT_EQ(two.edge_gain(1, 0), 0.02);

    std::mt19937_64 rng(1);
    EXPECT_EQ(random_graph(20, rng).num_edges(), 380U);
}

TEST(BuildGraph, RejectsNonPositive) {
    EXPECT_THROW(build_graph(2, {1.0, 0.0, 1.0, 1.0}), DataError);
    EXPECT_THROW(build_graph(2, {1.0, -1.0, 1.0, 1.0}), DataError);
    EXPECT_THROW(build_graph(2, {1.0, 1.0, 1.0}), DataError);
}

TEST(Normalization, DegenerateStd) {
    const std::vector<WirelessGraph> gs{build_graph(2, {1e-3, 1e-3, 1e-3, 1e-3})};
    const auto st = fit_normalization(gs);
    EXPECT_NEAR(st.node_mean, -3.0, 1e-12);
    EXPECT_EQ(st.node_std, 1.0);
    EXPECT_EQ(st.edge_std, 1.0);
}

TEST(Normalization, TwoPointStats) {
    // Node gains {1e-1, 1e-3}.
    const std::vector<WirelessGraph> gs{build_graph(2, {1e-1, 5.0, 5.0, 1e-3})};
    const auto st = fit_normalization(gs);
    EXPECT_NEAR(st.node_mean, -2.0, 1e-12);
    EXPECT_NEAR(st.node_std, 1.0, 1e-12);
}

TEST(Normalization, EmptySetRejected) {
    EXPECT_THROW(fit_normalization(std::span<const WirelessGraph>{}), ContractError);
}

TEST(GainToAngle, CentreLimitsAndMonotone) {
    const double mean = -9.0;
    const double sd = 1.5;
    EXPECT_NEAR(gain_to_angle(std::pow(10.0, mean), mean, sd), pi / 2, 1e-12);
    EXPECT_NEAR(gain_to_angle(1e300, mean, sd), pi, 1e-9);
    EXPECT_NEAR(gain_to_angle(1e-300, mean, sd), 0.0, 1e-9);
    double prev = 0.0;
    for (int e = -20; e <= 0; ++e) {
        const double a = gain_to_angle(std::pow(10.0, e), mean, sd);
        EXPECT_GT(a, prev);
        EXPECT_GT(a, 0.0);
        EXPECT_LT(a, pi);
        prev = a;
    }
    EXPECT_THROW(gain_to_angle(0.0, mean, sd), DataError);
    EXPECT_THROW(gain_to_angle(-1.0, mean, sd), DataError);
}

TEST(SampleStar, DegreeAboveKSamplesDistinct) {
    std::mt19937_64 rng(3);
    const auto g = random_graph(6, rng); // degree 5
    const auto f = encode(g, fit_normalization(std::vector<WirelessGraph>{g}));
    std::set<std::size_t> seen_overall;
    for (int layer = 0; layer < 30; ++layer) {
        const auto sub = sample_star(f, 2, 4, rng);
        ASSERT_EQ(sub.k(), 4U);
        std::set<std::size_t> ids;
        for (const auto &s : sub.slots) {
            ASSERT_TRUE(s.neighbor.has_value());
            EXPECT_NE(*s.neighbor, 2U);
            ids.insert(*s.neighbor);
            seen_overall.insert(*s.neighbor);
            EXPECT_EQ(s.edge_angle, f.edge_angle_into(*s.neighbor, 2));
            EXPECT_GE(s.edge_angle, 0.0);
            EXPECT_LE(s.edge_angle, pi);
        }
        EXPECT_EQ(ids.size(), 4U);
    }
    // The neighbour dropped in one draw reappears in others.
    EXPECT_EQ(seen_overall.size(), 5U);
}

TEST(SampleStar, PaddingWhenDegreeBelowK) {
    std::mt19937_64 rng(4);
    const auto g = random_graph(4, rng); // degree 3
    const auto f = encode(g, fit_normalization(std::vector<WirelessGraph>{g}));
    const auto sub = sample_star(f, 0, 6, rng);
    EXPECT_EQ(sub.k(), 6U);
    EXPECT_EQ(sub.num_real(), 3U);
    for (std::size_t s = 3; s < 6; ++s) {
        EXPECT_TRUE(sub.slots[s].is_padding());
        EXPECT_EQ(sub.slots[s].node_angle, 0.0);
        EXPECT_EQ(sub.slots[s].edge_angle, 0.0);
    }
}

TEST(SampleStar, DegreeEqualsKUsesEveryone) {
    std::mt19937_64 rng(5);
    const auto g = random_graph(5, rng);
    const auto f = encode(g, fit_normalization(std::vector<WirelessGraph>{g}));
    std::set<std::vector<std::size_t>> orders;
    for (int i = 0; i < 40; ++i) {
        const auto sub = sample_star(f, 1, 4, rng);
        std::vector<std::size_t> ids;
        for (const auto &s : sub.slots) {
            ids.push_back(*s.neighbor);
        }
        orders.insert(ids);
        std::sort(ids.begin(), ids.end());
        EXPECT_EQ(ids, (std::vector<std::size_t>{0, 2, 3, 4}));
    }
    EXPECT_GT(orders.size(), 1U);
}

TEST(SampleStar, SeedDeterminism) {
    std::mt19937_64 g_rng(6);
    const auto g = random_graph(10, g_rng);
    const auto f = encode(g, fit_normalization(std::vector<WirelessGraph>{g}));
    std::mt19937_64 a(derive_seed({1, 2, 3}));
    std::mt19937_64 b(derive_seed({1, 2, 3}));
    const auto sa = sample_star(f, 7, 6, a);
    const auto sb = sample_star(f, 7, 6, b);
    for (std::size_t s = 0; s < 6; ++s) {
        EXPECT_EQ(sa.slots[s].neighbor, sb.slots[s].neighbor);
        EXPECT_EQ(sa.slots[s].node_angle, sb.slots[s].node_angle);
        EXPECT_EQ(sa.slots[s].edge_angle, sb.slots[s].edge_angle);
    }
}

TEST(SampleStar, InclusionFrequencyIsKOverD) {
    std::mt19937_64 g_rng(7);
    const auto g = random_graph(10, g_rng); // d = 9
    const auto f = encode(g, fit_normalization(std::vector<WirelessGraph>{g}));
    const std::size_t k = 4;
    const int trials = 20000;
    std::vector<int> hits(10, 0);
    std::mt19937_64 rng(8);
    for (int t = 0; t < trials; ++t) {
        for (const auto &s : sample_star(f, 0, k, rng).slots) {
            ++hits[*s.neighbor];
        }
    }
    const double p = static_cast<double>(k) / 9.0;
    const double se = std::sqrt(p * (1 - p) / trials);
    for (std::size_t j = 1; j < 10; ++j) {
        EXPECT_LT(std::abs(hits[j] / static_cast<double>(trials) - p), 3 * se) << j;
    }
    EXPECT_EQ(hits[0], 0);
}

TEST(SampleStar, DeterministicMode) {
    std::mt19937_64 rng(9);
    const auto g = random_graph(4, rng);
    const auto f = encode(g, fit_normalization(std::vector<WirelessGraph>{g}));
    const auto sub = sample_star(f, 2, 5, rng, SamplingMode::deterministic);
    EXPECT_EQ(sub.slots[0].neighbor, 0U);
    EXPECT_EQ(sub.slots[1].neighbor, 1U);
    EXPECT_EQ(sub.slots[2].neighbor, 3U);
    EXPECT_TRUE(sub.slots[3].is_padding());
    EXPECT_THROW(sample_star(f, 2, 2, rng, SamplingMode::deterministic), ContractError);
}

TEST(SampleStar, InvalidCenter) {
    std::mt19937_64 rng(10);
    const auto g = random_graph(3, rng);
    const auto f = encode(g, fit_normalization(std::vector<WirelessGraph>{g}));
    EXPECT_THROW(sample_star(f, 3, 2, rng), ContractError);
    EXPECT_THROW(sample_star(f, 0, 0, rng), ContractError);
}

TEST(Encode, TestSplitUsesTrainStats) {
    std::mt19937_64 rng(11);
    const std::vector<WirelessGraph> train{random_graph(5, rng), random_graph(5, rng)};
    const auto st = fit_normalization(train);
    const auto test_graph = random_graph(5, rng);
    const auto f = encode(test_graph, st);
    EXPECT_NEAR(f.node_angle[0], node_gain_to_angle(test_graph.node_gain(0), st), 1e-15);
    EXPECT_NEAR(f.edge_angle_into(3, 1), edge_gain_to_angle(test_graph.edge_gain(3, 1), st), 1e-15);
}
