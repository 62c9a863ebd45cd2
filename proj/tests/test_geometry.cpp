#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "helpers.hpp"
#include "swarmform/errors.hpp"
#include "swarmform/geometry.hpp"

using namespace swarmform;
using testing_support::to_state;

namespace {

SwarmState make(std::initializer_list<Vec2> pts) { return SwarmState(std::vector<Vec2>(pts)); }

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(RelativePosition, Examples) {
    EXPECT_EQ(relative_position(make({{1, 0}, {0, 0}}), 0, 1), Vec2(1, 0));
    EXPECT_EQ(relative_position(make({{0, 0}, {0, 0}}), 0, 1), Vec2(0, 0));
    EXPECT_EQ(relative_position(make({{2, 3}, {-1, 1}}), 0, 1), Vec2(3, 2));
}

TEST(RelativePosition, RejectsSelfAndBadIds) {
    const auto s = make({{0, 0}, {1, 0}});
    EXPECT_THROW(relative_position(s, 0, 0), UsageError);
    EXPECT_THROW(relative_position(s, 0, 5), UsageError);
}

TEST(RelativePosition, Antisymmetric) {
    std::mt19937 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = to_state(oracle::random_swarm(gen, 8, 3.0));
        for (AgentId i = 0; i < s.size(); ++i) {
            for (AgentId j = 0; j < s.size(); ++j) {
                if (i != j) {
                    EXPECT_EQ(relative_position(s, i, j), -relative_position(s, j, i));
                }
            }
        }
    }
}

TEST(Neighbourhood, Examples) {
    GeometryParams g;
    g.R_s = 1.0;
    EXPECT_EQ(neighbourhood(make({{0, 0}, {0.5, 0}}), 0, g), std::vector<AgentId>{1});
    EXPECT_EQ(neighbourhood(make({{0, 0}, {0.5, 0}}), 1, g), std::vector<AgentId>{0});
    EXPECT_TRUE(neighbourhood(make({{0, 0}, {2, 0}}), 0, g).empty());

    g.R_s = 1.5;
    const auto line = make({{0, 0}, {1, 0}, {2, 0}});
    EXPECT_EQ(neighbourhood(line, 1, g), (std::vector<AgentId>{0, 2}));
    EXPECT_EQ(neighbourhood(line, 0, g), std::vector<AgentId>{1});
    EXPECT_EQ(neighbourhood(line, 2, g), std::vector<AgentId>{1});
}

TEST(AdjacencySet, BandIsClosed) {
    const GeometryParams g;
    EXPECT_EQ(adjacency_set(make({{0, 0}, {1.0, 0}}), 0, g), std::vector<AgentId>{1});
    EXPECT_TRUE(adjacency_set(make({{0, 0}, {0.5, 0}}), 0, g).empty());
    EXPECT_EQ(adjacency_set(make({{0, 0}, {1.1, 0}}), 0, g), std::vector<AgentId>{1});
    EXPECT_EQ(adjacency_set(make({{0, 0}, {0.6, 0}}), 0, g), std::vector<AgentId>{1});
    EXPECT_TRUE(adjacency_set(make({{0, 0}, {1.1000001, 0}}), 0, g).empty());
}

TEST(AdjacencySet, SubsetOfNeighbourhood) {
    std::mt19937 gen(5);
    GeometryParams g;
    g.R_s = 1.5;
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = to_state(oracle::random_swarm(gen, 12, 2.0));
        for (AgentId i = 0; i < s.size(); ++i) {
            const auto nb = neighbourhood(s, i, g);
            for (AgentId j : adjacency_set(s, i, g)) {
                EXPECT_NE(std::find(nb.begin(), nb.end(), j), nb.end());
            }
        }
    }
}

TEST(BuildLinks, Examples) {
    const GeometryParams g;
    const auto two = build_links(make({{0, 0}, {1, 0}}), g);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two.links[0].i, 0u);
    EXPECT_EQ(two.links[0].j, 1u);
    EXPECT_EQ(two.links[1].i, 1u);
    EXPECT_EQ(two.links[1].j, 0u);
    EXPECT_TRUE(build_links(make({{0, 0}, {3, 0}}), g).empty());
    const auto tri = build_links(make({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}}), g);
    EXPECT_EQ(tri.size(), 6u);
}

TEST(BuildLinks, SymmetricOnRandomStates) {
    std::mt19937 gen(2024);
    const GeometryParams g;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto s = to_state(oracle::random_swarm(gen, 15, 2.5));
        const auto links = build_links(s, g);
        std::set<std::pair<AgentId, AgentId>> pairs;
        for (const auto& l : links.links) {
            pairs.insert({l.i, l.j});
        }
        for (const auto& l : links.links) {
            ASSERT_TRUE(pairs.count({l.j, l.i})) << "trial " << trial;
        }
    }
}

TEST(BuildLinks, MatchesBruteForce) {
    std::mt19937 gen(99);
    const GeometryParams g;
    for (int trial = 0; trial < 200; ++trial) {
        const auto pts = oracle::random_swarm(gen, 20, 2.5);
        const auto links = build_links(to_state(pts), g);
        const auto ref = oracle::edges(pts, g.R_min, g.R_max);
        ASSERT_EQ(links.size(), ref.size());
        for (std::size_t k = 0; k < ref.size(); ++k) {
            EXPECT_EQ(links.links[k].i, ref[k].i);
            EXPECT_EQ(links.links[k].j, ref[k].j);
        }
    }
}

TEST(BuildLinks, BandIndependentOfSensingRadius) {
    GeometryParams g;
    g.R_s = 0.9;
    EXPECT_EQ(build_links(make({{0, 0}, {1, 0}}), g).size(), 2u);
    EXPECT_TRUE(neighbourhood(make({{0, 0}, {1, 0}}), 0, g).empty());
}

TEST(LinkAngle, Examples) {
    EXPECT_DOUBLE_EQ(link_angle({1, 0}), 0.0);
    EXPECT_DOUBLE_EQ(link_angle({0, 1}), kPi / 2.0);
    EXPECT_NEAR(link_angle({-1, -1}), 5.0 * kPi / 4.0, 1e-15);
    EXPECT_THROW(link_angle({0, 0}), DegenerateGeometryError);
}

TEST(PairAngle, Examples) {
    EXPECT_DOUBLE_EQ(pair_angle(0.0, kPi / 2.0), kPi / 2.0);
    EXPECT_NEAR(pair_angle(0.1, 2.0 * kPi - 0.1), 0.2, 1e-12);
    EXPECT_EQ(pair_angle(1.3, 1.3), 0.0);
}

TEST(PairAngle, SymmetricAndPeriodic) {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int k = 0; k < 1000; ++k) {
        const double a = u(gen);
        const double b = u(gen);
        EXPECT_DOUBLE_EQ(pair_angle(a, b), pair_angle(b, a));
        EXPECT_NEAR(pair_angle(a + kTwoPi, b), pair_angle(a, b), 1e-12);
        EXPECT_NEAR(pair_angle(a, b + kTwoPi), pair_angle(a, b), 1e-12);
        EXPECT_GE(pair_angle(a, b), 0.0);
        EXPECT_LE(pair_angle(a, b), kPi);
    }
}

TEST(LinkDegrees, CountsOutgoingLinks) {
    const auto s = make({{0, 0}, {1, 0}, {2, 0}, {9, 9}});
    const auto deg = link_degrees(build_links(s, GeometryParams{}), s.size());
    EXPECT_EQ(deg, (std::vector<std::size_t>{1, 2, 1, 0}));
}

TEST(SwarmState, ValidateRejectsBadStates) {
    EXPECT_THROW(SwarmState().validate(), UsageError);
    auto s = make({{0, 0}, {std::nan(""), 0}});
    EXPECT_THROW(s.validate(), UsageError);
    auto t = make({{0, 0}});
    t.normal_gains[0] = -1.0;
    EXPECT_THROW(t.validate(), UsageError);
}
