#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "swarmform/control.hpp"
#include "swarmform/errors.hpp"

using namespace swarmform;
using testing_support::to_state;

namespace {

constexpr double kPi = std::numbers::pi;

SwarmState make(std::initializer_list<Vec2> pts) { return SwarmState(std::vector<Vec2>(pts)); }

}  // namespace

TEST(RadialInteraction, Examples) {
    const ControlParams p;
    EXPECT_EQ(radial_interaction(1.0, p), 0.0);
    EXPECT_EQ(radial_interaction(0.5, p), 1.0);
    const double unsaturated = 0.15 * std::pow(0.5, -10) - 0.15 * std::pow(0.5, -5);
    EXPECT_NEAR(unsaturated, 148.8, 1e-9);
    const double expected = 0.15 / 32.0 - 0.15 / std::pow(2.0, 2.5);
    EXPECT_NEAR(radial_interaction(std::sqrt(2.0), p), expected, 1e-14);
    EXPECT_NEAR(radial_interaction(std::sqrt(2.0), p), -0.02183, 1e-5);
}

TEST(RadialInteraction, BoundedAndSignStructure) {
    const ControlParams p;
    for (double d = 0.05; d < 50.0; d *= 1.07) {
        const double f = radial_interaction(d, p);
        EXPECT_LE(f, 1.0);
        if (d > 1.0 + 1e-12) {
            EXPECT_LT(f, 0.0) << d;
        }
        if (d < 1.0 - 1e-12) {
            EXPECT_GT(f, 0.0) << d;
        }
    }
    EXPECT_LT(std::fabs(radial_interaction(1e4, p)), 1e-20);
    EXPECT_THROW(radial_interaction(0.0, p), DegenerateGeometryError);
}

TEST(RadialInput, Examples) {
    ControlParams p;
    const std::vector<AgentId> nb{1};
    EXPECT_EQ(radial_input(make({{1, 0}, {0, 0}}), 0, nb, p), Vec2(0, 0));
    p.G_r = 1.0;
    EXPECT_EQ(radial_input(make({{0.5, 0}, {0, 0}}), 0, nb, p), Vec2(1, 0));
    EXPECT_EQ(radial_input(make({{0.5, 0}, {0, 0}}), 0, std::vector<AgentId>{}, p), Vec2(0, 0));
}

TEST(AngularError, Examples) {
    EXPECT_NEAR(angular_error(kPi / 3.0, 6, 0.0), 0.0, 1e-15);
    EXPECT_NEAR(angular_error(0.1, 4, 0.0), 0.1, 1e-15);
    EXPECT_DOUBLE_EQ(angular_error(kPi / 4.0, 4, 0.0), kPi / 4.0);
    EXPECT_DOUBLE_EQ(angular_error(-kPi / 4.0, 4, 0.0), kPi / 4.0);
}

TEST(AngularError, PeriodicAndInRange) {
    for (int L : {4, 6}) {
        const double period = 2.0 * kPi / L;
        for (double th = -7.0; th < 7.0; th += 0.0137) {
            const double e = angular_error(th, L, 0.0);
            EXPECT_GT(e, -kPi / L - 1e-15);
            EXPECT_LE(e, kPi / L + 1e-15);
            EXPECT_NEAR(angular_error(th + period, L, 0.0), e, 1e-12) << L << ' ' << th;
        }
    }
}

TEST(NormalInteraction, Examples) {
    EXPECT_EQ(normal_interaction(0.0, 4), 0.0);
    EXPECT_DOUBLE_EQ(normal_interaction(kPi / 4.0, 4), -1.0);
    EXPECT_DOUBLE_EQ(normal_interaction(-kPi / 8.0, 4), 0.5);
}

TEST(NormalInteraction, OddOnOpenInterval) {
    for (int L : {4, 6}) {
        for (double th = 0.001; th < kPi / L; th += 0.01) {
            EXPECT_DOUBLE_EQ(normal_interaction(-th, L), -normal_interaction(th, L));
        }
    }
}

TEST(NormalInput, Examples) {
    ControlParams p;
    p.G_n = 1.0;
    const std::vector<AgentId> adj{1};
    const auto exact = make({{1, 0}, {0, 0}});
    EXPECT_EQ(normal_input(exact, 0, adj, p), Vec2(0, 0));

    const Vec2 r{std::cos(0.1), std::sin(0.1)};
    const auto tilted = SwarmState(std::vector<Vec2>{r, {0, 0}});
    const Vec2 u = normal_input(tilted, 0, adj, p);
    EXPECT_NEAR(u.norm(), (4.0 / kPi) * 0.1, 1e-12);
    const Vec2 dir = -r.perp();
    EXPECT_NEAR(u.x / u.norm(), dir.x, 1e-12);
    EXPECT_NEAR(u.y / u.norm(), dir.y, 1e-12);
    EXPECT_LT(r.cross(u), 0.0);  // clockwise about j

    EXPECT_EQ(normal_input(tilted, 0, std::vector<AgentId>{}, p), Vec2(0, 0));
}

TEST(ClampSpeed, Examples) {
    EXPECT_EQ(clamp_speed({3, 4}, 5.0), Vec2(3, 4));
    const Vec2 c = clamp_speed({6, 8}, 5.0);
    EXPECT_NEAR(c.x, 3.0, 1e-15);
    EXPECT_NEAR(c.y, 4.0, 1e-15);
    EXPECT_EQ(clamp_speed({0, 0}, 5.0), Vec2(0, 0));
}

TEST(ControlInput, NeverExceedsVmax) {
    std::mt19937 gen(17);
    ControlParams p;
    p.G_r = 30;
    p.G_n = 30;
    const GeometryParams g;
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = to_state(oracle::random_swarm(gen, 12, 1.5));
        for (AgentId i = 0; i < s.size(); ++i) {
            EXPECT_LE(control_input(s, i, p, g).norm(), p.V_max * (1 + 1e-12));
        }
    }
}

TEST(ControlInput, RotationEquivariance) {
    std::mt19937 gen(23);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    const GeometryParams g;
    for (int L : {4, 6}) {
        ControlParams p;
        p.L = L;
        for (int trial = 0; trial < 100; ++trial) {
            const auto s = to_state(oracle::random_swarm(gen, 10, 1.5));
            const double delta = angle(gen);
            std::vector<Vec2> rotated;
            for (const auto& x : s.positions) {
                rotated.push_back(x.rotated(delta));
            }
            const SwarmState sr(rotated);
            ControlParams pr = p;
            pr.orientation_offset = delta;
            for (AgentId i = 0; i < s.size(); ++i) {
                const Vec2 expected = control_input(s, i, p, g).rotated(delta);
                const Vec2 got = control_input(sr, i, pr, g);
                EXPECT_NEAR(got.x, expected.x, 1e-9);
                EXPECT_NEAR(got.y, expected.y, 1e-9);
            }
        }
    }
}

TEST(ControlInput, PerfectSquareLatticeHasNoNormalInput) {
    std::vector<Vec2> grid;
    for (int r = 0; r < 5; ++r) {
        for (int c = 0; c < 5; ++c) {
            grid.push_back({static_cast<double>(c), static_cast<double>(r)});
        }
    }
    const SwarmState s(grid);
    const ControlParams p;
    const GeometryParams g;
    for (AgentId i = 0; i < s.size(); ++i) {
        const auto adj = adjacency_set(s, i, g);
        EXPECT_EQ(normal_input(s, i, adj, p), Vec2(0, 0));
        EXPECT_EQ(local_angular_error(s, i, adj, p), 0.0);
    }
}

TEST(LocalAngularError, Examples) {
    const ControlParams p;
    const std::vector<AgentId> adj{1};
    const Vec2 r{std::cos(kPi / 8.0), std::sin(kPi / 8.0)};
    EXPECT_NEAR(local_angular_error(SwarmState(std::vector<Vec2>{r, {0, 0}}), 0, adj, p), 0.5, 1e-15);
    EXPECT_EQ(local_angular_error(make({{0, 0}, {5, 5}}), 0, std::vector<AgentId>{}, p), 0.0);
}

TEST(AdaptNormalGain, Examples) {
    const ControlParams p;
    EXPECT_NEAR(adapt_normal_gain(0.0, 0.5, p, 0.01), 0.009, 1e-15);
    EXPECT_EQ(adapt_normal_gain(1.5, 0.1, p, 0.01), 1.5);
    EXPECT_EQ(adapt_normal_gain(1.5, 0.2, p, 0.01), 1.5);
}

TEST(AdaptNormalGain, MonotoneForAnyTrace) {
    std::mt19937 gen(8);
    std::uniform_real_distribution<double> e(0.0, 1.0);
    const ControlParams p;
    double g = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const double next = adapt_normal_gain(g, e(gen), p, 0.01);
        ASSERT_GE(next, g);
        g = next;
    }
}

TEST(ControlParams, Validation) {
    ControlParams p;
    p.L = 5;
    EXPECT_THROW(p.validate(), UsageError);
    p = ControlParams{};
    p.V_max = 0.0;
    EXPECT_THROW(p.validate(), UsageError);
}
