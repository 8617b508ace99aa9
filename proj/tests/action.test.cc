// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/action.test.cc
//---------------------------------------------------------------------------//
#include "aeropush/action.hh"

#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "aeropush/rng.hh"

namespace aeropush
{
namespace
{
constexpr double pi = std::numbers::pi;

TEST(MapActionTest, examples)
{
    ControlInput u = map_action(Action{{-1, 0.7, 0, 0}});
    EXPECT_EQ(0.0, u.velocity.x());
    EXPECT_EQ(0.0, u.velocity.y());
    EXPECT_EQ(0.0, u.velocity.z());
    EXPECT_EQ(0.0, u.yaw_rate);

    u = map_action(Action{{1, 0, -1, 1}});
    EXPECT_NEAR(1.0, u.velocity.x(), 1e-12);
    EXPECT_NEAR(0.0, u.velocity.y(), 1e-12);
    EXPECT_NEAR(-0.5, u.velocity.z(), 1e-12);
    EXPECT_NEAR(pi / 4, u.yaw_rate, 1e-12);

    u = map_action(Action{{1, 0.5, 0, 0}});
    EXPECT_NEAR(0.0, u.velocity.x(), 1e-12);
    EXPECT_NEAR(1.0, u.velocity.y(), 1e-12);

    u = map_action(Action{{0, 1, 0, 0}});
    EXPECT_NEAR(-0.5, u.velocity.x(), 1e-12);
    EXPECT_NEAR(0.0, u.velocity.y(), 1e-12);
}

TEST(MapActionTest, planar_speed_and_heading)
{
    CounterRng rng(41, 0, 0);
    ActionBounds b;
    for (int i = 0; i < 10000; ++i)
    {
        Action a{{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                  rng.uniform(-1, 1)}};
        ControlInput u = map_action(a, b);
        double const speed = u.velocity.head<2>().norm();
        ASSERT_NEAR(b.max_planar_speed * (a[0] + 1) / 2, speed, 1e-12);
        if (speed > 1e-6 && std::abs(a[1]) < 1)
        {
            ASSERT_NEAR(b.max_heading * a[1],
                        std::atan2(u.velocity.y(), u.velocity.x()),
                        1e-9);
        }
        ASSERT_NEAR(b.max_vertical_speed * a[2], u.velocity.z(), 1e-15);
        ASSERT_NEAR(b.max_yaw_rate * a[3], u.yaw_rate, 1e-15);
    }
}

TEST(MapActionTest, out_of_range_actions_clamped)
{
    CounterRng rng(42, 0, 0);
    ActionBounds b;
    for (int i = 0; i < 1000; ++i)
    {
        Action a{{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5),
                  rng.uniform(-5, 5)}};
        ControlInput u = map_action(a, b);
        EXPECT_LE(u.velocity.head<2>().norm(), b.max_planar_speed + 1e-12);
        EXPECT_LE(std::abs(u.velocity.z()), b.max_vertical_speed);
        EXPECT_LE(std::abs(u.yaw_rate), b.max_yaw_rate);
        EXPECT_EQ(map_action(clamp_action(a), b).velocity, u.velocity);
    }
    double const nan = std::numeric_limits<double>::quiet_NaN();
    Action c = clamp_action(Action{{nan, 3, -3, 0.5}});
    EXPECT_EQ((Action{{0, 1, -1, 0.5}}), c);
}

TEST(ActionForCommandTest, inverts_map_action)
{
    CounterRng rng(43, 0, 0);
    ActionBounds b;
    for (int i = 0; i < 1000; ++i)
    {
        Action a{{rng.uniform(-0.99, 1), rng.uniform(-0.99, 0.99),
                  rng.uniform(-1, 1), rng.uniform(-1, 1)}};
        Action back = action_for_command(map_action(a, b), b);
        for (int j = 0; j < 4; ++j)
            EXPECT_NEAR(a[j], back[j], 1e-9) << j;
    }
    // Oversized commands saturate
    ControlInput big;
    big.velocity = Vec3{3, 0, 2};
    big.yaw_rate = -10;
    EXPECT_EQ((Action{{1, 0, 1, -1}}), action_for_command(big, b));
}

TEST(ActionBoundsTest, validation)
{
    ActionBounds b;
    EXPECT_NO_THROW(b.validate());
    b.max_heading = 0;
    EXPECT_THROW(b.validate(), std::invalid_argument);
    EXPECT_EQ((Action{{-1, 0, 0, 0}}), Action::hover());
    ControlInput h = map_action(Action::hover());
    EXPECT_EQ(Vec3::Zero(), h.velocity);
}

}  // namespace
}  // namespace aeropush
