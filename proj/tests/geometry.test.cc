// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/geometry.test.cc
//---------------------------------------------------------------------------//
#include "aeropush/geometry.hh"

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "aeropush/rng.hh"

namespace aeropush
{
namespace
{
constexpr double pi = std::numbers::pi;

Vec3 random_vec(CounterRng& rng, double scale)
{
    return Vec3{rng.uniform(-scale, scale),
                rng.uniform(-scale, scale),
                rng.uniform(-scale, scale)};
}

TEST(RotationTest, identity)
{
    EXPECT_TRUE(rotation_from_euler(0, 0, 0).isApprox(Rotation::Identity(), 0));
}

TEST(RotationTest, roll_quarter_turn)
{
    Vec3 const out = rotation_from_euler(pi / 2, 0, 0) * Vec3{0, 1, 0};
    EXPECT_NEAR(out.x(), 0.0, 1e-15);
    EXPECT_NEAR(out.y(), 0.0, 1e-15);
    EXPECT_NEAR(out.z(), 1.0, 1e-15);
}

TEST(RotationTest, matches_axis_angle_composition)
{
    CounterRng rng(7, 0, 0);
    for (int i = 0; i < 100; ++i)
    {
        double r = rng.uniform(-pi, pi), p = rng.uniform(-pi, pi),
               y = rng.uniform(-pi, pi);
        Rotation expected
            = (Eigen::AngleAxisd(y, Vec3::UnitZ())
               * Eigen::AngleAxisd(p, Vec3::UnitY())
               * Eigen::AngleAxisd(r, Vec3::UnitX()))
                  .toRotationMatrix();
        EXPECT_TRUE(rotation_from_euler(r, p, y).isApprox(expected, 1e-14));
    }
}

TEST(RotationTest, preserves_norm)
{
    CounterRng rng(8, 0, 0);
    for (int i = 0; i < 1000; ++i)
    {
        Rotation m = rotation_from_euler(
            rng.uniform(-pi, pi), rng.uniform(-pi, pi), rng.uniform(-pi, pi));
        Vec3 v = random_vec(rng, 10);
        EXPECT_NEAR((m * v).norm(), v.norm(), 1e-9);
    }
}

TEST(TiltTest, examples)
{
    EXPECT_EQ(0.0, tilt_metric(Rotation::Identity()));
    EXPECT_NEAR(1 - std::cos(pi / 4),
                tilt_metric(rotation_from_euler(0, pi / 4, 0)),
                1e-15);
    EXPECT_NEAR(0.29289321881345243,
                tilt_metric(rotation_from_euler(0, pi / 4, 0)),
                1e-12);
    EXPECT_NEAR(1.0, tilt_metric(rotation_from_euler(pi / 2, 0, 0)), 1e-15);
    for (double theta : {0.1, 0.3, 1.0, 2.0})
    {
        EXPECT_NEAR(1 - std::cos(theta),
                    tilt_metric(rotation_from_euler(0, theta, 0)),
                    1e-15);
    }
}

TEST(TiltTest, yaw_invariant)
{
    CounterRng rng(9, 0, 0);
    for (int i = 0; i < 100; ++i)
    {
        double r = rng.uniform(-pi, pi), p = rng.uniform(-pi, pi),
               y = rng.uniform(-pi, pi);
        Rotation m = rotation_from_euler(r, p, 0);
        double base = tilt_metric(m);
        EXPECT_NEAR(base, tilt_metric(rotation_from_yaw(y) * m), 1e-12);
        EXPECT_NEAR(base, tilt_metric(m * rotation_from_yaw(y)), 1e-12);
        EXPECT_GE(base, 0.0);
        EXPECT_LE(base, 2.0);
    }
}

TEST(DirectionTest, examples)
{
    auto dd = direction_and_distance(Vec3::Zero(), Vec3{2, 0, 0});
    EXPECT_EQ(Vec3(1, 0, 0), dd.unit);
    EXPECT_EQ(2.0, dd.distance);

    dd = direction_and_distance(Vec3{1, 2, 3}, Vec3{1, 2, 3});
    EXPECT_EQ(Vec3::Zero(), dd.unit);
    EXPECT_EQ(0.0, dd.distance);

    dd = direction_and_distance(Vec3{1, 1, 0}, Vec3::Zero());
    EXPECT_NEAR(-std::sqrt(0.5), dd.unit.x(), 1e-15);
    EXPECT_NEAR(-std::sqrt(0.5), dd.unit.y(), 1e-15);
    EXPECT_EQ(0.0, dd.unit.z());
    EXPECT_NEAR(std::sqrt(2.0), dd.distance, 1e-15);
}

TEST(DirectionTest, round_trip)
{
    CounterRng rng(10, 0, 0);
    for (int i = 0; i < 1000; ++i)
    {
        Vec3 from = random_vec(rng, 5), to = random_vec(rng, 5);
        auto dd = direction_and_distance(from, to);
        EXPECT_LT((from + dd.unit * dd.distance - to).norm(), 1e-9);
        EXPECT_NEAR(1.0, dd.unit.norm(), 1e-12);
    }
}

TEST(PlanarUnitTest, zero_and_unit)
{
    EXPECT_EQ(Vec2::Zero(), planar_unit(Vec2::Zero()));
    EXPECT_EQ(Vec2::Zero(), planar_unit(Vec2{1e-12, 0}));
    Vec2 u = planar_unit(Vec2{3, 4});
    EXPECT_NEAR(0.6, u.x(), 1e-15);
    EXPECT_NEAR(0.8, u.y(), 1e-15);
}

TEST(WrapAngleTest, range)
{
    EXPECT_NEAR(pi, wrap_angle(pi), 1e-15);
    EXPECT_NEAR(pi, wrap_angle(-pi), 1e-15);
    EXPECT_NEAR(-pi / 2, wrap_angle(3 * pi / 2), 1e-15);
    EXPECT_NEAR(0.25, wrap_angle(0.25 + 8 * pi), 1e-12);
}

TEST(PoseTest, compose_and_transform)
{
    Pose a{Vec3{1, 0, 0}, rotation_from_yaw(pi / 2)};
    Pose b{Vec3{1, 0, 0}, Rotation::Identity()};
    Pose c = a.compose(b);
    EXPECT_NEAR(1.0, c.position.x(), 1e-15);
    EXPECT_NEAR(1.0, c.position.y(), 1e-15);
    Vec3 p = a.transform(Vec3{0, 1, 0});
    EXPECT_NEAR(0.0, p.x(), 1e-15);
    EXPECT_NEAR(0.0, p.y(), 1e-15);
}

}  // namespace
}  // namespace aeropush
