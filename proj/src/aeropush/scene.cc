// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/scene.cc
//---------------------------------------------------------------------------//
#include "scene.hh"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aeropush
{
namespace
{
void require(bool cond, char const* what)
{
    if (!cond)
    {
        throw std::invalid_argument(what);
    }
}

// Inclusive linspace; a single point is the range minimum
void append_linspace(std::vector<double>& out, double lo, double hi, int n)
{
    if (n == 1)
    {
        out.push_back(lo);
        return;
    }
    for (int i = 0; i < n; ++i)
    {
        out.push_back(lo + (hi - lo) * i / (n - 1));
    }
}
}  // namespace

//---------------------------------------------------------------------------//
void SceneParams::validate() const
{
    require(object_edge > 0, "object edge must be positive");
    require(object_mass > 0, "object mass must be positive");
    require(friction_mu > 0 && friction_mu < 2,
            "friction coefficient must be in (0, 2)");
    require(gravity > 0, "gravity must be positive");
    require(table_top_size.x() > 0 && table_top_size.y() > 0,
            "table top must have positive size");
    require(table_height > 0 && table_height + object_edge < room_height,
            "table height must fit in the room");
    require(std::abs(table_center.x()) + table_top_size.x() / 2
                    <= room_half_extent
                && std::abs(table_center.y()) + table_top_size.y() / 2
                       <= room_half_extent,
            "table must fit inside the room");
    require(contact_stiffness > 0, "contact stiffness must be positive");
    require(contact_damping_ratio >= 0, "contact damping must be non-negative");
    require(stiction_speed > 0 && stiction_yaw_rate > 0,
            "stiction thresholds must be positive");
    require(max_contact_substep > 0, "contact substep must be positive");
    require(goal_separation > 0
                && goal_separation + object_edge <= table_top_size.x(),
            "goal endpoints must lie on the table top");
    require(min_goal_separation >= 0, "goal separation must be non-negative");
    require(goal_completion_radius > 0, "completion radius must be positive");
}

//---------------------------------------------------------------------------//
void VehicleGeometry::validate() const
{
    require(body_radius > 0, "body radius must be positive");
    require(arm_exposed_length > 0, "arm length must be positive");
    require(arm_radius > 0, "arm radius must be positive");
}

//---------------------------------------------------------------------------//
/*!
 * The first half covers [0.05, 0.3] and the second [0.55, 0.8], each as an
 * inclusive linspace, so the result is sorted.
 */
std::vector<double> friction_schedule(int n_envs)
{
    if (n_envs < 2 || n_envs % 2 != 0)
    {
        throw std::invalid_argument(
            "friction schedule needs an even number of environments, got "
            + std::to_string(n_envs));
    }
    std::vector<double> result;
    result.reserve(n_envs);
    append_linspace(result, 0.05, 0.3, n_envs / 2);
    append_linspace(result, 0.55, 0.8, n_envs / 2);
    return result;
}

//---------------------------------------------------------------------------//
std::pair<GoalSpec, GoalSpec> goal_endpoints(SceneParams const& scene)
{
    double const half = scene.goal_separation / 2;
    double const z = scene.object_rest_z();
    Vec3 const c = scene.table_center;
    return {GoalSpec{Vec3{c.x() - half, c.y(), z}, scene.goal_completion_radius},
            GoalSpec{Vec3{c.x() + half, c.y(), z},
                     scene.goal_completion_radius}};
}

//---------------------------------------------------------------------------//
GoalSpec alternating_goal(GoalSpec const& current, SceneParams const& scene)
{
    auto [lo, hi] = goal_endpoints(scene);
    double const d_lo = (current.position - lo.position).squaredNorm();
    double const d_hi = (current.position - hi.position).squaredNorm();
    return d_lo >= d_hi ? lo : hi;
}

//---------------------------------------------------------------------------//
/*!
 * Rejection sampling over the table top inset by half an object edge.
 */
GoalSpec random_goal(CounterRng& rng,
                     SceneParams const& scene,
                     GoalSpec const& previous)
{
    double const inset = scene.object_edge / 2;
    double const hx = scene.table_top_size.x() / 2 - inset;
    double const hy = scene.table_top_size.y() / 2 - inset;
    if (hx <= 0 || hy <= 0)
    {
        throw std::invalid_argument("table top too small for the object");
    }
    Vec3 const c = scene.table_center;
    Vec2 const prev = previous.position.head<2>();
    for (int attempt = 0; attempt < 1000; ++attempt)
    {
        Vec2 const p{c.x() + rng.uniform(-hx, hx), c.y() + rng.uniform(-hy, hy)};
        if ((p - prev).norm() >= scene.min_goal_separation)
        {
            return GoalSpec{Vec3{p.x(), p.y(), scene.object_rest_z()},
                            scene.goal_completion_radius};
        }
    }
    throw std::runtime_error(
        "random goal: no admissible point after 1000 rejections");
}

//---------------------------------------------------------------------------//
bool over_table(SceneParams const& scene, Vec3 const& p)
{
    Vec3 const c = scene.table_center;
    return std::abs(p.x() - c.x()) <= scene.table_top_size.x() / 2
           && std::abs(p.y() - c.y()) <= scene.table_top_size.y() / 2;
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
