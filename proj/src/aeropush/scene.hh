// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/scene.hh
//---------------------------------------------------------------------------//
#pragma once

#include <vector>

#include "geometry.hh"
#include "rng.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
/*!
 * Room, table, object and contact parameters for one environment.
 *
 * World frame: origin at the center of the room floor, z up. The room spans
 * [-room_half_extent, room_half_extent] in x and y and [0, room_height] in
 * z. The table is a solid box from the floor to \c table_height whose
 * footprint is centered at \c table_center (z ignored).
 */
struct SceneParams
{
    double room_half_extent{2.5};
    double room_height{5.0};
    Vec3 table_center{Vec3::Zero()};
    Vec2 table_top_size{0.8, 0.8};
    double table_height{0.5};
    double object_edge{0.1};
    double object_mass{0.5};
    double friction_mu{0.4};
    double gravity{9.81};

    // Penalty contact stiffness [N/m]
    double contact_stiffness{2000.0};
    // Normal contact damping as a fraction of critical; 0 is a pure spring
    double contact_damping_ratio{1.0};
    // Speeds below this are treated as rest [m/s]
    double stiction_speed{1e-3};
    // Angular analogue [rad/s]
    double stiction_yaw_rate{1e-2};
    // Largest internal contact substep [s]
    double max_contact_substep{0.01};

    // Distance between the two alternating goal endpoints
    double goal_separation{0.5};
    // Minimum separation of consecutive random goals
    double min_goal_separation{0.15};
    // Object-to-goal planar distance that counts as completion
    double goal_completion_radius{0.025};

    double table_top_z() const { return table_height; }
    //! Object center height while resting on the table
    double object_rest_z() const { return table_height + object_edge / 2; }

    // Throws std::invalid_argument on violated invariants
    void validate() const;
};

//---------------------------------------------------------------------------//
/*!
 * Collision and sensor geometry of the vehicle.
 *
 * The exposed arm is a capsule centered at \c arm_offset_body, lying along
 * the body x axis. Frame M shares the body orientation.
 */
struct VehicleGeometry
{
    double body_radius{0.25};
    Vec3 arm_offset_body{0.375, 0.0, -0.25};
    double arm_exposed_length{0.25};
    double arm_radius{0.01};
    Pose camera_pose_body{Vec3{0.15, 0.0, -0.05},
                          rotation_from_euler(0.0, 0.35, 0.0)};

    void validate() const;
};

//---------------------------------------------------------------------------//
struct GoalSpec
{
    Vec3 position{Vec3::Zero()};
    double completion_radius{0.025};
};

//---------------------------------------------------------------------------//
// Friction per environment: half evenly spaced in each training range
std::vector<double> friction_schedule(int n_envs);

// The two fixed endpoints (-x first) of the alternating task
std::pair<GoalSpec, GoalSpec> goal_endpoints(SceneParams const& scene);

// The endpoint opposite (farther from) the current goal
GoalSpec alternating_goal(GoalSpec const& current, SceneParams const& scene);

// Uniform goal over the inset table top, at least min_goal_separation away
GoalSpec random_goal(CounterRng& rng,
                     SceneParams const& scene,
                     GoalSpec const& previous);

// Whether a planar point lies in the table footprint
bool over_table(SceneParams const& scene, Vec3 const& p);

//---------------------------------------------------------------------------//
}  // namespace aeropush
