// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/dynamics.hh
//---------------------------------------------------------------------------//
#pragma once

#include <optional>

#include "collide.hh"
#include "geometry.hh"
#include "scene.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
/*!
 * Kinematic stand-in for the vehicle's velocity controller.
 */
struct ControllerParams
{
    double velocity_lag{0.3};  //!< first-order time constant [s]
    double max_tilt{0.3};  //!< roll/pitch magnitude cap [rad]
    double gravity{9.81};
};

//---------------------------------------------------------------------------//
/*!
 * Quadrotor state.
 *
 * \c velocity is expressed in the heading frame (body yaw only), the frame
 * in which velocity commands are tracked. \c angular_velocity is in the
 * body frame. \c orientation is kept consistent with the Euler angles.
 */
struct VehicleState
{
    Vec3 position{Vec3::Zero()};
    double roll{0};
    double pitch{0};
    double yaw{0};
    Rotation orientation{Rotation::Identity()};
    Vec3 velocity{Vec3::Zero()};
    double yaw_rate{0};
    Vec3 angular_velocity{Vec3::Zero()};

    void set_attitude(double r, double p, double y)
    {
        roll = r;
        pitch = p;
        yaw = y;
        orientation = rotation_from_euler(r, p, y);
    }

    //! Velocity in the world frame
    Vec3 world_velocity() const { return rotation_from_yaw(yaw) * velocity; }
};

//---------------------------------------------------------------------------//
struct ObjectState
{
    Vec3 position{Vec3::Zero()};
    double yaw{0};
    Vec3 velocity{Vec3::Zero()};  //!< world frame
    double yaw_rate{0};
    bool on_table{true};
};

//---------------------------------------------------------------------------//
struct ObjectContact
{
    enum class Source
    {
        arm,
        cage
    };
    Source source{Source::arm};
    Vec3 point{Vec3::Zero()};
    Vec3 normal{Vec3::Zero()};  //!< push direction on the object
    double penetration{0};
    //! World velocity of the pushing surface at the contact point
    Vec3 surface_velocity{Vec3::Zero()};
};

struct ContactReport
{
    std::optional<ObjectContact> arm_object;
    bool vehicle_env_collision{false};
    bool object_on_table{true};
};

//---------------------------------------------------------------------------//
struct ControlInput
{
    Vec3 velocity{Vec3::Zero()};  //!< desired, heading frame [m/s]
    double yaw_rate{0};  //!< desired [rad/s]
};

//---------------------------------------------------------------------------//
//! Immutable per-environment world description
struct World
{
    SceneParams scene;
    VehicleGeometry geometry;
    ControllerParams controller;
};

//! Mutable physical state of one environment
struct EnvState
{
    VehicleState vehicle;
    ObjectState object;
};

struct EnvStepResult
{
    EnvState state;
    ContactReport contact;
};

//---------------------------------------------------------------------------//
// Arm center p_m in the world frame
Vec3 arm_center(VehicleState const& v, VehicleGeometry const& g);

// Advance the vehicle under a velocity command
VehicleState vehicle_step(VehicleState const& state,
                          ControlInput const& u,
                          double dt,
                          ControllerParams const& params = {});

// Deepest vehicle/object penetration and vehicle/environment overlap
ContactReport contact_query(VehicleState const& vehicle,
                            VehicleGeometry const& geom,
                            ObjectState const& object,
                            SceneParams const& scene);

// Advance the object under penalty push force and Coulomb friction
ObjectState object_step(ObjectState const& object,
                        ContactReport const& contact,
                        SceneParams const& scene,
                        double dt);

// Vehicle step, then contact substeps along the vehicle's path
EnvStepResult env_step(World const& world,
                       EnvState const& state,
                       ControlInput const& u,
                       double dt);

// Object box used for contact and rendering
YawBox object_box(ObjectState const& object, SceneParams const& scene);

// Solid table box (floor to top)
YawBox table_box(SceneParams const& scene);

//---------------------------------------------------------------------------//
}  // namespace aeropush
