// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/geometry.hh
//---------------------------------------------------------------------------//
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace aeropush
{
//---------------------------------------------------------------------------//
using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

//! Proper rotation stored as a 3x3 orthonormal matrix (columns are body axes)
using Rotation = Eigen::Matrix3d;

//---------------------------------------------------------------------------//
/*!
 * Rigid placement of a frame in its parent frame.
 */
struct Pose
{
    Vec3 position{Vec3::Zero()};
    Rotation orientation{Rotation::Identity()};

    //! Map a point expressed in this frame into the parent frame
    Vec3 transform(Vec3 const& local) const
    {
        return position + orientation * local;
    }

    //! Compose: child pose expressed in this frame -> parent frame
    Pose compose(Pose const& child) const
    {
        return {this->transform(child.position),
                orientation * child.orientation};
    }
};

//---------------------------------------------------------------------------//
struct DirectionDistance
{
    Vec3 unit{Vec3::Zero()};
    double distance{0};
};

//---------------------------------------------------------------------------//
// Distances below this are treated as coincident points
inline constexpr double coincident_tolerance = 1e-9;

// Intrinsic Z-Y-X (yaw, then pitch, then roll) rotation
Rotation rotation_from_euler(double roll, double pitch, double yaw);

// Pure rotation about the world z axis
Rotation rotation_from_yaw(double yaw);

// |1 - e3^T R e3|: zero when the body z axis is vertical
double tilt_metric(Rotation const& r);

// Unit vector and distance; the unit vector is zero for coincident points
DirectionDistance direction_and_distance(Vec3 const& from, Vec3 const& to);

// Planar (x, y) analogue with the same zero convention
Vec2 planar_unit(Vec2 const& v);

// Wrap an angle into (-pi, pi]
double wrap_angle(double angle);

//---------------------------------------------------------------------------//
}  // namespace aeropush
