// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/geometry.cc
//---------------------------------------------------------------------------//
#include "geometry.hh"

#include <cmath>
#include <numbers>

namespace aeropush
{
//---------------------------------------------------------------------------//
/*!
 * Build R = Rz(yaw) * Ry(pitch) * Rx(roll).
 *
 * Positive pitch tips the body x axis toward -z (nose down); positive roll
 * tips the body y axis toward +z.
 */
Rotation rotation_from_euler(double roll, double pitch, double yaw)
{
    double const cr = std::cos(roll), sr = std::sin(roll);
    double const cp = std::cos(pitch), sp = std::sin(pitch);
    double const cy = std::cos(yaw), sy = std::sin(yaw);

    Rotation r;
    r << cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr,  //
        sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr,  //
        -sp, cp * sr, cp * cr;
    return r;
}

//---------------------------------------------------------------------------//
Rotation rotation_from_yaw(double yaw)
{
    double const c = std::cos(yaw), s = std::sin(yaw);
    Rotation r;
    r << c, -s, 0, s, c, 0, 0, 0, 1;
    return r;
}

//---------------------------------------------------------------------------//
double tilt_metric(Rotation const& r)
{
    // e3^T R e3 is the (2, 2) element
    return std::abs(1.0 - r(2, 2));
}

//---------------------------------------------------------------------------//
DirectionDistance direction_and_distance(Vec3 const& from, Vec3 const& to)
{
    Vec3 const delta = to - from;
    double const dist = delta.norm();
    if (dist < coincident_tolerance)
    {
        return {Vec3::Zero(), dist};
    }
    return {delta / dist, dist};
}

//---------------------------------------------------------------------------//
Vec2 planar_unit(Vec2 const& v)
{
    double const n = v.norm();
    if (n < coincident_tolerance)
    {
        return Vec2::Zero();
    }
    return v / n;
}

//---------------------------------------------------------------------------//
double wrap_angle(double angle)
{
    constexpr double two_pi = 2 * std::numbers::pi;
    double a = std::remainder(angle, two_pi);
    if (a <= -std::numbers::pi)
    {
        a += two_pi;
    }
    return a;
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
