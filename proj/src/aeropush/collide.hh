// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/collide.hh
//! Closest-point and penetration queries between swept spheres and boxes.
//---------------------------------------------------------------------------//
#pragma once

#include "geometry.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
/*!
 * Box rotated about the world z axis.
 */
struct YawBox
{
    Vec3 center{Vec3::Zero()};
    double yaw{0};
    Vec3 half_extents{Vec3::Zero()};
};

//---------------------------------------------------------------------------//
/*!
 * Result of a capsule (segment + radius) versus box query, in world frame.
 *
 * \c normal is the direction the box is pushed by the capsule. When the
 * segment enters the box, \c penetration includes the inner depth of the
 * deepest segment point plus the radius and \c normal is opposite the
 * outward normal of the nearest face.
 */
struct CapsuleBoxContact
{
    bool touching{false};
    double distance{0};  //!< segment-to-box distance (0 if intersecting)
    double penetration{0};
    Vec3 point{Vec3::Zero()};  //!< contact point on the box surface
    Vec3 normal{Vec3::Zero()};
};

//---------------------------------------------------------------------------//
// Distance from a segment to a box, with the parameter of the closest point
struct SegmentBoxDistance
{
    double distance{0};
    double t{0};
    Vec3 segment_point{Vec3::Zero()};
    Vec3 box_point{Vec3::Zero()};
};

SegmentBoxDistance
segment_box_distance(Vec3 const& a, Vec3 const& b, YawBox const& box);

// Capsule from a (base end) to b with the given radius
CapsuleBoxContact capsule_box_contact(Vec3 const& a,
                                      Vec3 const& b,
                                      double radius,
                                      YawBox const& box);

//---------------------------------------------------------------------------//
}  // namespace aeropush
