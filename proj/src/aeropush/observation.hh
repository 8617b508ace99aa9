// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/observation.hh
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <iosfwd>
#include <numbers>
#include <span>
#include <vector>

#include "dynamics.hh"
#include "reward.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
/*!
 * Pinhole depth camera. The optical axis is the camera-frame +x axis, image
 * right is -y and image up is +z. Depth is measured along the optical axis.
 */
struct CameraModel
{
    int width{64};
    int height{64};
    double horizontal_fov{std::numbers::pi / 2};
    double near{0.1};
    double far{5.0};

    void validate() const;
};

//---------------------------------------------------------------------------//
//! Row-major depth grid, pixel (0, 0) at the top left
struct DepthImage
{
    int width{0};
    int height{0};
    double near{0};
    double far{0};
    std::vector<float> values;

    float at(int row, int col) const { return values[row * width + col]; }
    bool empty() const { return values.empty(); }
};

//---------------------------------------------------------------------------//
/*!
 * Agent-facing state. Direction vectors are in frame M (fixed to the
 * vehicle); velocities are in the body frame.
 */
struct Observation
{
    static constexpr int scalar_size = 16;

    double roll{0};
    double pitch{0};
    Vec3 velocity{Vec3::Zero()};
    Vec3 angular_velocity{Vec3::Zero()};
    double d_mo{0};
    Vec3 u_mo{Vec3::Zero()};
    double d_og_xy{0};
    double delta_d_og_xy{0};
    Vec2 u_mg_xy{Vec2::Zero()};
    DepthImage depth;

    //! Scalars in declaration order (depth excluded)
    std::array<double, scalar_size> to_array() const;
    static Observation from_array(std::span<double const> values);
};

//---------------------------------------------------------------------------//
Pose camera_world_pose(VehicleState const& vehicle, VehicleGeometry const& geom);

DepthImage render_depth(Pose const& camera_pose,
                        CameraModel const& camera,
                        SceneParams const& scene,
                        ObjectState const& object);

// Build the observation; distances must be computed against the same goal
Observation assemble_observation(EnvState const& state,
                                 World const& world,
                                 Vec3 const& goal,
                                 DistanceSet const& distances,
                                 CameraModel const* camera);

// Flat little-endian float32 frame preceded by a one-line text header
void write_depth(std::ostream& os, DepthImage const& image);
DepthImage read_depth(std::istream& is);

//---------------------------------------------------------------------------//
}  // namespace aeropush
