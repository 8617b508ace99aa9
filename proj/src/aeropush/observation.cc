// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/observation.cc
//---------------------------------------------------------------------------//
#include "observation.hh"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace aeropush
{
namespace
{
constexpr double no_hit = std::numeric_limits<double>::infinity();

//---------------------------------------------------------------------------//
// Entry distance of a ray into an axis-aligned box, if the origin is outside
double ray_box_entry(Vec3 const& o, Vec3 const& d, Vec3 const& lo, Vec3 const& hi)
{
    double t_near = -no_hit, t_far = no_hit;
    for (int i = 0; i < 3; ++i)
    {
        if (d[i] == 0.0)
        {
            if (o[i] < lo[i] || o[i] > hi[i])
                return no_hit;
            continue;
        }
        double t0 = (lo[i] - o[i]) / d[i];
        double t1 = (hi[i] - o[i]) / d[i];
        if (t0 > t1)
            std::swap(t0, t1);
        t_near = std::max(t_near, t0);
        t_far = std::min(t_far, t1);
    }
    if (t_near > t_far || t_near <= 0)
        return no_hit;
    return t_near;
}

// Exit distance from the inside of an axis-aligned box
double ray_room_exit(Vec3 const& o, Vec3 const& d, Vec3 const& lo, Vec3 const& hi)
{
    double t = no_hit;
    for (int i = 0; i < 3; ++i)
    {
        if (d[i] > 0)
            t = std::min(t, (hi[i] - o[i]) / d[i]);
        else if (d[i] < 0)
            t = std::min(t, (lo[i] - o[i]) / d[i]);
    }
    return t > 0 ? t : no_hit;
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
void CameraModel::validate() const
{
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("camera resolution must be positive");
    if (!(horizontal_fov > 0 && horizontal_fov < std::numbers::pi))
        throw std::invalid_argument("camera field of view must be in (0, pi)");
    if (!(near > 0 && near < far))
        throw std::invalid_argument("camera range requires 0 < near < far");
}

//---------------------------------------------------------------------------//
std::array<double, Observation::scalar_size> Observation::to_array() const
{
    return {roll,
            pitch,
            velocity.x(),
            velocity.y(),
            velocity.z(),
            angular_velocity.x(),
            angular_velocity.y(),
            angular_velocity.z(),
            d_mo,
            u_mo.x(),
            u_mo.y(),
            u_mo.z(),
            d_og_xy,
            delta_d_og_xy,
            u_mg_xy.x(),
            u_mg_xy.y()};
}

Observation Observation::from_array(std::span<double const> v)
{
    if (v.size() != scalar_size)
    {
        throw std::invalid_argument("observation vector must have "
                                    + std::to_string(scalar_size)
                                    + " entries");
    }
    Observation o;
    o.roll = v[0];
    o.pitch = v[1];
    o.velocity = Vec3{v[2], v[3], v[4]};
    o.angular_velocity = Vec3{v[5], v[6], v[7]};
    o.d_mo = v[8];
    o.u_mo = Vec3{v[9], v[10], v[11]};
    o.d_og_xy = v[12];
    o.delta_d_og_xy = v[13];
    o.u_mg_xy = Vec2{v[14], v[15]};
    return o;
}

//---------------------------------------------------------------------------//
Pose camera_world_pose(VehicleState const& vehicle, VehicleGeometry const& geom)
{
    Pose const body{vehicle.position, vehicle.orientation};
    return body.compose(geom.camera_pose_body);
}

//---------------------------------------------------------------------------//
/*!
 * Cast one ray per pixel center against the room interior, the table and
 * the object; keep the nearest hit.
 */
DepthImage render_depth(Pose const& camera_pose,
                        CameraModel const& camera,
                        SceneParams const& scene,
                        ObjectState const& object)
{
    DepthImage img;
    img.width = camera.width;
    img.height = camera.height;
    img.near = camera.near;
    img.far = camera.far;
    img.values.resize(static_cast<std::size_t>(camera.width) * camera.height);

    double const tan_h = std::tan(camera.horizontal_fov / 2);
    double const tan_v = tan_h * camera.height / camera.width;

    Vec3 const o = camera_pose.position;
    Rotation const& r = camera_pose.orientation;

    double const h = scene.room_half_extent;
    Vec3 const room_lo{-h, -h, 0.0}, room_hi{h, h, scene.room_height};
    YawBox const table = table_box(scene);
    Vec3 const table_lo = table.center - table.half_extents;
    Vec3 const table_hi = table.center + table.half_extents;

    // Object ray tests happen in its yaw frame
    double const oc = std::cos(object.yaw), os = std::sin(object.yaw);
    auto to_obj = [&](Vec3 const& v) {
        return Vec3{oc * v.x() + os * v.y(), -os * v.x() + oc * v.y(), v.z()};
    };
    double const he = scene.object_edge / 2;
    Vec3 const obj_half{he, he, he};
    Vec3 const o_local = to_obj(o - object.position);

    for (int row = 0; row < camera.height; ++row)
    {
        double const v = (camera.height / 2.0 - row - 0.5) / (camera.height / 2.0)
                         * tan_v;
        for (int col = 0; col < camera.width; ++col)
        {
            double const u = (col + 0.5 - camera.width / 2.0)
                             / (camera.width / 2.0) * tan_h;
            // Unit optical-axis component: ray parameter equals depth
            Vec3 const d = r * Vec3{1.0, -u, v};
            double t = ray_room_exit(o, d, room_lo, room_hi);
            t = std::min(t, ray_box_entry(o, d, table_lo, table_hi));
            t = std::min(t, ray_box_entry(o_local, to_obj(d), -obj_half, obj_half));
            double const depth = std::isfinite(t)
                                     ? std::clamp(t, camera.near, camera.far)
                                     : camera.far;
            img.values[row * camera.width + col] = static_cast<float>(depth);
        }
    }
    return img;
}

//---------------------------------------------------------------------------//
Observation assemble_observation(EnvState const& state,
                                 World const& world,
                                 Vec3 const& goal,
                                 DistanceSet const& distances,
                                 CameraModel const* camera)
{
    VehicleState const& v = state.vehicle;
    Rotation const& r = v.orientation;
    Vec3 const pm = arm_center(v, world.geometry);

    Observation obs;
    obs.roll = v.roll;
    obs.pitch = v.pitch;
    obs.velocity = r.transpose() * v.world_velocity();
    obs.angular_velocity = v.angular_velocity;

    auto const to_object = direction_and_distance(pm, state.object.position);
    obs.d_mo = to_object.distance;
    // Frame M shares the body orientation
    obs.u_mo = r.transpose() * to_object.unit;

    obs.d_og_xy = distances.d_og_xy;
    obs.delta_d_og_xy = distances.delta_d_og_xy;
    Vec3 const to_goal = r.transpose() * (goal - pm);
    obs.u_mg_xy = planar_unit(to_goal.head<2>());

    if (camera)
    {
        obs.depth = render_depth(camera_world_pose(v, world.geometry),
                                 *camera,
                                 world.scene,
                                 state.object);
    }
    return obs;
}

//---------------------------------------------------------------------------//
void write_depth(std::ostream& os, DepthImage const& image)
{
    char header[160];
    std::snprintf(header,
                  sizeof(header),
                  "aeropush-depth width=%d height=%d near=%.17g far=%.17g "
                  "format=f32le order=row-major\n",
                  image.width,
                  image.height,
                  image.near,
                  image.far);
    os << header;
    std::string bytes(image.values.size() * 4, '\0');
    for (std::size_t i = 0; i < image.values.size(); ++i)
    {
        auto bits = std::bit_cast<std::uint32_t>(image.values[i]);
        for (int b = 0; b < 4; ++b)
        {
            bytes[4 * i + b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
        }
    }
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

//---------------------------------------------------------------------------//
DepthImage read_depth(std::istream& is)
{
    std::string header;
    if (!std::getline(is, header) || header.rfind("aeropush-depth", 0) != 0)
    {
        throw std::runtime_error("not a depth frame");
    }
    DepthImage img;
    std::istringstream fields(header.substr(15));
    std::string field;
    while (fields >> field)
    {
        auto eq = field.find('=');
        if (eq == std::string::npos)
            continue;
        auto key = field.substr(0, eq);
        auto val = field.substr(eq + 1);
        if (key == "width")
            img.width = std::stoi(val);
        else if (key == "height")
            img.height = std::stoi(val);
        else if (key == "near")
            img.near = std::stod(val);
        else if (key == "far")
            img.far = std::stod(val);
    }
    if (img.width <= 0 || img.height <= 0)
    {
        throw std::runtime_error("depth frame header lacks dimensions");
    }
    std::size_t const n = static_cast<std::size_t>(img.width) * img.height;
    std::string bytes(n * 4, '\0');
    if (!is.read(bytes.data(), static_cast<std::streamsize>(bytes.size())))
    {
        throw std::runtime_error("depth frame truncated");
    }
    img.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        std::uint32_t bits = 0;
        for (int b = 0; b < 4; ++b)
        {
            bits |= std::uint32_t{static_cast<unsigned char>(bytes[4 * i + b])}
                    << (8 * b);
        }
        img.values[i] = std::bit_cast<float>(bits);
    }
    return img;
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
