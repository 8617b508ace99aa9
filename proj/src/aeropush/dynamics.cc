// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/dynamics.cc
//---------------------------------------------------------------------------//
#include "dynamics.hh"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace aeropush
{
namespace
{
//---------------------------------------------------------------------------//
// Mean distance from the center of a square of unit side to its points
constexpr double square_mean_radius = 0.38259785823210635;

//---------------------------------------------------------------------------//
double object_reach(VehicleGeometry const& g, SceneParams const& s)
{
    double const arm_reach = g.arm_offset_body.norm()
                             + g.arm_exposed_length / 2 + g.arm_radius;
    return std::max(arm_reach, g.body_radius)
           + std::sqrt(3.0) * s.object_edge / 2;
}

//---------------------------------------------------------------------------//
std::optional<ObjectContact> object_contact(Vec3 const& body,
                                            Rotation const& orientation,
                                            VehicleGeometry const& geom,
                                            ObjectState const& object,
                                            SceneParams const& scene)
{
    if ((body - object.position).norm() > object_reach(geom, scene))
    {
        return std::nullopt;
    }
    YawBox const box = object_box(object, scene);
    Vec3 const center = body + orientation * geom.arm_offset_body;
    Vec3 const half_axis = orientation.col(0) * (geom.arm_exposed_length / 2);

    std::optional<ObjectContact> best;
    auto consider = [&](CapsuleBoxContact const& c, ObjectContact::Source src) {
        if (c.touching && (!best || c.penetration > best->penetration))
        {
            best = ObjectContact{src, c.point, c.normal, c.penetration};
        }
    };
    consider(capsule_box_contact(center - half_axis, center + half_axis,
                                 geom.arm_radius, box),
             ObjectContact::Source::arm);
    consider(capsule_box_contact(body, body, geom.body_radius, box),
             ObjectContact::Source::cage);
    return best;
}

//---------------------------------------------------------------------------//
bool sphere_hits_room(Vec3 const& p, double r, SceneParams const& s)
{
    double const h = s.room_half_extent;
    return p.z() - r < 0 || p.z() + r > s.room_height || p.x() - r < -h
           || p.x() + r > h || p.y() - r < -h || p.y() + r > h;
}

bool environment_collision(VehicleState const& v,
                           VehicleGeometry const& g,
                           SceneParams const& s)
{
    YawBox const table = table_box(s);
    Vec3 const center = v.position + v.orientation * g.arm_offset_body;
    Vec3 const half_axis = v.orientation.col(0) * (g.arm_exposed_length / 2);
    Vec3 const arm_a = center - half_axis;
    Vec3 const arm_b = center + half_axis;

    if (sphere_hits_room(v.position, g.body_radius, s)
        || sphere_hits_room(arm_a, g.arm_radius, s)
        || sphere_hits_room(arm_b, g.arm_radius, s))
    {
        return true;
    }
    if (segment_box_distance(v.position, v.position, table).distance
        < g.body_radius)
    {
        return true;
    }
    return segment_box_distance(arm_a, arm_b, table).distance < g.arm_radius;
}

//---------------------------------------------------------------------------//
/*!
 * One Coulomb update of a scalar-or-vector rate under an applied load.
 *
 * Returns the new rate and the displacement over the step. Friction is
 * integrated exactly (constant deceleration); the applied load is
 * integrated symplectically so penalty springs stay stable.
 */
template<class T>
struct CoulombUpdate
{
    T rate;
    T displacement;
};

template<class T>
CoulombUpdate<T> coulomb_update(T const& rate,
                                T const& load,
                                double load_limit,
                                double inertia,
                                double rest_threshold,
                                double dt,
                                T const& zero)
{
    auto norm = [](T const& x) {
        if constexpr (std::is_same_v<T, double>)
            return std::abs(x);
        else
            return x.norm();
    };
    auto dot = [](T const& x, T const& y) {
        if constexpr (std::is_same_v<T, double>)
            return x * y;
        else
            return x.dot(y);
    };

    double const speed = norm(rate);
    double const load_mag = norm(load);
    if (speed < rest_threshold)
    {
        if (load_mag <= load_limit)
        {
            return {zero, zero};
        }
        // Breakaway: friction opposes the impending motion
        T const dir = load / load_mag;
        T const acc = load / inertia + dir * (-load_limit / inertia);
        T const next = rate + acc * dt;
        return {next, next * dt - acc * (0.5 * dt * dt)};
    }

    T const dir = rate / speed;
    T const fric_acc = dir * (-load_limit / inertia);
    T const total_acc = load / inertia + fric_acc;
    T next = rate + total_acc * dt;
    if (dot(next, dir) <= 0 && load_mag <= load_limit)
    {
        // Motion stops inside the step and static friction then holds
        double const decel = -dot(total_acc, dir);
        double const t_stop = std::min(dt, speed / decel);
        return {zero, rate * (0.5 * t_stop)};
    }
    return {next, next * dt - total_acc * (0.5 * dt * dt)};
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
YawBox object_box(ObjectState const& object, SceneParams const& scene)
{
    double const h = scene.object_edge / 2;
    return {object.position, object.yaw, Vec3{h, h, h}};
}

//---------------------------------------------------------------------------//
YawBox table_box(SceneParams const& scene)
{
    Vec3 const c = scene.table_center;
    return {Vec3{c.x(), c.y(), scene.table_height / 2},
            0.0,
            Vec3{scene.table_top_size.x() / 2,
                 scene.table_top_size.y() / 2,
                 scene.table_height / 2}};
}

//---------------------------------------------------------------------------//
Vec3 arm_center(VehicleState const& v, VehicleGeometry const& g)
{
    return v.position + v.orientation * g.arm_offset_body;
}

//---------------------------------------------------------------------------//
/*!
 * First-order tracking of the commanded velocity and yaw rate.
 *
 * Roll and pitch follow the commanded horizontal acceleration
 * a_h = (v_d - v) / tau: the thrust vector tilts by atan(|a_h| / g), capped,
 * toward a_h. Position integrates the updated velocity (semi-implicit), so
 * the vehicle moves at constant velocity within the step.
 */
VehicleState vehicle_step(VehicleState const& state,
                          ControlInput const& u,
                          double dt,
                          ControllerParams const& params)
{
    double const alpha = std::min(dt / params.velocity_lag, 1.0);
    Vec3 const dv = alpha * (u.velocity - state.velocity);

    VehicleState next = state;
    next.velocity = state.velocity + dv;
    next.yaw_rate = state.yaw_rate + alpha * (u.yaw_rate - state.yaw_rate);

    double roll = 0, pitch = 0;
    Vec2 const accel = dv.head<2>() / dt;
    double const amag = accel.norm();
    if (amag > 0)
    {
        double const tilt
            = std::min(std::atan(amag / params.gravity), params.max_tilt);
        pitch = tilt * accel.x() / amag;
        roll = -tilt * accel.y() / amag;
    }
    double const yaw = wrap_angle(state.yaw + dt * next.yaw_rate);
    next.set_attitude(roll, pitch, yaw);

    // Euler rates -> body rates
    double const roll_dot = (roll - state.roll) / dt;
    double const pitch_dot = (pitch - state.pitch) / dt;
    double const yaw_dot = next.yaw_rate;
    double const sr = std::sin(roll), cr = std::cos(roll);
    double const sp = std::sin(pitch), cp = std::cos(pitch);
    next.angular_velocity = Vec3{roll_dot - sp * yaw_dot,
                                 cr * pitch_dot + sr * cp * yaw_dot,
                                 -sr * pitch_dot + cr * cp * yaw_dot};

    next.position = state.position + dt * next.world_velocity();
    return next;
}

//---------------------------------------------------------------------------//
ContactReport contact_query(VehicleState const& vehicle,
                            VehicleGeometry const& geom,
                            ObjectState const& object,
                            SceneParams const& scene)
{
    ContactReport report;
    report.arm_object = object_contact(
        vehicle.position, vehicle.orientation, geom, object, scene);
    report.vehicle_env_collision = environment_collision(vehicle, geom, scene);
    report.object_on_table = object.on_table;
    return report;
}

//---------------------------------------------------------------------------//
/*!
 * Penalty push (spring on the penetration plus a damper on the closing speed,
 * along the planar contact normal) against
 * Coulomb friction, translational and about the vertical axis. Off the
 * table the object falls ballistically and comes to rest on the floor.
 */
ObjectState object_step(ObjectState const& object,
                        ContactReport const& contact,
                        SceneParams const& scene,
                        double dt)
{
    ObjectState next = object;
    double const half = scene.object_edge / 2;

    if (!object.on_table)
    {
        if (object.position.z() <= half && object.velocity.z() <= 0)
        {
            next.position.z() = half;
            next.velocity = Vec3::Zero();
            next.yaw_rate = 0;
            return next;
        }
        Vec3 const g{0, 0, -scene.gravity};
        next.velocity = object.velocity + g * dt;
        next.position
            = object.position + 0.5 * dt * (object.velocity + next.velocity);
        if (next.position.z() < half)
        {
            next.position.z() = half;
            next.velocity = Vec3::Zero();
            next.yaw_rate = 0;
        }
        return next;
    }

    double const m = scene.object_mass;
    double const normal_force = scene.friction_mu * m * scene.gravity;

    Vec2 force = Vec2::Zero();
    double torque = 0;
    if (contact.arm_object)
    {
        auto const& c = *contact.arm_object;
        Vec2 const n = c.normal.head<2>();
        double push = scene.contact_stiffness * c.penetration;
        if (scene.contact_damping_ratio > 0)
        {
            // Backward-Euler damper on the normal closing speed: stable for
            // any substep and never overshoots the pusher's speed
            double const damping = 2 * scene.contact_damping_ratio
                                   * std::sqrt(scene.contact_stiffness * m);
            double const closing
                = (c.surface_velocity - object.velocity).head<2>().dot(n);
            push += closing * damping / (1 + damping * dt / m);
        }
        force = std::max(push, 0.0) * n;
        Vec2 const lever = (c.point - object.position).head<2>();
        torque = lever.x() * force.y() - lever.y() * force.x();
    }

    auto const lin = coulomb_update<Vec2>(object.velocity.head<2>(),
                                          force,
                                          normal_force,
                                          m,
                                          scene.stiction_speed,
                                          dt,
                                          Vec2::Zero());
    double const edge = scene.object_edge;
    auto const rot = coulomb_update<double>(object.yaw_rate,
                                            torque,
                                            normal_force * square_mean_radius
                                                * edge,
                                            m * edge * edge / 6,
                                            scene.stiction_yaw_rate,
                                            dt,
                                            0.0);

    next.velocity = Vec3{lin.rate.x(), lin.rate.y(), 0.0};
    next.position.head<2>() += lin.displacement;
    next.position.z() = scene.object_rest_z();
    next.yaw_rate = rot.rate;
    next.yaw = wrap_angle(object.yaw + rot.displacement);
    next.on_table = over_table(scene, next.position);
    return next;
}

//---------------------------------------------------------------------------//
/*!
 * The vehicle moves at constant velocity and yaw rate within a step, so the
 * object is integrated over substeps against the interpolated vehicle pose.
 */
EnvStepResult env_step(World const& world,
                       EnvState const& state,
                       ControlInput const& u,
                       double dt)
{
    VehicleState const& v0 = state.vehicle;
    VehicleState const v1
        = vehicle_step(v0, u, dt, world.controller);

    int const substeps = std::max(
        1,
        static_cast<int>(std::ceil(dt / world.scene.max_contact_substep - 1e-9)));
    double const h = dt / substeps;
    double const dyaw = dt * v1.yaw_rate;
    double const reach = object_reach(world.geometry, world.scene);

    ObjectState object = state.object;
    ContactReport sub;
    Vec3 prev_body = v0.position;
    Rotation prev_orient = v0.orientation;
    for (int k = 1; k <= substeps; ++k)
    {
        double const f = static_cast<double>(k) / substeps;
        Vec3 const body = v0.position + f * (v1.position - v0.position);
        // Attitude sweeps with the position so tilt changes do not
        // teleport the arm
        Rotation const orient
            = (k == substeps)
                  ? v1.orientation
                  : rotation_from_euler(v0.roll + f * (v1.roll - v0.roll),
                                        v0.pitch + f * (v1.pitch - v0.pitch),
                                        v0.yaw + f * dyaw);
        sub.arm_object.reset();
        if ((body - object.position).norm() <= reach)
        {
            sub.arm_object = object_contact(
                body, orient, world.geometry, object, world.scene);
            if (sub.arm_object)
            {
                // Velocity of the vehicle-fixed point now at the contact
                Vec3 const p = sub.arm_object->point;
                Vec3 const before
                    = prev_body + prev_orient * (orient.transpose() * (p - body));
                sub.arm_object->surface_velocity = (p - before) / h;
            }
        }
        object = object_step(object, sub, world.scene, h);
        prev_body = body;
        prev_orient = orient;
    }

    EnvStepResult result;
    result.state.vehicle = v1;
    result.state.object = object;
    result.contact = contact_query(v1, world.geometry, object, world.scene);
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
