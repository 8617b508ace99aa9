// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/scripted.cc
//---------------------------------------------------------------------------//
#include "scripted.hh"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aeropush
{
//---------------------------------------------------------------------------//
void ScriptedParams::validate() const
{
    if (!(standoff > object_half_edge))
    {
        throw std::invalid_argument("standoff must exceed half the object edge");
    }
    for (double f : {approach_speed_frac, push_speed_frac})
    {
        if (!(f >= 0 && f <= 1))
            throw std::invalid_argument("speed fractions must be in [0, 1]");
    }
    if (!(align_tolerance > 0))
    {
        throw std::invalid_argument("alignment tolerance must be positive");
    }
}

//---------------------------------------------------------------------------//
/*!
 * The goal lies on the ray from the arm along \c goal_direction at planar
 * distance \c object_goal_distance from the object. When the arm is inside
 * that circle the intersection is unique; otherwise the far intersection is
 * taken, which is correct whenever the object sits between arm and goal.
 */
Vec2 estimate_goal(Vec2 const& arm_to_object,
                   Vec2 const& goal_direction,
                   double object_goal_distance)
{
    if (goal_direction.squaredNorm() == 0)
    {
        return Vec2::Zero();
    }
    double const proj = goal_direction.dot(arm_to_object);
    double const disc = proj * proj - arm_to_object.squaredNorm()
                        + object_goal_distance * object_goal_distance;
    double const range = disc < 0 ? std::max(proj, 0.0)
                                  : std::max(proj + std::sqrt(disc), 0.0);
    return range * goal_direction;
}

//---------------------------------------------------------------------------//
ScriptedDecision scripted_decision(Observation const& obs,
                                   ScriptedParams const& p,
                                   ActionBounds const& bounds)
{
    ScriptedDecision out;
    if (obs.d_og_xy < p.completion_radius)
    {
        out.action = Action::hover();
        out.phase = ScriptedPhase::at_goal;
        return out;
    }

    // Planar geometry in frame M (x forward along the arm)
    Vec2 const to_object = obs.d_mo * obs.u_mo.head<2>();
    double const object_above_arm = obs.d_mo * obs.u_mo.z();
    Vec2 const goal = estimate_goal(to_object, obs.u_mg_xy, obs.d_og_xy);
    out.goal_estimate = goal;

    Vec2 const push_dir = planar_unit(goal - to_object);
    if (push_dir.squaredNorm() == 0)
    {
        out.action = Action::hover();
        out.phase = ScriptedPhase::at_goal;
        return out;
    }
    Vec2 const side{-push_dir.y(), push_dir.x()};
    Vec2 const tip{p.arm_half_length, 0.0};
    Vec2 const tip_rel = tip - to_object;
    double const along = tip_rel.dot(push_dir);
    double const lateral = tip_rel.dot(side);
    double const yaw_error = std::atan2(push_dir.y(), push_dir.x());

    double const contact_along = -(p.object_half_edge + p.arm_radius);
    bool const in_push_region
        = std::abs(lateral) < p.push_lateral_tolerance
          && along < contact_along + 0.02
          && std::abs(yaw_error) < p.push_yaw_tolerance
          && std::abs(object_above_arm) < p.height_tolerance;

    double const s_xy = bounds.max_planar_speed;
    Vec2 planar = Vec2::Zero();
    double height_error = object_above_arm;  // drive arm to object height

    if (in_push_region)
    {
        out.phase = ScriptedPhase::push;
        double const gap = std::max(contact_along - along, 0.0);
        double speed = std::clamp(
            p.push_gain * obs.d_og_xy, p.min_push_speed, p.push_speed_frac * s_xy);
        speed = std::min(speed + p.position_gain * gap,
                         p.approach_speed_frac * s_xy);
        planar = speed * push_dir - p.lateral_gain * lateral * side;
    }
    else
    {
        Vec2 const standoff = to_object - p.standoff * push_dir;
        Vec2 const to_target = standoff - tip;
        double const dist = to_target.norm();
        bool const near = dist < p.align_tolerance
                          && std::abs(yaw_error) < p.yaw_tolerance;
        out.phase = near ? ScriptedPhase::descend : ScriptedPhase::approach;
        if (!near)
        {
            // arm - object height should reach transit_height
            height_error = p.transit_height + object_above_arm;
        }
        double speed
            = std::min(p.approach_speed_frac * s_xy, p.position_gain * dist);
        bool const low = std::abs(height_error) > p.height_tolerance;
        if (!near && low && tip_rel.norm() < 2 * p.transit_height)
        {
            // Climb before sweeping past the object
            speed *= 0.25;
        }
        if (dist > 0)
        {
            planar = speed * to_target / dist;
        }
    }

    ControlInput u;
    u.velocity = Vec3{planar.x(), planar.y(), p.height_gain * height_error};
    u.yaw_rate = p.yaw_gain * yaw_error;
    out.action = action_for_command(u, bounds);
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
