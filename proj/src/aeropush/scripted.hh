// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/scripted.hh
//---------------------------------------------------------------------------//
#pragma once

#include "action.hh"
#include "observation.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
/*!
 * Approach-and-push baseline tuning.
 *
 * The arm tip is placed \c standoff behind the object on the goal line,
 * then driven through the object toward the goal. Repositioning happens at
 * \c transit_height above the object so the arm clears it.
 */
struct ScriptedParams
{
    double standoff{0.15};
    double approach_speed_frac{0.6};
    double push_speed_frac{0.25};
    double align_tolerance{0.02};

    double push_lateral_tolerance{0.04};
    double yaw_tolerance{0.15};
    double push_yaw_tolerance{0.3};
    double height_tolerance{0.05};
    double transit_height{0.25};
    double min_push_speed{0.04};
    double push_gain{0.8};  //!< push speed per meter to the goal
    double position_gain{1.5};
    double lateral_gain{2.0};
    double height_gain{2.0};
    double yaw_gain{1.5};

    // Geometry the policy relies on
    double arm_half_length{0.125};
    double arm_radius{0.01};
    double object_half_edge{0.05};
    double completion_radius{0.025};

    void validate() const;
};

//---------------------------------------------------------------------------//
//! Scripted phases, exposed for diagnostics
enum class ScriptedPhase
{
    at_goal,
    approach,
    descend,
    push
};

struct ScriptedDecision
{
    Action action;
    ScriptedPhase phase{ScriptedPhase::approach};
    Vec2 goal_estimate{Vec2::Zero()};  //!< arm -> goal, frame M
};

//---------------------------------------------------------------------------//
// Stateless policy acting on the observation alone
ScriptedDecision scripted_decision(Observation const& obs,
                                   ScriptedParams const& params,
                                   ActionBounds const& bounds = {});

inline Action scripted_policy(Observation const& obs,
                              ScriptedParams const& params,
                              ActionBounds const& bounds = {})
{
    return scripted_decision(obs, params, bounds).action;
}

// Arm -> goal planar vector recovered from the arm -> goal direction and
// the object -> goal distance
Vec2 estimate_goal(Vec2 const& arm_to_object,
                   Vec2 const& goal_direction,
                   double object_goal_distance);

//---------------------------------------------------------------------------//
}  // namespace aeropush
