// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/action.hh
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <numbers>

#include "dynamics.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
/*!
 * Agent output in [-1, 1]^4: planar speed, planar direction, vertical
 * speed, yaw rate.
 */
struct Action
{
    std::array<double, 4> a{0, 0, 0, 0};

    double& operator[](int i) { return a[i]; }
    double operator[](int i) const { return a[i]; }
    bool operator==(Action const&) const = default;

    //! Action whose mapped command is zero velocity and yaw rate
    static Action hover() { return Action{{-1.0, 0.0, 0.0, 0.0}}; }
};

//---------------------------------------------------------------------------//
struct ActionBounds
{
    double max_planar_speed{1.0};  //!< s_xy [m/s]
    double max_vertical_speed{0.5};  //!< s_z [m/s]
    double max_heading{std::numbers::pi};  //!< theta_m [rad]
    double max_yaw_rate{std::numbers::pi / 4};  //!< omega_z [rad/s]

    void validate() const;
};

//---------------------------------------------------------------------------//
// Clamp every component into [-1, 1] (NaN maps to 0)
Action clamp_action(Action const& a);

// Planar speed and heading encoding of the velocity command
ControlInput map_action(Action const& a, ActionBounds const& b = {});

// Action reproducing a command; headings beyond theta_m are clamped
Action action_for_command(ControlInput const& u, ActionBounds const& b = {});

//---------------------------------------------------------------------------//
}  // namespace aeropush
