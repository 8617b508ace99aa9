// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/action.cc
//---------------------------------------------------------------------------//
#include "action.hh"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aeropush
{
//---------------------------------------------------------------------------//
void ActionBounds::validate() const
{
    if (!(max_planar_speed > 0 && max_vertical_speed > 0 && max_heading > 0
          && max_yaw_rate > 0))
    {
        throw std::invalid_argument("action bounds must be positive");
    }
}

//---------------------------------------------------------------------------//
Action clamp_action(Action const& a)
{
    Action out;
    for (int i = 0; i < 4; ++i)
    {
        out[i] = std::isnan(a[i]) ? 0.0 : std::clamp(a[i], -1.0, 1.0);
    }
    return out;
}

//---------------------------------------------------------------------------//
ControlInput map_action(Action const& raw, ActionBounds const& b)
{
    Action const a = clamp_action(raw);
    double const speed = b.max_planar_speed * (a[0] + 1) / 2;
    double const heading = b.max_heading * a[1];
    ControlInput u;
    u.velocity = Vec3{speed * std::cos(heading),
                      speed * std::sin(heading),
                      b.max_vertical_speed * a[2]};
    u.yaw_rate = b.max_yaw_rate * a[3];
    return u;
}

//---------------------------------------------------------------------------//
Action action_for_command(ControlInput const& u, ActionBounds const& b)
{
    double const speed = u.velocity.head<2>().norm();
    Action a;
    a[0] = 2 * std::min(speed / b.max_planar_speed, 1.0) - 1;
    a[1] = speed > 0 ? std::atan2(u.velocity.y(), u.velocity.x()) / b.max_heading
                     : 0.0;
    a[2] = u.velocity.z() / b.max_vertical_speed;
    a[3] = u.yaw_rate / b.max_yaw_rate;
    return clamp_action(a);
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
