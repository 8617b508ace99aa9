// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/reward.cc
//---------------------------------------------------------------------------//
#include "reward.hh"

#include <cmath>
#include <stdexcept>

namespace aeropush
{
namespace
{
void require_distance(double d)
{
    if (!(d >= 0))
    {
        throw std::invalid_argument("reward distance must be non-negative");
    }
}
}  // namespace

//---------------------------------------------------------------------------//
double f_pos(double d, double gamma)
{
    require_distance(d);
    return gamma / (1 + d * d);
}

double f_neg(double d, double gamma, double tau)
{
    require_distance(d);
    require_distance(tau);
    if (d <= tau)
    {
        return -1.0;
    }
    return f_pos(d, gamma) - gamma - 1;
}

double f_delta(double delta_d, double gamma)
{
    return gamma * delta_d;
}

double f_impulse(double d, double gamma, double tau)
{
    require_distance(d);
    return d < tau ? gamma : 0.0;
}

//---------------------------------------------------------------------------//
void RewardWeights::validate() const
{
    for (double g : {nav_xy.gamma, nav_z.gamma, tilt, progress, completion.gamma})
    {
        if (!(g > 0))
            throw std::invalid_argument("reward magnitudes must be positive");
    }
    for (double t : {nav_xy.tau, nav_z.tau, completion.tau})
    {
        if (!(t >= 0))
            throw std::invalid_argument("reward thresholds must be >= 0");
    }
}

//---------------------------------------------------------------------------//
double planar_distance(Vec3 const& a, Vec3 const& b)
{
    return (a.head<2>() - b.head<2>()).norm();
}

//---------------------------------------------------------------------------//
DistanceSet compute_distances(VehicleState const& vehicle,
                              VehicleGeometry const& geom,
                              ObjectState const& object,
                              Vec3 const& goal,
                              double prev_d_og_xy)
{
    Vec3 const pm = arm_center(vehicle, geom);
    DistanceSet d;
    d.d_mo_xy = planar_distance(pm, object.position);
    d.d_mo_z = std::abs(pm.z() - object.position.z());
    d.d_og_xy = planar_distance(object.position, goal);
    d.delta_d_og_xy = prev_d_og_xy - d.d_og_xy;
    d.d_q = tilt_metric(vehicle.orientation);
    return d;
}

//---------------------------------------------------------------------------//
RewardBreakdown step_reward(DistanceSet const& dist, RewardWeights const& w)
{
    RewardBreakdown r;
    r.nav_xy_term = f_neg(dist.d_mo_xy, w.nav_xy.gamma, w.nav_xy.tau);
    r.nav_z_term = f_neg(dist.d_mo_z, w.nav_z.gamma, w.nav_z.tau);
    double const level = f_pos(dist.d_q, w.tilt);
    r.tilt_factor = (w.tilt_mode == TiltMode::as_printed) ? level
                                                          : w.tilt - level;
    r.progress_term = f_delta(dist.delta_d_og_xy, w.progress);
    r.completion_term
        = f_impulse(dist.d_og_xy, w.completion.gamma, w.completion.tau);
    r.total = r.nav_xy_term * (1 + r.tilt_factor) + r.nav_z_term
              + r.progress_term + r.completion_term;
    return r;
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
