// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/reward.hh
//---------------------------------------------------------------------------//
#pragma once

#include "dynamics.hh"
#include "scene.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
// Shaping primitives
//---------------------------------------------------------------------------//
//! gamma / (1 + d^2)
double f_pos(double d, double gamma);
//! f_pos(d, gamma) - gamma - 1 beyond tau, -1 within
double f_neg(double d, double gamma, double tau);
//! gamma * delta_d, positive on progress
double f_delta(double delta_d, double gamma);
//! gamma strictly inside tau, else 0
double f_impulse(double d, double gamma, double tau);

//---------------------------------------------------------------------------//
/*!
 * How vehicle tilt enters the planar navigation term.
 *
 * \c as_printed multiplies by (1 + f_pos(d_q, 1)), which is largest when
 * level. \c penalize_tilt multiplies by (2 - f_pos(d_q, 1)) so the
 * negative term grows with tilt.
 */
enum class TiltMode
{
    as_printed,
    penalize_tilt
};

struct Gain
{
    double gamma;
    double tau;
};

struct RewardWeights
{
    Gain nav_xy{2.0, 0.125};
    Gain nav_z{2.0, 0.05};
    double tilt{1.0};
    double progress{1000.0};
    Gain completion{1500.0, 0.025};
    TiltMode tilt_mode{TiltMode::as_printed};

    void validate() const;
};

//---------------------------------------------------------------------------//
struct DistanceSet
{
    double d_mo_xy{0};
    double d_mo_z{0};
    double d_og_xy{0};
    double delta_d_og_xy{0};  //!< previous minus current
    double d_q{0};
};

struct RewardBreakdown
{
    double nav_xy_term{0};
    double nav_z_term{0};
    double tilt_factor{0};
    double progress_term{0};
    double completion_term{0};
    double total{0};
};

//---------------------------------------------------------------------------//
double planar_distance(Vec3 const& a, Vec3 const& b);

DistanceSet compute_distances(VehicleState const& vehicle,
                              VehicleGeometry const& geom,
                              ObjectState const& object,
                              Vec3 const& goal,
                              double prev_d_og_xy);

RewardBreakdown step_reward(DistanceSet const& dist,
                            RewardWeights const& w = {});

//---------------------------------------------------------------------------//
}  // namespace aeropush
