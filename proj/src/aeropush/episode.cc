// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/episode.cc
//---------------------------------------------------------------------------//
#include "episode.hh"

#include <cmath>
#include <stdexcept>

namespace aeropush
{
//---------------------------------------------------------------------------//
std::string_view to_string(ResetReason r)
{
    switch (r)
    {
        case ResetReason::time_limit:
            return "time_limit";
        case ResetReason::vehicle_collision:
            return "vehicle_collision";
        case ResetReason::object_off_table:
            return "object_off_table";
        case ResetReason::escaped_radius:
            return "escaped_radius";
    }
    return "unknown";
}

std::string_view to_string(GoalMode m)
{
    return m == GoalMode::alternating ? "alternating" : "random";
}

//---------------------------------------------------------------------------//
void EpisodeConfig::validate() const
{
    if (max_steps <= 0 || !(dt > 0) || !(collision_grace > 0)
        || !(off_table_grace > 0) || !(escape_radius > 0)
        || !(vehicle_start_distance > 0))
    {
        throw std::invalid_argument("episode parameters must be positive");
    }
}

int EpisodeConfig::grace_steps(double seconds) const
{
    return static_cast<int>(std::llround(seconds / dt));
}

//---------------------------------------------------------------------------//
std::optional<ResetReason> check_termination(EpisodeTimers const& timers,
                                             Vec3 const& vehicle_position,
                                             EpisodeConfig const& cfg)
{
    if (vehicle_position.norm() > cfg.escape_radius)
    {
        return ResetReason::escaped_radius;
    }
    if (cfg.training_mode
        && timers.collision_steps >= cfg.grace_steps(cfg.collision_grace))
    {
        return ResetReason::vehicle_collision;
    }
    if (timers.off_table_steps >= cfg.grace_steps(cfg.off_table_grace))
    {
        return ResetReason::object_off_table;
    }
    if (timers.steps >= cfg.max_steps)
    {
        return ResetReason::time_limit;
    }
    return std::nullopt;
}

//---------------------------------------------------------------------------//
GoalUpdate update_goal(ObjectState const& object,
                       GoalSpec const& goal,
                       GoalMode mode,
                       SceneParams const& scene,
                       CounterRng& rng)
{
    double const d = planar_distance(object.position, goal.position);
    if (!(d < goal.completion_radius))
    {
        return {goal, false};
    }
    if (mode == GoalMode::alternating)
    {
        return {alternating_goal(goal, scene), true};
    }
    return {random_goal(rng, scene, goal), true};
}

//---------------------------------------------------------------------------//
EnvState start_state(World const& world, EpisodeConfig const& cfg)
{
    SceneParams const& scene = world.scene;
    EnvState s;
    s.object.position = Vec3{scene.table_center.x() + cfg.object_start_offset.x(),
                             scene.table_center.y() + cfg.object_start_offset.y(),
                             scene.object_rest_z()};
    s.object.on_table = over_table(scene, s.object.position);

    // Arm at the object's mid-height
    s.vehicle.position
        = Vec3{s.object.position.x() - cfg.vehicle_start_distance,
               s.object.position.y(),
               s.object.position.z() - world.geometry.arm_offset_body.z()};
    s.vehicle.set_attitude(0, 0, 0);
    return s;
}

//---------------------------------------------------------------------------//
Episode::Episode(World world,
                 EpisodeConfig cfg,
                 ActionBounds bounds,
                 RewardWeights weights,
                 std::optional<CameraModel> camera)
    : world_{std::move(world)}
    , cfg_{cfg}
    , bounds_{bounds}
    , weights_{weights}
    , camera_{camera}
{
    world_.scene.validate();
    world_.geometry.validate();
    cfg_.validate();
    bounds_.validate();
    weights_.validate();
    if (camera_)
    {
        camera_->validate();
    }
}

//---------------------------------------------------------------------------//
Observation Episode::reset(std::uint64_t seed,
                           std::uint32_t stream_hi,
                           std::uint32_t stream_lo)
{
    rng_ = CounterRng{seed, stream_hi, stream_lo};
    state_ = start_state(world_, cfg_);

    GoalSpec const start{state_.object.position,
                         world_.scene.goal_completion_radius};
    goal_ = (cfg_.goal_mode == GoalMode::alternating)
                ? alternating_goal(start, world_.scene)
                : random_goal(rng_, world_.scene, start);

    prev_d_og_xy_ = planar_distance(state_.object.position, goal_.position);
    timers_ = {};
    stats_ = {};
    done_ = false;

    auto const d = compute_distances(state_.vehicle,
                                     world_.geometry,
                                     state_.object,
                                     goal_.position,
                                     prev_d_og_xy_);
    return this->observe(d);
}

//---------------------------------------------------------------------------//
/*!
 * Reward is scored against the goal that was active during the step, so the
 * completion impulse lands on the step that reaches it. A completed goal is
 * then replaced and the progress baseline re-anchored to the new goal.
 */
StepOutcome Episode::step(Action const& action)
{
    if (done_)
    {
        throw std::logic_error("step called on a finished episode");
    }
    StepOutcome out;
    out.info.action = clamp_action(action);
    ControlInput const u = map_action(out.info.action, bounds_);

    auto result = env_step(world_, state_, u, cfg_.dt);
    state_ = result.state;
    out.info.contact = result.contact;

    auto const dist = compute_distances(state_.vehicle,
                                        world_.geometry,
                                        state_.object,
                                        goal_.position,
                                        prev_d_og_xy_);
    out.reward = step_reward(dist, weights_);
    out.info.goal = goal_;

    auto const next
        = update_goal(state_.object, goal_, cfg_.goal_mode, world_.scene, rng_);
    out.info.goal_completed = next.completed;
    DistanceSet obs_dist = dist;
    if (next.completed)
    {
        ++stats_.goals_completed;
        goal_ = next.goal;
        prev_d_og_xy_ = planar_distance(state_.object.position, goal_.position);
        obs_dist = compute_distances(state_.vehicle,
                                     world_.geometry,
                                     state_.object,
                                     goal_.position,
                                     prev_d_og_xy_);
    }
    else
    {
        prev_d_og_xy_ = dist.d_og_xy;
    }

    ++timers_.steps;
    timers_.collision_steps
        = result.contact.vehicle_env_collision ? timers_.collision_steps + 1 : 0;
    timers_.off_table_steps
        = state_.object.on_table ? 0 : timers_.off_table_steps + 1;

    stats_.steps = timers_.steps;
    stats_.total_reward += out.reward.total;
    if (result.contact.vehicle_env_collision)
    {
        ++stats_.collision_steps;
    }

    out.info.reset_reason
        = check_termination(timers_, state_.vehicle.position, cfg_);
    out.done = out.info.reset_reason.has_value();
    stats_.reset_reason = out.info.reset_reason;
    done_ = out.done;

    out.observation = this->observe(obs_dist);
    return out;
}

//---------------------------------------------------------------------------//
Observation Episode::observe(DistanceSet const& d) const
{
    return assemble_observation(state_,
                                world_,
                                goal_.position,
                                d,
                                camera_ ? &*camera_ : nullptr);
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
