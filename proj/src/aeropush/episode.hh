// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/episode.hh
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "action.hh"
#include "dynamics.hh"
#include "observation.hh"
#include "reward.hh"
#include "rng.hh"
#include "scene.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
enum class GoalMode
{
    alternating,
    random
};

enum class ResetReason
{
    time_limit,
    vehicle_collision,
    object_off_table,
    escaped_radius
};

std::string_view to_string(ResetReason r);
std::string_view to_string(GoalMode m);

//---------------------------------------------------------------------------//
struct EpisodeConfig
{
    int max_steps{1000};
    double dt{0.1};
    double collision_grace{2.0};  //!< continuous vehicle collision [s]
    double off_table_grace{2.0};  //!< continuous object-off-table [s]
    double escape_radius{5.0};  //!< from the world origin [m]
    GoalMode goal_mode{GoalMode::alternating};
    bool training_mode{true};  //!< enables vehicle-collision resets

    // Object start, relative to the table center (the -x goal endpoint)
    Vec2 object_start_offset{-0.25, 0.0};
    // Body center distance behind the object along -x
    double vehicle_start_distance{1.0};

    void validate() const;
    int grace_steps(double seconds) const;
};

//---------------------------------------------------------------------------//
struct EpisodeTimers
{
    int steps{0};
    int collision_steps{0};
    int off_table_steps{0};
};

struct EpisodeStats
{
    int goals_completed{0};
    int steps{0};
    double total_reward{0};
    int collision_steps{0};  //!< steps with vehicle/environment overlap
    std::optional<ResetReason> reset_reason;
};

struct GoalUpdate
{
    GoalSpec goal;
    bool completed{false};
};

struct StepInfo
{
    ContactReport contact;
    Action action;  //!< clamped action that was applied
    GoalSpec goal;  //!< goal the step was scored against
    bool goal_completed{false};
    std::optional<ResetReason> reset_reason;
};

struct StepOutcome
{
    Observation observation;
    RewardBreakdown reward;
    bool done{false};
    StepInfo info;
};

//! Everything a planner needs to roll the environment forward
struct EnvSnapshot
{
    EnvState state;
    GoalSpec goal;
    double prev_d_og_xy{0};
};

//---------------------------------------------------------------------------//
std::optional<ResetReason> check_termination(EpisodeTimers const& timers,
                                             Vec3 const& vehicle_position,
                                             EpisodeConfig const& cfg);

GoalUpdate update_goal(ObjectState const& object,
                       GoalSpec const& goal,
                       GoalMode mode,
                       SceneParams const& scene,
                       CounterRng& rng);

// Fixed start state: object on the -x endpoint, vehicle behind it facing +x
EnvState start_state(World const& world, EpisodeConfig const& cfg);

//---------------------------------------------------------------------------//
/*!
 * One environment driven step by step by an agent.
 */
class Episode
{
  public:
    Episode(World world,
            EpisodeConfig cfg,
            ActionBounds bounds = {},
            RewardWeights weights = {},
            std::optional<CameraModel> camera = std::nullopt);

    // Start a new episode on the given random stream
    Observation reset(std::uint64_t seed,
                      std::uint32_t stream_hi = 0,
                      std::uint32_t stream_lo = 0);

    // Apply one action; throws std::logic_error once done
    StepOutcome step(Action const& action);

    bool done() const { return done_; }
    EpisodeStats const& stats() const { return stats_; }
    EnvState const& state() const { return state_; }
    GoalSpec const& goal() const { return goal_; }
    double prev_d_og_xy() const { return prev_d_og_xy_; }
    World const& world() const { return world_; }
    EpisodeConfig const& config() const { return cfg_; }
    ActionBounds const& bounds() const { return bounds_; }
    RewardWeights const& weights() const { return weights_; }

    EnvSnapshot snapshot() const { return {state_, goal_, prev_d_og_xy_}; }

  private:
    World world_;
    EpisodeConfig cfg_;
    ActionBounds bounds_;
    RewardWeights weights_;
    std::optional<CameraModel> camera_;

    CounterRng rng_;
    EnvState state_;
    GoalSpec goal_;
    double prev_d_og_xy_{0};
    EpisodeTimers timers_;
    EpisodeStats stats_;
    bool done_{true};

    Observation observe(DistanceSet const& d) const;
};

//---------------------------------------------------------------------------//
}  // namespace aeropush
