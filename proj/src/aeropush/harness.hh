// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/harness.hh
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "batch.hh"
#include "settings.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
//! In-process controller
class Agent
{
  public:
    virtual ~Agent() = default;
    virtual Action act(Observation const& obs, Episode const& env) = 0;
};

// Scripted parameters with geometry taken from the world
ScriptedParams scripted_params(Settings const& s, World const& world);

// Build an in-process agent; external agents are rejected
std::unique_ptr<Agent> make_agent(Settings const& s,
                                  World const& world,
                                  std::uint32_t stream_hi,
                                  std::uint32_t stream_lo,
                                  int workers);

//---------------------------------------------------------------------------//
struct TrajectoryRow
{
    double time{0};
    EnvState state;
    GoalSpec goal;
    RewardBreakdown reward;
    ContactReport contact;
};

struct EpisodeRecord
{
    EpisodeStats stats;
    std::vector<TrajectoryRow> trajectory;  //!< one row per step
};

// Run one episode to termination with the configured agent
EpisodeRecord run_episode(Settings const& s,
                          double friction,
                          std::uint32_t stream_hi,
                          std::uint32_t stream_lo,
                          bool record,
                          int agent_workers = 0);

// Trajectory CSV: a commented header naming the columns, one line per step
std::string trajectory_csv(std::vector<TrajectoryRow> const& rows);

//---------------------------------------------------------------------------//
struct EvalRow
{
    double friction{0};
    int episodes{0};
    double mean_goals{0};
    double std_goals{0};  //!< population standard deviation
    double mean_reward{0};
    double collision_rate{0};  //!< vehicle-collision steps over all steps
};

struct EvalResult
{
    std::vector<EvalRow> rows;
    //! Per-friction episode statistics, in friction order
    std::vector<std::vector<EpisodeStats>> episodes;
};

// Aggregate one friction's episodes
EvalRow summarize(double friction, std::vector<EpisodeStats> const& episodes);

// Evaluate every friction value with collision resets disabled
EvalResult run_eval(Settings const& s);

// Header plus one fixed-point line per row, sorted by friction
std::string export_csv(std::vector<EvalRow> rows);
std::vector<EvalRow> parse_csv(std::string_view text);

//---------------------------------------------------------------------------//
struct BenchResult
{
    long env_steps{0};
    double seconds{0};
    double steps_per_second{0};
};

// Step a batch under the scripted policy
BenchResult run_bench(Settings const& s, int steps);

//---------------------------------------------------------------------------//
/*!
 * Newline-delimited JSON request handler for external agents.
 *
 * Each request line yields exactly one response line. Errors are reported
 * as \c {"error": ...} and leave the session usable.
 */
class Session
{
  public:
    explicit Session(Settings settings);

    std::string handle(std::string_view line);
    bool closed() const { return closed_; }

  private:
    Settings settings_;
    std::optional<Batch> batch_;
    bool closed_{false};

    std::string reset(std::uint64_t seed);
    std::string step(std::vector<Action> const& actions);
};

std::string base64_encode(std::span<unsigned char const> bytes);
std::vector<unsigned char> base64_decode(std::string_view text);

//---------------------------------------------------------------------------//
}  // namespace aeropush
