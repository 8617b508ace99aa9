// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/batch.hh
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <oneapi/tbb/task_arena.h>

#include "episode.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
struct BatchConfig
{
    int n_envs{32};
    std::uint64_t base_seed{0};
    World world;  //!< template; friction is overridden per environment
    EpisodeConfig episode;
    ActionBounds bounds;
    RewardWeights weights;
    std::optional<CameraModel> camera;  //!< depth rendering when set
    int workers{0};  //!< 0 selects the hardware concurrency
    std::vector<double> frictions;  //!< explicit per-env values; else schedule
};

//---------------------------------------------------------------------------//
struct Transition
{
    int env_index{0};
    Observation observation;  //!< terminal observation when done
    //! First observation of the next episode (set when done)
    std::optional<Observation> reset_observation;
    RewardBreakdown reward;
    bool done{false};
    std::optional<ResetReason> reset_reason;
    StepInfo info;
    std::optional<EpisodeStats> final_stats;  //!< set when done
};

//---------------------------------------------------------------------------//
/*!
 * Independent environments stepped together.
 *
 * Environment i draws randomness from stream (i, episode number) under the
 * base seed, so results do not depend on scheduling. A finished environment
 * reports its terminal observation and final statistics, and is reset in
 * the same call so the next step starts a fresh episode. Not safe for
 * concurrent callers.
 */
class Batch
{
  public:
    explicit Batch(BatchConfig cfg);
    ~Batch();
    Batch(Batch&&) noexcept;
    Batch& operator=(Batch&&) noexcept;

    std::vector<Observation> reset();
    std::vector<Transition> step(std::span<Action const> actions);

    int size() const { return static_cast<int>(envs_.size()); }
    Episode const& env(int i) const { return envs_.at(i); }
    std::vector<double> const& frictions() const { return frictions_; }
    BatchConfig const& config() const { return cfg_; }

  private:
    BatchConfig cfg_;
    std::vector<double> frictions_;
    std::vector<Episode> envs_;
    std::vector<std::uint32_t> episode_counts_;
    std::unique_ptr<tbb::task_arena> arena_;
    bool started_{false};

    template<class F>
    void for_each_env(F&& f);
};

//---------------------------------------------------------------------------//
}  // namespace aeropush
