// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/mppi.hh
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <oneapi/tbb/task_arena.h>

#include "action.hh"
#include "episode.hh"
#include "reward.hh"
#include "rng.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
struct MppiConfig
{
    int horizon{20};
    int samples{256};
    double temperature{1.0};
    std::array<double, 4> noise_sigma{0.3, 0.3, 0.3, 0.3};
    int iterations{1};
    //! Plan with this friction instead of the true one (robustness probe)
    std::optional<double> planning_friction;
    int workers{0};

    void validate() const;
};

//---------------------------------------------------------------------------//
// Softmax weights exp((R - max R) / lambda), normalized
std::vector<double> mppi_weights(std::span<double const> returns,
                                 double temperature);

//---------------------------------------------------------------------------//
/*!
 * Model-predictive path integral control using the simulator itself as the
 * model.
 *
 * Each call perturbs the warm-started nominal sequence with Gaussian noise,
 * rolls every sample forward without rendering, and returns the first
 * action of the return-weighted mean sequence. The nominal then shifts by
 * one step. Noise is drawn serially before any rollout, so results do not
 * depend on the number of workers.
 */
class MppiPlanner
{
  public:
    using Sequence = std::vector<Action>;

    MppiPlanner(World world,
                double dt,
                ActionBounds bounds,
                RewardWeights weights,
                MppiConfig cfg,
                std::uint64_t seed,
                std::uint32_t stream_hi = 0,
                std::uint32_t stream_lo = 0);

    Action plan(EnvSnapshot const& snapshot);

    // Return the nominal sequence to hover
    void reset();

    // Total reward of one action sequence from the snapshot
    double rollout(EnvSnapshot const& snapshot, Sequence const& seq) const;

    //!@{
    //! Data from the latest iteration of the latest plan call
    std::vector<Sequence> const& last_samples() const { return samples_; }
    std::vector<double> const& last_returns() const { return returns_; }
    std::vector<double> const& last_weights() const { return weights_; }
    Sequence const& nominal() const { return nominal_; }
    //!@}

    MppiConfig const& config() const { return cfg_; }

  private:
    World world_;
    double dt_;
    ActionBounds bounds_;
    RewardWeights reward_weights_;
    MppiConfig cfg_;
    CounterRng rng_;
    std::unique_ptr<tbb::task_arena> arena_;

    Sequence nominal_;
    std::vector<Sequence> samples_;
    std::vector<double> returns_;
    std::vector<double> weights_;
};

//---------------------------------------------------------------------------//
}  // namespace aeropush
