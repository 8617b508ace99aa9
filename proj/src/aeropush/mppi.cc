// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/mppi.cc
//---------------------------------------------------------------------------//
#include "mppi.hh"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <oneapi/tbb/parallel_for.h>

namespace aeropush
{
namespace
{
// Raw perturbed actions are kept inside this box before mapping
constexpr double raw_action_limit = 2.0;
// Separates planner noise from environment randomness under the same seed
constexpr std::uint64_t planner_key = 0x6d7070692d6e6f69ull;
}  // namespace

//---------------------------------------------------------------------------//
void MppiConfig::validate() const
{
    if (horizon < 1 || samples < 1 || iterations < 1)
    {
        throw std::invalid_argument("MPPI horizon, samples and iterations "
                                    "must be at least 1");
    }
    if (!(temperature > 0))
    {
        throw std::invalid_argument("MPPI temperature must be positive");
    }
    for (double s : noise_sigma)
    {
        if (!(s >= 0))
            throw std::invalid_argument("MPPI noise must be non-negative");
    }
    if (planning_friction && !(*planning_friction > 0))
    {
        throw std::invalid_argument("planning friction must be positive");
    }
}

//---------------------------------------------------------------------------//
std::vector<double> mppi_weights(std::span<double const> returns,
                                 double temperature)
{
    if (returns.empty())
    {
        return {};
    }
    double const best = *std::max_element(returns.begin(), returns.end());
    std::vector<double> w(returns.size());
    double sum = 0;
    for (std::size_t k = 0; k < returns.size(); ++k)
    {
        w[k] = std::exp((returns[k] - best) / temperature);
        sum += w[k];
    }
    for (double& x : w)
    {
        x /= sum;
    }
    return w;
}

//---------------------------------------------------------------------------//
MppiPlanner::MppiPlanner(World world,
                         double dt,
                         ActionBounds bounds,
                         RewardWeights weights,
                         MppiConfig cfg,
                         std::uint64_t seed,
                         std::uint32_t stream_hi,
                         std::uint32_t stream_lo)
    : world_{std::move(world)}
    , dt_{dt}
    , bounds_{bounds}
    , reward_weights_{weights}
    , cfg_{cfg}
    , rng_{seed ^ planner_key, stream_hi, stream_lo}
{
    cfg_.validate();
    if (cfg_.planning_friction)
    {
        world_.scene.friction_mu = *cfg_.planning_friction;
    }
    arena_ = std::make_unique<tbb::task_arena>(
        cfg_.workers > 0 ? cfg_.workers : tbb::task_arena::automatic);
    this->reset();
}

//---------------------------------------------------------------------------//
void MppiPlanner::reset()
{
    nominal_.assign(cfg_.horizon, Action::hover());
}

//---------------------------------------------------------------------------//
double MppiPlanner::rollout(EnvSnapshot const& snapshot, Sequence const& seq) const
{
    EnvState state = snapshot.state;
    double prev = snapshot.prev_d_og_xy;
    double total = 0;
    for (Action const& a : seq)
    {
        auto const next = env_step(world_, state, map_action(a, bounds_), dt_);
        state = next.state;
        auto const d = compute_distances(state.vehicle,
                                         world_.geometry,
                                         state.object,
                                         snapshot.goal.position,
                                         prev);
        total += step_reward(d, reward_weights_).total;
        prev = d.d_og_xy;
    }
    return total;
}

//---------------------------------------------------------------------------//
Action MppiPlanner::plan(EnvSnapshot const& snapshot)
{
    int const k_count = cfg_.samples;
    int const h_count = cfg_.horizon;
    Sequence mean = nominal_;

    for (int iter = 0; iter < cfg_.iterations; ++iter)
    {
        samples_.assign(k_count, mean);
        for (auto& seq : samples_)
        {
            for (auto& a : seq)
            {
                for (int i = 0; i < 4; ++i)
                {
                    a[i] = std::clamp(a[i] + cfg_.noise_sigma[i] * rng_.normal(),
                                      -raw_action_limit,
                                      raw_action_limit);
                }
            }
        }

        returns_.assign(k_count, 0.0);
        arena_->execute([&] {
            tbb::parallel_for(0, k_count, [&](int k) {
                returns_[k] = this->rollout(snapshot, samples_[k]);
            });
        });

        weights_ = mppi_weights(returns_, cfg_.temperature);
        for (int h = 0; h < h_count; ++h)
        {
            Action avg{{0, 0, 0, 0}};
            for (int k = 0; k < k_count; ++k)
            {
                for (int i = 0; i < 4; ++i)
                {
                    avg[i] += weights_[k] * samples_[k][h][i];
                }
            }
            mean[h] = avg;
        }
    }

    Action const first = mean.front();
    std::rotate(mean.begin(), mean.begin() + 1, mean.end());
    mean.back() = mean[h_count > 1 ? h_count - 2 : 0];
    nominal_ = std::move(mean);
    return first;
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
