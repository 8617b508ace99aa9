// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/batch.cc
//---------------------------------------------------------------------------//
#include "batch.hh"

#include <stdexcept>
#include <string>
#include <oneapi/tbb/parallel_for.h>
#include <oneapi/tbb/task_arena.h>

namespace aeropush
{
//---------------------------------------------------------------------------//
Batch::Batch(BatchConfig cfg) : cfg_{std::move(cfg)}
{
    if (cfg_.n_envs < 1)
    {
        throw std::invalid_argument("batch needs at least one environment");
    }
    if (cfg_.frictions.empty())
    {
        frictions_ = friction_schedule(cfg_.n_envs);
    }
    else if (static_cast<int>(cfg_.frictions.size()) == cfg_.n_envs)
    {
        frictions_ = cfg_.frictions;
    }
    else
    {
        throw std::invalid_argument("explicit friction list must have n_envs "
                                    "entries");
    }

    envs_.reserve(cfg_.n_envs);
    for (double mu : frictions_)
    {
        World w = cfg_.world;
        w.scene.friction_mu = mu;
        envs_.emplace_back(
            std::move(w), cfg_.episode, cfg_.bounds, cfg_.weights, cfg_.camera);
    }
    episode_counts_.assign(cfg_.n_envs, 0);
    arena_ = std::make_unique<tbb::task_arena>(
        cfg_.workers > 0 ? cfg_.workers : tbb::task_arena::automatic);
}

Batch::~Batch() = default;
Batch::Batch(Batch&&) noexcept = default;
Batch& Batch::operator=(Batch&&) noexcept = default;

//---------------------------------------------------------------------------//
template<class F>
void Batch::for_each_env(F&& f)
{
    arena_->execute([&] {
        tbb::parallel_for(0, this->size(), [&](int i) { f(i); });
    });
}

//---------------------------------------------------------------------------//
std::vector<Observation> Batch::reset()
{
    std::vector<Observation> result(envs_.size());
    episode_counts_.assign(envs_.size(), 0);
    this->for_each_env([&](int i) {
        result[i] = envs_[i].reset(
            cfg_.base_seed, static_cast<std::uint32_t>(i), episode_counts_[i]);
    });
    started_ = true;
    return result;
}

//---------------------------------------------------------------------------//
std::vector<Transition> Batch::step(std::span<Action const> actions)
{
    if (static_cast<int>(actions.size()) != this->size())
    {
        throw std::invalid_argument(
            "expected " + std::to_string(this->size()) + " actions, got "
            + std::to_string(actions.size()));
    }
    if (!started_)
    {
        throw std::logic_error("batch step before reset");
    }
    std::vector<Transition> result(envs_.size());
    this->for_each_env([&](int i) {
        Episode& env = envs_[i];
        StepOutcome out = env.step(actions[i]);
        Transition& t = result[i];
        t.env_index = i;
        t.reward = out.reward;
        t.done = out.done;
        t.reset_reason = out.info.reset_reason;
        t.info = out.info;
        t.observation = std::move(out.observation);
        if (out.done)
        {
            t.final_stats = env.stats();
            ++episode_counts_[i];
            t.reset_observation = env.reset(cfg_.base_seed,
                                            static_cast<std::uint32_t>(i),
                                            episode_counts_[i]);
        }
    });
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
