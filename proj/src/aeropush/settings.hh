// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/settings.hh
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "action.hh"
#include "batch.hh"
#include "mppi.hh"
#include "observation.hh"
#include "reward.hh"
#include "scripted.hh"

namespace aeropush
{
//---------------------------------------------------------------------------//
enum class AgentKind
{
    scripted,
    mppi,
    zero,  //!< hover in place
    external  //!< actions supplied over the protocol
};

std::string_view to_string(AgentKind a);
AgentKind agent_from_string(std::string_view s);
GoalMode goal_mode_from_string(std::string_view s);

//---------------------------------------------------------------------------//
/*!
 * Every tunable parameter of a run.
 *
 * Values are addressed by dotted keys such as \c scene.friction_mu, both in
 * the YAML config file (as nested maps) and on the command line.
 */
struct Settings
{
    World world;
    EpisodeConfig episode;
    ActionBounds bounds;
    RewardWeights weights;
    CameraModel camera;
    bool depth{false};  //!< render depth images

    ScriptedParams scripted;
    MppiConfig mppi;

    AgentKind agent{AgentKind::scripted};
    std::uint64_t seed{0};
    int workers{0};  //!< 0 selects the hardware concurrency

    int n_envs{32};
    std::vector<double> frictions;  //!< batch override; empty uses schedule

    std::vector<double> eval_frictions{0.2, 0.3, 0.4, 0.5, 0.6};
    int episodes_per_value{100};

    void validate() const;
    BatchConfig batch_config() const;
};

//---------------------------------------------------------------------------//
// Set one dotted key from a YAML-formatted value ("0.3", "[0, 1, 0]", ...)
void set_value(Settings& s, std::string_view key, std::string_view value);

// Apply every leaf of a YAML document (nested maps address dotted keys)
void apply_yaml(Settings& s, std::string_view document);
void load_file(Settings& s, std::string const& path);

// YAML rendering of the full settings
std::string dump_yaml(Settings const& s);

// All recognized keys in sorted order
std::vector<std::string> settings_keys();

//---------------------------------------------------------------------------//
}  // namespace aeropush
