// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/settings.cc
//---------------------------------------------------------------------------//
#include "settings.hh"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace aeropush
{
namespace
{
//---------------------------------------------------------------------------//
struct Entry
{
    std::function<void(Settings&, YAML::Node const&)> set;
    std::function<YAML::Node(Settings&)> get;
};

using Registry = std::map<std::string, Entry, std::less<>>;

template<int N>
Eigen::Matrix<double, N, 1> decode_vec(YAML::Node const& n)
{
    auto v = n.as<std::vector<double>>();
    if (static_cast<int>(v.size()) != N)
    {
        throw std::invalid_argument("expected a list of " + std::to_string(N)
                                    + " numbers");
    }
    return Eigen::Matrix<double, N, 1>(v.data());
}

template<class T>
T decode(YAML::Node const& n)
{
    if constexpr (std::is_same_v<T, Vec3>)
        return decode_vec<3>(n);
    else if constexpr (std::is_same_v<T, Vec2>)
        return decode_vec<2>(n);
    else
        return n.as<T>();
}

template<class T>
YAML::Node encode(T const& v)
{
    YAML::Node n;
    if constexpr (std::is_same_v<T, Vec3> || std::is_same_v<T, Vec2>)
    {
        for (int i = 0; i < v.size(); ++i)
            n.push_back(v[i]);
        n.SetStyle(YAML::EmitterStyle::Flow);
    }
    else if constexpr (std::is_same_v<T, std::vector<double>>)
    {
        n = v;
        n.SetStyle(YAML::EmitterStyle::Flow);
    }
    else
    {
        n = v;
    }
    return n;
}

template<class T, class F>
Entry field(F access)
{
    return {[access](Settings& s, YAML::Node const& n) {
                access(s) = decode<T>(n);
            },
            [access](Settings& s) { return encode<T>(access(s)); }};
}

#define AP_FIELD(TYPE, KEY, MEMBER) \
    r.emplace(KEY, field<TYPE>([](Settings& s) -> TYPE& { return s.MEMBER; }))

Registry build_registry()
{
    Registry r;
    // Scene
    AP_FIELD(double, "scene.room_half_extent", world.scene.room_half_extent);
    AP_FIELD(double, "scene.room_height", world.scene.room_height);
    AP_FIELD(Vec3, "scene.table_center", world.scene.table_center);
    AP_FIELD(Vec2, "scene.table_top_size", world.scene.table_top_size);
    AP_FIELD(double, "scene.table_height", world.scene.table_height);
    AP_FIELD(double, "scene.object_edge", world.scene.object_edge);
    AP_FIELD(double, "scene.object_mass", world.scene.object_mass);
    AP_FIELD(double, "scene.friction_mu", world.scene.friction_mu);
    AP_FIELD(double, "scene.contact_stiffness", world.scene.contact_stiffness);
    AP_FIELD(double, "scene.contact_damping_ratio", world.scene.contact_damping_ratio);
    AP_FIELD(double, "scene.stiction_speed", world.scene.stiction_speed);
    AP_FIELD(double, "scene.stiction_yaw_rate", world.scene.stiction_yaw_rate);
    AP_FIELD(double, "scene.max_contact_substep", world.scene.max_contact_substep);
    AP_FIELD(double, "scene.goal_separation", world.scene.goal_separation);
    AP_FIELD(double, "scene.min_goal_separation", world.scene.min_goal_separation);
    AP_FIELD(double, "scene.goal_completion_radius",
             world.scene.goal_completion_radius);
    r.emplace("scene.gravity",
              Entry{[](Settings& s, YAML::Node const& n) {
                        s.world.scene.gravity = n.as<double>();
                        s.world.controller.gravity = n.as<double>();
                    },
                    [](Settings& s) { return encode(s.world.scene.gravity); }});

    // Vehicle
    AP_FIELD(double, "vehicle.body_radius", world.geometry.body_radius);
    AP_FIELD(Vec3, "vehicle.arm_offset", world.geometry.arm_offset_body);
    AP_FIELD(double, "vehicle.arm_length", world.geometry.arm_exposed_length);
    AP_FIELD(double, "vehicle.arm_radius", world.geometry.arm_radius);
    AP_FIELD(Vec3, "vehicle.camera_offset",
             world.geometry.camera_pose_body.position);
    r.emplace("vehicle.camera_pitch",
              Entry{[](Settings& s, YAML::Node const& n) {
                        s.world.geometry.camera_pose_body.orientation
                            = rotation_from_euler(0, n.as<double>(), 0);
                    },
                    [](Settings& s) {
                        auto const& m
                            = s.world.geometry.camera_pose_body.orientation;
                        return encode(std::asin(-m(2, 0)));
                    }});
    AP_FIELD(double, "vehicle.velocity_lag", world.controller.velocity_lag);
    AP_FIELD(double, "vehicle.max_tilt", world.controller.max_tilt);

    // Episode
    AP_FIELD(int, "episode.max_steps", episode.max_steps);
    AP_FIELD(double, "episode.dt", episode.dt);
    AP_FIELD(double, "episode.collision_grace", episode.collision_grace);
    AP_FIELD(double, "episode.off_table_grace", episode.off_table_grace);
    AP_FIELD(double, "episode.escape_radius", episode.escape_radius);
    AP_FIELD(bool, "episode.training_mode", episode.training_mode);
    AP_FIELD(Vec2, "episode.object_start_offset", episode.object_start_offset);
    AP_FIELD(double, "episode.vehicle_start_distance",
             episode.vehicle_start_distance);
    r.emplace("episode.goal_mode",
              Entry{[](Settings& s, YAML::Node const& n) {
                        s.episode.goal_mode
                            = goal_mode_from_string(n.as<std::string>());
                    },
                    [](Settings& s) {
                        return encode(std::string(to_string(s.episode.goal_mode)));
                    }});

    // Action
    AP_FIELD(double, "action.max_planar_speed", bounds.max_planar_speed);
    AP_FIELD(double, "action.max_vertical_speed", bounds.max_vertical_speed);
    AP_FIELD(double, "action.max_heading", bounds.max_heading);
    AP_FIELD(double, "action.max_yaw_rate", bounds.max_yaw_rate);

    // Reward
    AP_FIELD(double, "reward.nav_xy_gamma", weights.nav_xy.gamma);
    AP_FIELD(double, "reward.nav_xy_tau", weights.nav_xy.tau);
    AP_FIELD(double, "reward.nav_z_gamma", weights.nav_z.gamma);
    AP_FIELD(double, "reward.nav_z_tau", weights.nav_z.tau);
    AP_FIELD(double, "reward.tilt", weights.tilt);
    AP_FIELD(double, "reward.progress", weights.progress);
    AP_FIELD(double, "reward.completion_gamma", weights.completion.gamma);
    AP_FIELD(double, "reward.completion_tau", weights.completion.tau);
    r.emplace("reward.tilt_mode",
              Entry{[](Settings& s, YAML::Node const& n) {
                        auto v = n.as<std::string>();
                        if (v == "as_printed")
                            s.weights.tilt_mode = TiltMode::as_printed;
                        else if (v == "penalize_tilt")
                            s.weights.tilt_mode = TiltMode::penalize_tilt;
                        else
                            throw std::invalid_argument("unknown tilt mode '"
                                                        + v + "'");
                    },
                    [](Settings& s) {
                        return encode(std::string(
                            s.weights.tilt_mode == TiltMode::as_printed
                                ? "as_printed"
                                : "penalize_tilt"));
                    }});

    // Camera
    AP_FIELD(bool, "camera.enabled", depth);
    AP_FIELD(int, "camera.width", camera.width);
    AP_FIELD(int, "camera.height", camera.height);
    AP_FIELD(double, "camera.horizontal_fov", camera.horizontal_fov);
    AP_FIELD(double, "camera.near", camera.near);
    AP_FIELD(double, "camera.far", camera.far);

    // Agents
    AP_FIELD(double, "scripted.standoff", scripted.standoff);
    AP_FIELD(double, "scripted.approach_speed_frac", scripted.approach_speed_frac);
    AP_FIELD(double, "scripted.push_speed_frac", scripted.push_speed_frac);
    AP_FIELD(double, "scripted.align_tolerance", scripted.align_tolerance);
    AP_FIELD(double, "scripted.transit_height", scripted.transit_height);
    AP_FIELD(int, "mppi.horizon", mppi.horizon);
    AP_FIELD(int, "mppi.samples", mppi.samples);
    AP_FIELD(double, "mppi.temperature", mppi.temperature);
    AP_FIELD(int, "mppi.iterations", mppi.iterations);
    r.emplace("mppi.noise_sigma",
              Entry{[](Settings& s, YAML::Node const& n) {
                        if (n.IsScalar())
                        {
                            s.mppi.noise_sigma.fill(n.as<double>());
                            return;
                        }
                        auto v = n.as<std::vector<double>>();
                        if (v.size() != 4)
                            throw std::invalid_argument(
                                "expected a number or a list of 4 numbers");
                        std::copy(v.begin(), v.end(), s.mppi.noise_sigma.begin());
                    },
                    [](Settings& s) {
                        return encode(std::vector<double>(
                            s.mppi.noise_sigma.begin(), s.mppi.noise_sigma.end()));
                    }});
    r.emplace("mppi.planning_friction",
              Entry{[](Settings& s, YAML::Node const& n) {
                        if (n.IsNull())
                            s.mppi.planning_friction.reset();
                        else
                            s.mppi.planning_friction = n.as<double>();
                    },
                    [](Settings& s) {
                        return s.mppi.planning_friction
                                   ? encode(*s.mppi.planning_friction)
                                   : YAML::Node(YAML::NodeType::Null);
                    }});

    // Run
    r.emplace("run.agent",
              Entry{[](Settings& s, YAML::Node const& n) {
                        s.agent = agent_from_string(n.as<std::string>());
                    },
                    [](Settings& s) {
                        return encode(std::string(to_string(s.agent)));
                    }});
    AP_FIELD(std::uint64_t, "run.seed", seed);
    AP_FIELD(int, "run.workers", workers);
    AP_FIELD(int, "batch.n_envs", n_envs);
    AP_FIELD(std::vector<double>, "batch.frictions", frictions);
    AP_FIELD(std::vector<double>, "eval.frictions", eval_frictions);
    AP_FIELD(int, "eval.episodes_per_value", episodes_per_value);
    return r;
}

#undef AP_FIELD

Registry const& registry()
{
    static Registry const r = build_registry();
    return r;
}

void apply_node(Settings& s, std::string const& prefix, YAML::Node const& node)
{
    if (node.IsMap())
    {
        for (auto const& kv : node)
        {
            auto key = kv.first.as<std::string>();
            apply_node(s, prefix.empty() ? key : prefix + "." + key, kv.second);
        }
        return;
    }
    auto it = registry().find(prefix);
    if (it == registry().end())
    {
        throw std::invalid_argument("unknown setting '" + prefix + "'");
    }
    try
    {
        it->second.set(s, node);
    }
    catch (YAML::Exception const& e)
    {
        throw std::invalid_argument("bad value for '" + prefix
                                    + "': " + e.msg);
    }
    catch (std::invalid_argument const& e)
    {
        throw std::invalid_argument("bad value for '" + prefix
                                    + "': " + e.what());
    }
}

YAML::Node parse(std::string_view text)
{
    try
    {
        return YAML::Load(std::string(text));
    }
    catch (YAML::Exception const& e)
    {
        throw std::invalid_argument("YAML parse error: " + e.msg);
    }
}

}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(AgentKind a)
{
    switch (a)
    {
        case AgentKind::scripted:
            return "scripted";
        case AgentKind::mppi:
            return "mppi";
        case AgentKind::zero:
            return "zero";
        case AgentKind::external:
            return "external";
    }
    return "?";
}

AgentKind agent_from_string(std::string_view s)
{
    for (auto a : {AgentKind::scripted,
                   AgentKind::mppi,
                   AgentKind::zero,
                   AgentKind::external})
    {
        if (to_string(a) == s)
            return a;
    }
    throw std::invalid_argument("unknown agent '" + std::string(s) + "'");
}

GoalMode goal_mode_from_string(std::string_view s)
{
    for (auto m : {GoalMode::alternating, GoalMode::random})
    {
        if (to_string(m) == s)
            return m;
    }
    throw std::invalid_argument("unknown goal mode '" + std::string(s) + "'");
}

//---------------------------------------------------------------------------//
void Settings::validate() const
{
    world.scene.validate();
    world.geometry.validate();
    episode.validate();
    bounds.validate();
    weights.validate();
    camera.validate();
    scripted.validate();
    mppi.validate();
    if (n_envs < 1)
    {
        throw std::invalid_argument("batch.n_envs must be at least 1");
    }
    if (!frictions.empty() && static_cast<int>(frictions.size()) != n_envs)
    {
        throw std::invalid_argument("batch.frictions must list one value per "
                                    "environment");
    }
    if (episodes_per_value < 1)
    {
        throw std::invalid_argument("eval.episodes_per_value must be at "
                                    "least 1");
    }
    if (eval_frictions.empty())
    {
        throw std::invalid_argument("eval.frictions must not be empty");
    }
    for (double mu : eval_frictions)
    {
        if (!(mu > 0))
            throw std::invalid_argument("friction values must be positive");
    }
    if (workers < 0)
    {
        throw std::invalid_argument("run.workers must be non-negative");
    }
}

BatchConfig Settings::batch_config() const
{
    BatchConfig b;
    b.n_envs = n_envs;
    b.base_seed = seed;
    b.world = world;
    b.episode = episode;
    b.bounds = bounds;
    b.weights = weights;
    if (depth)
    {
        b.camera = camera;
    }
    b.workers = workers;
    b.frictions = frictions;
    return b;
}

//---------------------------------------------------------------------------//
void set_value(Settings& s, std::string_view key, std::string_view value)
{
    apply_node(s, std::string(key), parse(value));
}

void apply_yaml(Settings& s, std::string_view document)
{
    YAML::Node root = parse(document);
    if (root.IsNull())
    {
        return;
    }
    if (!root.IsMap())
    {
        throw std::invalid_argument("config document must be a map");
    }
    apply_node(s, "", root);
}

void load_file(Settings& s, std::string const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw std::runtime_error("cannot open config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    apply_yaml(s, text.str());
}

std::string dump_yaml(Settings const& s)
{
    Settings copy = s;
    YAML::Node root;
    for (auto const& [key, entry] : registry())
    {
        auto dot = key.find('.');
        root[key.substr(0, dot)][key.substr(dot + 1)] = entry.get(copy);
    }
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << root;
    return std::string(out.c_str()) + "\n";
}

std::vector<std::string> settings_keys()
{
    std::vector<std::string> keys;
    for (auto const& kv : registry())
        keys.push_back(kv.first);
    return keys;
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
