// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/harness.cc
//---------------------------------------------------------------------------//
#include "harness.hh"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include <oneapi/tbb/parallel_for.h>
#include <oneapi/tbb/task_arena.h>

namespace aeropush
{
namespace
{
//---------------------------------------------------------------------------//
class ScriptedAgent final : public Agent
{
  public:
    ScriptedAgent(ScriptedParams p, ActionBounds b) : params_{p}, bounds_{b} {}
    Action act(Observation const& obs, Episode const&) override
    {
        return scripted_policy(obs, params_, bounds_);
    }

  private:
    ScriptedParams params_;
    ActionBounds bounds_;
};

class HoverAgent final : public Agent
{
  public:
    Action act(Observation const&, Episode const&) override
    {
        return Action::hover();
    }
};

class MppiAgent final : public Agent
{
  public:
    explicit MppiAgent(MppiPlanner planner) : planner_{std::move(planner)} {}
    Action act(Observation const&, Episode const& env) override
    {
        return planner_.plan(env.snapshot());
    }

  private:
    MppiPlanner planner_;
};

//---------------------------------------------------------------------------//
using nlohmann::json;

json to_json(Observation const& obs)
{
    auto values = obs.to_array();
    return json(std::vector<double>(values.begin(), values.end()));
}

json to_json(RewardBreakdown const& r)
{
    return json{{"total", r.total},
                {"nav_xy", r.nav_xy_term},
                {"nav_z", r.nav_z_term},
                {"tilt_factor", r.tilt_factor},
                {"progress", r.progress_term},
                {"completion", r.completion_term}};
}

json to_json(EpisodeStats const& s)
{
    return json{{"goals_completed", s.goals_completed},
                {"steps", s.steps},
                {"total_reward", s.total_reward},
                {"collision_steps", s.collision_steps}};
}

std::string encode_depth(DepthImage const& image)
{
    std::vector<unsigned char> bytes(image.values.size() * 4);
    for (std::size_t i = 0; i < image.values.size(); ++i)
    {
        std::uint32_t bits;
        std::memcpy(&bits, &image.values[i], 4);
        for (int b = 0; b < 4; ++b)
            bytes[4 * i + b] = static_cast<unsigned char>(bits >> (8 * b));
    }
    return base64_encode(bytes);
}

std::string error_response(std::string const& message)
{
    return json{{"error", message}}.dump();
}

constexpr char const b64_alphabet[]
    = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

}  // namespace

//---------------------------------------------------------------------------//
ScriptedParams scripted_params(Settings const& s, World const& world)
{
    ScriptedParams p = s.scripted;
    p.arm_half_length = world.geometry.arm_exposed_length / 2;
    p.arm_radius = world.geometry.arm_radius;
    p.object_half_edge = world.scene.object_edge / 2;
    p.completion_radius = world.scene.goal_completion_radius;
    return p;
}

std::unique_ptr<Agent> make_agent(Settings const& s,
                                  World const& world,
                                  std::uint32_t stream_hi,
                                  std::uint32_t stream_lo,
                                  int workers)
{
    switch (s.agent)
    {
        case AgentKind::scripted:
            return std::make_unique<ScriptedAgent>(scripted_params(s, world),
                                                   s.bounds);
        case AgentKind::zero:
            return std::make_unique<HoverAgent>();
        case AgentKind::mppi: {
            MppiConfig cfg = s.mppi;
            cfg.workers = workers;
            return std::make_unique<MppiAgent>(MppiPlanner(world,
                                                           s.episode.dt,
                                                           s.bounds,
                                                           s.weights,
                                                           cfg,
                                                           s.seed,
                                                           stream_hi,
                                                           stream_lo));
        }
        case AgentKind::external:
            break;
    }
    throw std::invalid_argument("external agents connect through the "
                                "protocol server");
}

//---------------------------------------------------------------------------//
EpisodeRecord run_episode(Settings const& s,
                          double friction,
                          std::uint32_t stream_hi,
                          std::uint32_t stream_lo,
                          bool record,
                          int agent_workers)
{
    World world = s.world;
    world.scene.friction_mu = friction;
    Episode env(world, s.episode, s.bounds, s.weights);
    auto agent = make_agent(s, world, stream_hi, stream_lo, agent_workers);

    EpisodeRecord result;
    Observation obs = env.reset(s.seed, stream_hi, stream_lo);
    while (!env.done())
    {
        StepOutcome out = env.step(agent->act(obs, env));
        if (record)
        {
            TrajectoryRow row;
            row.time = env.stats().steps * s.episode.dt;
            row.state = env.state();
            row.goal = out.info.goal;
            row.reward = out.reward;
            row.contact = out.info.contact;
            result.trajectory.push_back(row);
        }
        obs = std::move(out.observation);
    }
    result.stats = env.stats();
    return result;
}

//---------------------------------------------------------------------------//
std::string trajectory_csv(std::vector<TrajectoryRow> const& rows)
{
    std::string out
        = "# t,vehicle_x,vehicle_y,vehicle_z,vehicle_yaw,object_x,object_y,"
          "object_z,goal_x,goal_y,goal_z,nav_xy,nav_z,tilt_factor,progress,"
          "completion,total,arm_contact,vehicle_collision,object_on_table\n";
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof(buf), "%.17g%c", v, sep);
        out += buf;
    };
    for (auto const& r : rows)
    {
        auto const& v = r.state.vehicle;
        auto const& o = r.state.object;
        put(r.time, ',');
        for (int i = 0; i < 3; ++i)
            put(v.position[i], ',');
        put(v.yaw, ',');
        for (int i = 0; i < 3; ++i)
            put(o.position[i], ',');
        for (int i = 0; i < 3; ++i)
            put(r.goal.position[i], ',');
        put(r.reward.nav_xy_term, ',');
        put(r.reward.nav_z_term, ',');
        put(r.reward.tilt_factor, ',');
        put(r.reward.progress_term, ',');
        put(r.reward.completion_term, ',');
        put(r.reward.total, ',');
        out += r.contact.arm_object ? "1," : "0,";
        out += r.contact.vehicle_env_collision ? "1," : "0,";
        out += r.contact.object_on_table ? "1\n" : "0\n";
    }
    return out;
}

//---------------------------------------------------------------------------//
EvalRow summarize(double friction, std::vector<EpisodeStats> const& episodes)
{
    EvalRow row;
    row.friction = friction;
    row.episodes = static_cast<int>(episodes.size());
    if (episodes.empty())
    {
        return row;
    }
    double const n = static_cast<double>(episodes.size());
    long steps = 0;
    long collisions = 0;
    for (auto const& e : episodes)
    {
        row.mean_goals += e.goals_completed;
        row.mean_reward += e.total_reward;
        steps += e.steps;
        collisions += e.collision_steps;
    }
    row.mean_goals /= n;
    row.mean_reward /= n;
    double var = 0;
    for (auto const& e : episodes)
    {
        double const d = e.goals_completed - row.mean_goals;
        var += d * d;
    }
    row.std_goals = std::sqrt(var / n);
    row.collision_rate
        = steps > 0 ? static_cast<double>(collisions) / steps : 0.0;
    return row;
}

EvalResult run_eval(Settings const& s)
{
    s.validate();
    Settings cfg = s;
    cfg.episode.training_mode = false;
    if (cfg.agent == AgentKind::external)
    {
        throw std::invalid_argument("external agents are evaluated through "
                                    "the protocol server");
    }

    int const n_mu = static_cast<int>(cfg.eval_frictions.size());
    int const n_ep = cfg.episodes_per_value;
    EvalResult result;
    result.episodes.assign(n_mu, std::vector<EpisodeStats>(n_ep));

    tbb::task_arena arena(cfg.workers > 0 ? cfg.workers
                                          : tbb::task_arena::automatic);
    arena.execute([&] {
        tbb::parallel_for(0, n_mu * n_ep, [&](int job) {
            int const fi = job / n_ep;
            int const e = job % n_ep;
            result.episodes[fi][e] = run_episode(cfg,
                                                 cfg.eval_frictions[fi],
                                                 static_cast<std::uint32_t>(fi),
                                                 static_cast<std::uint32_t>(e),
                                                 false,
                                                 1)
                                         .stats;
        });
    });

    for (int fi = 0; fi < n_mu; ++fi)
    {
        result.rows.push_back(
            summarize(cfg.eval_frictions[fi], result.episodes[fi]));
    }
    return result;
}

//---------------------------------------------------------------------------//
std::string export_csv(std::vector<EvalRow> rows)
{
    if (rows.empty())
    {
        throw std::invalid_argument("no evaluation rows to export");
    }
    std::stable_sort(rows.begin(), rows.end(), [](auto const& a, auto const& b) {
        return a.friction < b.friction;
    });
    std::string out
        = "friction,episodes,mean_goals,std_goals,mean_reward,collision_rate\n";
    char buf[256];
    for (auto const& r : rows)
    {
        std::snprintf(buf,
                      sizeof(buf),
                      "%.6f,%d,%.6f,%.6f,%.6f,%.6f\n",
                      r.friction,
                      r.episodes,
                      r.mean_goals,
                      r.std_goals,
                      r.mean_reward,
                      r.collision_rate);
        out += buf;
    }
    return out;
}

std::vector<EvalRow> parse_csv(std::string_view text)
{
    std::vector<EvalRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)
        || line != "friction,episodes,mean_goals,std_goals,mean_reward,"
                   "collision_rate")
    {
        throw std::invalid_argument("missing evaluation CSV header");
    }
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        EvalRow r;
        char tail = 0;
        if (std::sscanf(line.c_str(),
                        "%lf,%d,%lf,%lf,%lf,%lf%c",
                        &r.friction,
                        &r.episodes,
                        &r.mean_goals,
                        &r.std_goals,
                        &r.mean_reward,
                        &r.collision_rate,
                        &tail)
            != 6)
        {
            throw std::invalid_argument("malformed evaluation CSV line: "
                                        + line);
        }
        rows.push_back(r);
    }
    return rows;
}

//---------------------------------------------------------------------------//
BenchResult run_bench(Settings const& s, int steps)
{
    if (steps < 1)
    {
        throw std::invalid_argument("bench needs at least one step");
    }
    s.validate();
    Batch batch(s.batch_config());
    Settings scripted = s;
    scripted.agent = AgentKind::scripted;
    auto agent = make_agent(scripted, s.world, 0, 0, 1);

    std::vector<Observation> obs = batch.reset();
    std::vector<Action> actions(batch.size());
    auto const start = std::chrono::steady_clock::now();
    for (int k = 0; k < steps; ++k)
    {
        for (int i = 0; i < batch.size(); ++i)
            actions[i] = agent->act(obs[i], batch.env(i));
        auto transitions = batch.step(actions);
        for (int i = 0; i < batch.size(); ++i)
        {
            auto& t = transitions[i];
            obs[i] = std::move(t.reset_observation ? *t.reset_observation
                                                   : t.observation);
        }
    }
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now()
                                            - start;
    BenchResult r;
    r.env_steps = static_cast<long>(steps) * batch.size();
    r.seconds = elapsed.count();
    r.steps_per_second = r.seconds > 0 ? r.env_steps / r.seconds : 0.0;
    return r;
}

//---------------------------------------------------------------------------//
Session::Session(Settings settings) : settings_{std::move(settings)}
{
    settings_.validate();
}

std::string Session::handle(std::string_view line)
{
    if (closed_)
    {
        return error_response("session closed");
    }
    json req = json::parse(line.begin(), line.end(), nullptr, false);
    if (req.is_discarded())
    {
        return error_response("malformed JSON");
    }
    if (!req.is_object() || !req.contains("cmd") || !req["cmd"].is_string())
    {
        return error_response("request needs a string \"cmd\" field");
    }
    std::string const cmd = req["cmd"].get<std::string>();
    try
    {
        if (cmd == "reset")
        {
            std::uint64_t seed = settings_.seed;
            if (req.contains("seed"))
            {
                if (!req["seed"].is_number_unsigned())
                    return error_response("seed must be a non-negative integer");
                seed = req["seed"].get<std::uint64_t>();
            }
            return this->reset(seed);
        }
        if (cmd == "step")
        {
            if (!batch_)
            {
                return error_response("step before reset");
            }
            if (!req.contains("actions") || !req["actions"].is_array())
            {
                return error_response("step needs an \"actions\" array");
            }
            json const& list = req["actions"];
            int const n = batch_->size();
            if (static_cast<int>(list.size()) != n)
            {
                return error_response("expected " + std::to_string(n)
                                      + " action vectors, got "
                                      + std::to_string(list.size()));
            }
            std::vector<Action> actions(n);
            for (int i = 0; i < n; ++i)
            {
                json const& a = list[i];
                std::string const where = "env " + std::to_string(i) + ": ";
                if (!a.is_array() || a.size() != 4)
                {
                    return error_response(where + "expected 4 action values");
                }
                for (int j = 0; j < 4; ++j)
                {
                    if (!a[j].is_number())
                        return error_response(where
                                              + "action values must be numbers");
                    actions[i][j] = a[j].get<double>();
                }
            }
            return this->step(actions);
        }
        if (cmd == "close")
        {
            closed_ = true;
            return json{{"closed", true}}.dump();
        }
    }
    catch (std::exception const& e)
    {
        return error_response(e.what());
    }
    return error_response("unknown command '" + cmd + "'");
}

std::string Session::reset(std::uint64_t seed)
{
    BatchConfig cfg = settings_.batch_config();
    cfg.base_seed = seed;
    batch_.emplace(std::move(cfg));
    auto const obs = batch_->reset();

    json observations = json::array();
    json depths = json::array();
    for (auto const& o : obs)
    {
        observations.push_back(to_json(o));
        if (settings_.depth)
            depths.push_back(encode_depth(o.depth));
    }
    json resp{{"n_envs", batch_->size()},
              {"frictions", batch_->frictions()},
              {"observations", std::move(observations)}};
    if (settings_.depth)
    {
        resp["depth_width"] = settings_.camera.width;
        resp["depth_height"] = settings_.camera.height;
        resp["depths"] = std::move(depths);
    }
    return resp.dump();
}

std::string Session::step(std::vector<Action> const& actions)
{
    auto const transitions = batch_->step(actions);
    json list = json::array();
    for (auto const& t : transitions)
    {
        json j{{"env", t.env_index},
               {"observation", to_json(t.observation)},
               {"reward", to_json(t.reward)},
               {"done", t.done},
               {"goal_completed", t.info.goal_completed},
               {"reset_reason",
                t.reset_reason ? json(std::string(to_string(*t.reset_reason)))
                               : json(nullptr)}};
        if (t.final_stats)
        {
            j["episode"] = to_json(*t.final_stats);
        }
        if (t.reset_observation)
        {
            j["reset_observation"] = to_json(*t.reset_observation);
        }
        if (settings_.depth)
        {
            j["depth"] = encode_depth(t.observation.depth);
            if (t.reset_observation)
                j["reset_depth"] = encode_depth(t.reset_observation->depth);
        }
        list.push_back(std::move(j));
    }
    return json{{"transitions", std::move(list)}}.dump();
}

//---------------------------------------------------------------------------//
std::string base64_encode(std::span<unsigned char const> bytes)
{
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < bytes.size(); i += 3)
    {
        std::uint32_t chunk = std::uint32_t{bytes[i]} << 16;
        std::size_t const n = std::min<std::size_t>(3, bytes.size() - i);
        if (n > 1)
            chunk |= std::uint32_t{bytes[i + 1]} << 8;
        if (n > 2)
            chunk |= bytes[i + 2];
        for (std::size_t k = 0; k < 4; ++k)
        {
            out += k <= n ? b64_alphabet[(chunk >> (18 - 6 * k)) & 0x3f] : '=';
        }
    }
    return out;
}

std::vector<unsigned char> base64_decode(std::string_view text)
{
    if (text.size() % 4 != 0)
    {
        throw std::invalid_argument("base64 length must be a multiple of 4");
    }
    auto value = [](char c) -> int {
        char const* p = std::strchr(b64_alphabet, c);
        if (c == 0 || !p)
            throw std::invalid_argument("invalid base64 character");
        return static_cast<int>(p - b64_alphabet);
    };
    std::vector<unsigned char> out;
    for (std::size_t i = 0; i < text.size(); i += 4)
    {
        std::uint32_t chunk = 0;
        int pad = 0;
        for (int k = 0; k < 4; ++k)
        {
            char const c = text[i + k];
            chunk <<= 6;
            if (c == '=')
                ++pad;
            else
                chunk |= value(c);
        }
        out.push_back(static_cast<unsigned char>(chunk >> 16));
        if (pad < 2)
            out.push_back(static_cast<unsigned char>(chunk >> 8));
        if (pad < 1)
            out.push_back(static_cast<unsigned char>(chunk));
    }
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace aeropush
