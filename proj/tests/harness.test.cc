// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/harness.test.cc
//---------------------------------------------------------------------------//
#include "aeropush/harness.hh"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace aeropush
{
namespace
{
using nlohmann::json;

//---------------------------------------------------------------------------//
TEST(SummarizeTest, matches_direct_computation)
{
    std::vector<EpisodeStats> eps;
    int const goals[] = {3, 0, 5, 2, 2};
    for (int i = 0; i < 5; ++i)
    {
        EpisodeStats e;
        e.goals_completed = goals[i];
        e.total_reward = -100.0 * i + 7;
        e.steps = 100 + i;
        e.collision_steps = i;
        eps.push_back(e);
    }
    EvalRow r = summarize(0.3, eps);
    EXPECT_EQ(0.3, r.friction);
    EXPECT_EQ(5, r.episodes);
    EXPECT_NEAR(12.0 / 5, r.mean_goals, 1e-15);
    // Population variance of {3,0,5,2,2} around 2.4
    double const var = (0.36 + 5.76 + 6.76 + 0.16 + 0.16) / 5;
    EXPECT_NEAR(std::sqrt(var), r.std_goals, 1e-12);
    EXPECT_NEAR((7 * 5 - 1000.0) / 5, r.mean_reward, 1e-12);
    EXPECT_NEAR(10.0 / 510, r.collision_rate, 1e-15);

    EvalRow empty = summarize(0.5, {});
    EXPECT_EQ(0, empty.episodes);
    EXPECT_EQ(0.0, empty.mean_goals);
}

TEST(EvalCsvTest, export_and_parse)
{
    std::vector<EvalRow> rows(3);
    rows[0] = {0.6, 10, 1.5, 0.5, -1234.5678901, 0.01};
    rows[1] = {0.2, 10, 3.25, 1.1, 250.0, 0.0};
    rows[2] = {0.4, 10, 2.0, 0.0, -5.0, 0.125};
    std::string csv = export_csv(rows);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ("friction,episodes,mean_goals,std_goals,mean_reward,collision_rate",
              line);
    std::getline(in, line);
    EXPECT_EQ("0.200000,10,3.250000,1.100000,250.000000,0.000000", line);

    auto back = parse_csv(csv);
    ASSERT_EQ(3u, back.size());
    double const expect_mu[] = {0.2, 0.4, 0.6};
    for (int i = 0; i < 3; ++i)
        EXPECT_EQ(expect_mu[i], back[i].friction);
    EXPECT_NEAR(-1234.5678901, back[2].mean_reward, 1e-6);
    EXPECT_NEAR(0.125, back[1].collision_rate, 1e-6);

    EXPECT_THROW(export_csv({}), std::invalid_argument);
    EXPECT_THROW(parse_csv("a,b\n"), std::invalid_argument);
    EXPECT_THROW(parse_csv("friction,episodes,mean_goals,std_goals,mean_reward,"
                           "collision_rate\n0.1,2\n"),
                 std::invalid_argument);
}

//---------------------------------------------------------------------------//
Settings eval_settings()
{
    Settings s;
    s.eval_frictions = {0.4};
    s.episodes_per_value = 10;
    s.episode.max_steps = 300;
    s.seed = 21;
    s.workers = 1;
    return s;
}

TEST(EvalTest, scripted_at_nominal_friction)
{
    Settings s = eval_settings();
    EvalResult r = run_eval(s);
    ASSERT_EQ(1u, r.rows.size());
    ASSERT_EQ(1u, r.episodes.size());
    ASSERT_EQ(10u, r.episodes[0].size());
    EXPECT_EQ(10, r.rows[0].episodes);
    EXPECT_GE(r.rows[0].mean_goals, 1.0);
    for (auto const& e : r.episodes[0])
    {
        EXPECT_EQ(300, e.steps);  // evaluation episodes run to the limit
        EXPECT_NE(ResetReason::vehicle_collision, e.reset_reason);
    }
    EXPECT_EQ(export_csv(r.rows), export_csv(run_eval(s).rows));
}

TEST(EvalTest, hover_agent_completes_nothing)
{
    Settings s = eval_settings();
    s.agent = AgentKind::zero;
    s.eval_frictions = {0.2, 0.6};
    s.episodes_per_value = 3;
    EvalResult r = run_eval(s);
    for (auto const& row : r.rows)
    {
        EXPECT_EQ(0.0, row.mean_goals);
        EXPECT_EQ(0.0, row.std_goals);
        EXPECT_EQ(0.0, row.collision_rate);
        EXPECT_LT(row.mean_reward, 0);
    }
    s.agent = AgentKind::external;
    EXPECT_THROW(run_eval(s), std::invalid_argument);
}

TEST(EvalTest, worker_independent)
{
    Settings s = eval_settings();
    s.eval_frictions = {0.5, 0.2, 0.35};
    s.episodes_per_value = 4;
    s.episode.goal_mode = GoalMode::random;
    std::string a = export_csv(run_eval(s).rows);
    s.workers = 3;
    EXPECT_EQ(a, export_csv(run_eval(s).rows));
    // Rows come out sorted by friction
    auto rows = parse_csv(a);
    EXPECT_EQ(0.2, rows[0].friction);
    EXPECT_EQ(0.5, rows[2].friction);
}

TEST(EvalTest, mppi_agent_runs)
{
    Settings s = eval_settings();
    s.agent = AgentKind::mppi;
    s.mppi.samples = 8;
    s.mppi.horizon = 4;
    s.episode.max_steps = 10;
    s.episodes_per_value = 2;
    EvalResult r = run_eval(s);
    EXPECT_EQ(10, r.episodes[0][0].steps);
    EXPECT_EQ(export_csv(r.rows), export_csv(run_eval(s).rows));
}

//---------------------------------------------------------------------------//
TEST(TrajectoryTest, csv_matches_record)
{
    Settings s;
    s.agent = AgentKind::scripted;
    EpisodeRecord rec = run_episode(s, 0.4, 0, 0, true);
    ASSERT_EQ(1000u, rec.trajectory.size());
    EXPECT_EQ(1000, rec.stats.steps);
    std::string csv = trajectory_csv(rec.trajectory);

    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ('#', line[0]);
    int n = 0;
    while (std::getline(in, line))
    {
        auto const& row = rec.trajectory[n];
        double t, vx, vy, vz, yaw, ox, oy, oz;
        ASSERT_EQ(8,
                  std::sscanf(line.c_str(),
                              "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf",
                              &t, &vx, &vy, &vz, &yaw, &ox, &oy, &oz));
        EXPECT_NEAR((n + 1) * 0.1, t, 1e-9);
        EXPECT_NEAR(row.state.vehicle.position.x(), vx, 1e-9);
        EXPECT_NEAR(row.state.vehicle.position.z(), vz, 1e-9);
        EXPECT_NEAR(row.state.object.position.x(), ox, 1e-9);
        EXPECT_NEAR(row.state.object.position.y(), oy, 1e-9);
        ++n;
    }
    EXPECT_EQ(1000, n);
    EXPECT_EQ(1001, std::count(csv.begin(), csv.end(), '\n'));

    // Not recording keeps the statistics
    EpisodeRecord quiet = run_episode(s, 0.4, 0, 0, false);
    EXPECT_TRUE(quiet.trajectory.empty());
    EXPECT_EQ(rec.stats.total_reward, quiet.stats.total_reward);
    EXPECT_EQ(rec.stats.goals_completed, quiet.stats.goals_completed);
}

TEST(BenchTest, counts_steps)
{
    Settings s;
    s.n_envs = 4;
    s.workers = 1;
    BenchResult b = run_bench(s, 25);
    EXPECT_EQ(100, b.env_steps);
    EXPECT_GT(b.steps_per_second, 0);
    EXPECT_THROW(run_bench(s, 0), std::invalid_argument);
}

//---------------------------------------------------------------------------//
std::string error_of(std::string const& response)
{
    json j = json::parse(response);
    return j.contains("error") ? j["error"].get<std::string>() : "";
}

json actions_json(std::vector<Action> const& actions)
{
    json list = json::array();
    for (auto const& a : actions)
        list.push_back({a[0], a[1], a[2], a[3]});
    return json{{"cmd", "step"}, {"actions", list}};
}

TEST(SessionTest, reset_and_step)
{
    Settings s;
    Session session(s);
    json r = json::parse(session.handle(R"({"cmd":"reset","seed":5})"));
    ASSERT_EQ(32, r["n_envs"].get<int>());
    ASSERT_EQ(32u, r["observations"].size());
    EXPECT_EQ(16u, r["observations"][0].size());
    EXPECT_EQ(friction_schedule(32), r["frictions"].get<std::vector<double>>());
    EXPECT_FALSE(r.contains("depths"));

    json step = actions_json(std::vector<Action>(32, Action::hover()));
    json t = json::parse(session.handle(step.dump()));
    ASSERT_EQ(32u, t["transitions"].size());
    for (int i = 0; i < 32; ++i)
    {
        json const& tr = t["transitions"][i];
        EXPECT_EQ(i, tr["env"].get<int>());
        EXPECT_FALSE(tr["done"].get<bool>());
        EXPECT_TRUE(tr["reset_reason"].is_null());
        EXPECT_FALSE(tr.contains("reset_observation"));
        EXPECT_TRUE(tr["reward"].contains("nav_xy"));
    }
    EXPECT_EQ(R"({"closed":true})", session.handle(R"({"cmd":"close"})"));
    EXPECT_TRUE(session.closed());
    EXPECT_EQ("session closed", error_of(session.handle(R"({"cmd":"reset"})")));
}

TEST(SessionTest, errors_leave_session_usable)
{
    Settings s;
    s.n_envs = 2;
    Session session(s);
    EXPECT_EQ("malformed JSON", error_of(session.handle("{nope")));
    EXPECT_EQ("request needs a string \"cmd\" field",
              error_of(session.handle(R"({"x":1})")));
    EXPECT_EQ("step before reset",
              error_of(session.handle(R"({"cmd":"step","actions":[]})")));
    EXPECT_EQ("unknown command 'fly'", error_of(session.handle(R"({"cmd":"fly"})")));
    EXPECT_EQ("seed must be a non-negative integer",
              error_of(session.handle(R"({"cmd":"reset","seed":-1})")));
    EXPECT_EQ("", error_of(session.handle(R"({"cmd":"reset"})")));
    EXPECT_EQ("expected 2 action vectors, got 1",
              error_of(session.handle(R"({"cmd":"step","actions":[[0,0,0,0]]})")));
    EXPECT_EQ("env 1: expected 4 action values",
              error_of(session.handle(
                  R"({"cmd":"step","actions":[[0,0,0,0],[0,0,0]]})")));
    EXPECT_EQ("env 0: action values must be numbers",
              error_of(session.handle(
                  R"({"cmd":"step","actions":[[0,"a",0,0],[0,0,0,0]]})")));
    json ok = json::parse(session.handle(
        R"({"cmd":"step","actions":[[0,0,0,0],[-1,0,0,0]]})"));
    EXPECT_EQ(2u, ok["transitions"].size());
}

TEST(SessionTest, scripted_over_protocol_matches_in_process)
{
    Settings s;
    s.n_envs = 4;
    s.seed = 8;
    s.episode.max_steps = 80;
    s.episode.goal_mode = GoalMode::random;
    ScriptedParams const p = scripted_params(s, s.world);

    Session session(s);
    json r = json::parse(session.handle(R"({"cmd":"reset"})"));
    Batch batch(s.batch_config());
    std::vector<Observation> obs = batch.reset();
    std::vector<Observation> remote(4);
    for (int i = 0; i < 4; ++i)
        remote[i] = Observation::from_array(
            r["observations"][i].get<std::vector<double>>());

    int dones = 0;
    for (int step = 0; step < 200; ++step)
    {
        std::vector<Action> local_a, remote_a;
        for (int i = 0; i < 4; ++i)
        {
            local_a.push_back(scripted_policy(obs[i], p, s.bounds));
            remote_a.push_back(scripted_policy(remote[i], p, s.bounds));
        }
        json t = json::parse(session.handle(actions_json(remote_a).dump()));
        auto local = batch.step(local_a);
        for (int i = 0; i < 4; ++i)
        {
            json const& tr = t["transitions"][i];
            ASSERT_EQ(local[i].reward.total, tr["reward"]["total"].get<double>());
            ASSERT_EQ(local[i].done, tr["done"].get<bool>());
            auto const& next = local[i].done ? *local[i].reset_observation
                                             : local[i].observation;
            obs[i] = next;
            remote[i] = Observation::from_array(
                tr[local[i].done ? "reset_observation" : "observation"]
                    .get<std::vector<double>>());
            ASSERT_EQ(next.to_array(), remote[i].to_array());
            if (local[i].done)
            {
                ++dones;
                EXPECT_EQ(local[i].final_stats->goals_completed,
                          tr["episode"]["goals_completed"].get<int>());
                EXPECT_EQ("time_limit", tr["reset_reason"].get<std::string>());
            }
        }
    }
    EXPECT_EQ(8, dones);
}

TEST(SessionTest, transcript_replays_identically)
{
    Settings s;
    s.n_envs = 2;
    std::vector<std::string> requests{
        R"({"cmd":"reset","seed":3})",
        R"({"cmd":"step","actions":[[0.5,0.1,0,0],[0,-0.3,0.2,0.1]]})",
        R"({"cmd":"step","actions":[[0.5,0.1,0,0],[1,1,1,1]]})",
        R"({"cmd":"bogus"})",
        R"({"cmd":"step","actions":[[-1,0,0,0],[-1,0,0,0]]})",
        R"({"cmd":"close"})"};
    auto play = [&] {
        Session session(s);
        std::string out;
        for (auto const& r : requests)
            out += session.handle(r) + "\n";
        return out;
    };
    EXPECT_EQ(play(), play());
}

TEST(SessionTest, depth_frames)
{
    Settings s;
    s.n_envs = 2;
    s.depth = true;
    s.camera.width = 8;
    s.camera.height = 6;
    Session session(s);
    json r = json::parse(session.handle(R"({"cmd":"reset"})"));
    EXPECT_EQ(8, r["depth_width"].get<int>());
    auto bytes = base64_decode(r["depths"][0].get<std::string>());
    ASSERT_EQ(8u * 6u * 4u, bytes.size());
    float first;
    std::memcpy(&first, bytes.data(), 4);
    EXPECT_GE(first, s.camera.near);
    EXPECT_LE(first, s.camera.far);
    json t = json::parse(session.handle(
        R"({"cmd":"step","actions":[[-1,0,0,0],[-1,0,0,0]]})"));
    EXPECT_TRUE(t["transitions"][0].contains("depth"));
}

TEST(Base64Test, known_vectors)
{
    auto enc = [](std::string const& s) {
        return base64_encode(std::span(
            reinterpret_cast<unsigned char const*>(s.data()), s.size()));
    };
    EXPECT_EQ("", enc(""));
    EXPECT_EQ("Zg==", enc("f"));
    EXPECT_EQ("Zm8=", enc("fo"));
    EXPECT_EQ("Zm9v", enc("foo"));
    EXPECT_EQ("Zm9vYg==", enc("foob"));
    EXPECT_EQ("Zm9vYmE=", enc("fooba"));
    EXPECT_EQ("Zm9vYmFy", enc("foobar"));
    auto dec = base64_decode("Zm9vYmE=");
    EXPECT_EQ("fooba", std::string(dec.begin(), dec.end()));
    EXPECT_THROW(base64_decode("abc"), std::invalid_argument);
    EXPECT_THROW(base64_decode("ab!="), std::invalid_argument);

    std::vector<unsigned char> all(256);
    for (int i = 0; i < 256; ++i)
        all[i] = static_cast<unsigned char>(i);
    EXPECT_EQ(all, base64_decode(base64_encode(all)));
}

TEST(AgentFactoryTest, kinds)
{
    Settings s;
    World w;
    Episode env(w, s.episode);
    Observation o = env.reset(0);
    EXPECT_EQ(Action::hover(), [&] {
        s.agent = AgentKind::zero;
        return make_agent(s, w, 0, 0, 1)->act(o, env);
    }());
    s.agent = AgentKind::scripted;
    EXPECT_EQ(scripted_policy(o, scripted_params(s, w), s.bounds),
              make_agent(s, w, 0, 0, 1)->act(o, env));
    s.agent = AgentKind::external;
    EXPECT_THROW(make_agent(s, w, 0, 0, 1), std::invalid_argument);

    s.world.geometry.arm_exposed_length = 0.3;
    EXPECT_EQ(0.15, scripted_params(s, s.world).arm_half_length);
}

}  // namespace
}  // namespace aeropush
