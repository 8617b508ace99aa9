// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/acceptance.test.cc
//! End-to-end acceptance criteria, one PASS/FAIL line each.
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "aeropush/action.hh"
#include "aeropush/dynamics.hh"
#include "aeropush/episode.hh"
#include "aeropush/harness.hh"
#include "aeropush/mppi.hh"
#include "aeropush/observation.hh"
#include "aeropush/reward.hh"
#include "aeropush/rng.hh"
#include "aeropush/scripted.hh"

namespace aeropush
{
namespace
{
constexpr double pi = std::numbers::pi;
using nlohmann::json;

//---------------------------------------------------------------------------//
// Reward terms and totals at their documented values
TEST(Acceptance, reward_algebra)
{
    double const tol = 1e-12;
    EXPECT_NEAR(2.0, f_pos(0, 2), tol);
    EXPECT_NEAR(1.0, f_pos(1, 2), tol);
    EXPECT_NEAR(-1.0, f_neg(0.125, 2, 0.125), tol);
    EXPECT_NEAR(-2.0, f_neg(1, 2, 0.125), tol);
    EXPECT_NEAR(2.0 / 101 - 3, f_neg(10, 2, 0.125), tol);
    EXPECT_NEAR(10.0, f_delta(0.01, 1000), tol);
    EXPECT_NEAR(1500.0, f_impulse(0.02, 1500, 0.025), tol);
    EXPECT_NEAR(0.0, f_impulse(0.025, 1500, 0.025), tol);

    DistanceSet d;
    d.d_mo_xy = 0.125;
    d.d_og_xy = 0.5;
    EXPECT_NEAR(-3.0, step_reward(d).total, tol);
    d.d_og_xy = 0.02;
    d.delta_d_og_xy = 0.05;
    EXPECT_NEAR(1547.0, step_reward(d).total, tol);
}

//---------------------------------------------------------------------------//
// Progress rewards sum to the net object-goal approach
TEST(Acceptance, progress_telescoping)
{
    for (std::uint32_t traj = 0; traj < 100; ++traj)
    {
        EpisodeConfig cfg;
        cfg.max_steps = 200;
        cfg.goal_mode = GoalMode::random;
        Episode env(World{}, cfg);
        Observation obs = env.reset(2024, 1, traj);
        CounterRng rng(77, 0, traj);
        ScriptedParams const p;
        double const start = env.prev_d_og_xy();
        Vec3 const goal = env.goal().position;
        double sum = 0;
        while (!env.done())
        {
            // Scripted pushing perturbed by noise so the object moves
            Action a = scripted_policy(obs, p);
            for (int i = 0; i < 4; ++i)
                a[i] += 0.3 * rng.normal();
            StepOutcome out = env.step(a);
            sum += out.reward.progress_term;
            obs = out.observation;
            if (out.info.goal_completed)
                break;  // the goal moves on
        }
        double const end = planar_distance(env.state().object.position, goal);
        ASSERT_NEAR(1000 * (start - end), sum, 1e-9) << traj;
    }
}

//---------------------------------------------------------------------------//
// Normalized actions map to velocity commands
TEST(Acceptance, action_mapping)
{
    double const tol = 1e-12;
    ControlInput u = map_action(Action{{-1, 0.7, 0, 0}});
    EXPECT_NEAR(0.0, u.velocity.norm(), tol);
    EXPECT_NEAR(0.0, u.yaw_rate, tol);
    u = map_action(Action{{1, 0, -1, 1}});
    EXPECT_NEAR(1.0, u.velocity.x(), tol);
    EXPECT_NEAR(0.0, u.velocity.y(), tol);
    EXPECT_NEAR(-0.5, u.velocity.z(), tol);
    EXPECT_NEAR(pi / 4, u.yaw_rate, tol);
    u = map_action(Action{{1, 0.5, 0, 0}});
    EXPECT_NEAR(0.0, u.velocity.x(), tol);
    EXPECT_NEAR(1.0, u.velocity.y(), tol);
    u = map_action(Action{{0, 1, 0, 0}});
    EXPECT_NEAR(-0.5, u.velocity.x(), tol);
    EXPECT_NEAR(0.0, u.velocity.y(), tol);

    CounterRng rng(3, 0, 0);
    for (int i = 0; i < 10000; ++i)
    {
        Action a{{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                  rng.uniform(-1, 1)}};
        ASSERT_NEAR((a[0] + 1) / 2, map_action(a).velocity.head<2>().norm(), tol);
    }
}

//---------------------------------------------------------------------------//
// Sliding object stops where Coulomb friction predicts; static friction holds
TEST(Acceptance, coulomb_friction)
{
    double const v0 = 0.5;
    for (double mu : {0.2, 0.4, 0.6})
    {
        SceneParams scene;
        scene.friction_mu = mu;
        ObjectState o;
        o.position = Vec3{0, 0, scene.object_rest_z()};
        o.velocity = Vec3{v0, 0, 0};
        for (int i = 0; i < 10000 && o.velocity.norm() > 0; ++i)
            o = object_step(o, ContactReport{}, scene, 0.01);
        double const expected = v0 * v0 / (2 * mu * scene.gravity);
        EXPECT_EQ(0.0, o.velocity.norm()) << mu;
        EXPECT_NEAR(expected, o.position.x(), 0.05 * expected) << mu;

        // A push just under the friction limit leaves the object at rest
        ObjectState rest;
        rest.position = Vec3{0, 0, scene.object_rest_z()};
        ContactReport c;
        ObjectContact oc;
        oc.point = rest.position - Vec3{0.05, 0, 0};
        oc.normal = Vec3::UnitX();
        oc.penetration = 0.99 * mu * scene.object_mass * scene.gravity
                         / scene.contact_stiffness;
        c.arm_object = oc;
        ObjectState after = object_step(rest, c, scene, 0.1);
        EXPECT_EQ(rest.position, after.position) << mu;
    }
}

//---------------------------------------------------------------------------//
// The same open-loop push moves the object less on grippier tables
TEST(Acceptance, friction_monotonicity)
{
    // Drive forward at 0.2 m/s through the object for 4 s, then hover
    std::vector<Action> seq(40, Action{{-0.6, 0, 0, 0}});
    seq.resize(80, Action::hover());

    std::vector<double> moved;
    for (double mu : {0.05, 0.2, 0.4, 0.6, 0.8})
    {
        World w;
        w.scene.friction_mu = mu;
        EnvState s = start_state(w, EpisodeConfig{});
        Vec3 const start = s.object.position;
        for (Action const& a : seq)
            s = env_step(w, s, map_action(a), 0.1).state;
        EXPECT_TRUE(s.object.on_table) << mu;
        moved.push_back((s.object.position - start).head<2>().norm());
        std::printf("  mu %.2f: object moved %.5f m\n", mu, moved.back());
    }
    EXPECT_GT(moved.back(), 0.0);
    for (std::size_t i = 1; i < moved.size(); ++i)
        EXPECT_GT(moved[i - 1], moved[i]) << i;
}

//---------------------------------------------------------------------------//
// Termination rules: collision grace, eval mode, escape radius, time limit
TEST(Acceptance, episode_protocol)
{
    auto dive = [](bool training) {
        EpisodeConfig cfg;
        cfg.training_mode = training;
        cfg.max_steps = 200;
        cfg.escape_radius = 100;
        Episode env(World{}, cfg);
        env.reset(0);
        int run = 0, steps = 0;
        StepOutcome out;
        do
        {
            out = env.step(Action{{-1, 0, -1, 0}});
            ++steps;
            run = out.info.contact.vehicle_env_collision ? run + 1 : 0;
            if (training && !out.done)
                EXPECT_LT(run, 20);
        } while (!out.done);
        return std::make_tuple(out.info.reset_reason, run, steps);
    };
    auto [why, run, steps] = dive(true);
    EXPECT_EQ(ResetReason::vehicle_collision, why);
    EXPECT_EQ(20, run);
    auto [why_eval, run_eval_, steps_eval] = dive(false);
    EXPECT_EQ(ResetReason::time_limit, why_eval);
    EXPECT_EQ(200, steps_eval);
    EXPECT_GT(run_eval_, 20);

    EpisodeConfig cfg;
    EpisodeTimers t;
    EXPECT_EQ(ResetReason::escaped_radius, check_termination(t, Vec3{0, 5.01, 0}, cfg));
    EXPECT_FALSE(check_termination(t, Vec3{0, 4.99, 0}, cfg));
    t.steps = 999;
    EXPECT_FALSE(check_termination(t, Vec3::Zero(), cfg));
    t.steps = 1000;
    EXPECT_EQ(ResetReason::time_limit, check_termination(t, Vec3::Zero(), cfg));
}

//---------------------------------------------------------------------------//
// Scripted baseline completes a goal across the evaluation frictions
TEST(Acceptance, scripted_baseline)
{
    Settings s;
    s.episode.training_mode = false;
    s.episode.goal_mode = GoalMode::alternating;
    int failures = 0;
    for (double mu : {0.2, 0.3, 0.4, 0.5, 0.6})
    {
        int fewest = 1 << 30;
        for (std::uint64_t seed = 0; seed < 20; ++seed)
        {
            s.seed = seed;
            auto rec = run_episode(s, mu, 0, static_cast<std::uint32_t>(seed),
                                   false, 1);
            fewest = std::min(fewest, rec.stats.goals_completed);
            if (rec.stats.goals_completed < 1)
            {
                ++failures;
                ADD_FAILURE() << "mu " << mu << " seed " << seed;
            }
        }
        std::printf("  mu %.1f: at least %d goals per episode\n", mu, fewest);
    }
    EXPECT_EQ(0, failures);
}

//---------------------------------------------------------------------------//
// MPPI reaches the first goal and weights behave
TEST(Acceptance, mppi_planner)
{
    std::vector<double> r{-5, 1, 0.5, -100};
    auto w = mppi_weights(r, 1e-9);
    EXPECT_EQ(1.0, w[1]);
    w = mppi_weights(r, 1.0);
    EXPECT_NEAR(1.0, std::accumulate(w.begin(), w.end(), 0.0), 1e-12);

    int reached = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        World world;
        world.scene.friction_mu = 0.4;
        EpisodeConfig cfg;
        cfg.training_mode = false;
        Episode env(world, cfg);
        MppiConfig mc;
        mc.horizon = 20;
        mc.samples = 256;
        mc.workers = 1;
        MppiPlanner planner(world, cfg.dt, {}, {}, mc, seed);
        env.reset(seed);
        bool done = false;
        while (!env.done() && !done)
        {
            StepOutcome out = env.step(planner.plan(env.snapshot()));
            done = out.info.goal_completed;
        }
        std::printf("  mppi seed %llu: %s after %d steps\n",
                    static_cast<unsigned long long>(seed),
                    done ? "goal" : "no goal",
                    env.stats().steps);
        reached += done;
    }
    EXPECT_GE(reached, 7);
}

//---------------------------------------------------------------------------//
// Evaluation output is byte-identical across runs and worker counts
TEST(Acceptance, determinism)
{
    Settings s;
    s.eval_frictions = {0.2, 0.4, 0.6};
    s.episodes_per_value = 4;
    s.seed = 11;
    s.episode.goal_mode = GoalMode::random;
    s.workers = 1;
    std::string const a = export_csv(run_eval(s).rows);
    EXPECT_EQ(a, export_csv(run_eval(s).rows));
    s.workers = 3;
    EXPECT_EQ(a, export_csv(run_eval(s).rows));

    BatchConfig bc;
    bc.n_envs = 8;
    bc.base_seed = 5;
    auto trace = [&](int workers) {
        bc.workers = workers;
        Batch b(bc);
        auto obs = b.reset();
        std::vector<double> out;
        for (int k = 0; k < 50; ++k)
        {
            std::vector<Action> acts;
            for (auto const& o : obs)
                acts.push_back(scripted_policy(o, ScriptedParams{}));
            for (auto const& t : b.step(acts))
            {
                out.push_back(t.reward.total);
                obs[t.env_index] = t.observation;
            }
        }
        return out;
    };
    EXPECT_EQ(trace(1), trace(4));
}

//---------------------------------------------------------------------------//
// Depth along the optical axis and cube footprint
TEST(Acceptance, depth_rendering)
{
    SceneParams scene;
    CameraModel cam;
    ObjectState obj;
    obj.position = Vec3{-0.25, 0, scene.object_rest_z()};
    DepthImage wall = render_depth(
        Pose{Vec3{0.5, 0, 2.5}, Rotation::Identity()}, cam, scene, obj);
    for (float v : wall.values)
        ASSERT_NEAR(2.0, v, 1e-6);

    obj.position = Vec3{0, 0, scene.object_rest_z()};
    DepthImage img = render_depth(
        Pose{obj.position - Vec3{1, 0, 0}, Rotation::Identity()}, cam, scene, obj);
    double const face = 1 - scene.object_edge / 2;
    double const he_tan = scene.object_edge / 2 / face;
    double const pix = 2 * std::tan(cam.horizontal_fov / 2) / cam.width;
    for (int row = 0; row < cam.height; ++row)
    {
        for (int col = 0; col < cam.width; ++col)
        {
            double const u = (col + 0.5 - cam.width / 2.0) * pix;
            double const v = (cam.height / 2.0 - row - 0.5) * pix;
            bool const inside = std::abs(u) <= he_tan && std::abs(v) <= he_tan;
            bool const hit = std::abs(img.at(row, col) - face) < 1e-6;
            if (inside)
                EXPECT_TRUE(hit) << row << "," << col;
            else if (hit)
                EXPECT_LE(std::max(std::abs(u), std::abs(v)) - he_tan, pix);
        }
    }
}

//---------------------------------------------------------------------------//
// An agent driving the JSON protocol sees what an in-process agent sees
TEST(Acceptance, protocol_equivalence)
{
    Settings s;
    s.n_envs = 4;
    s.seed = 13;
    s.episode.max_steps = 100;
    ScriptedParams const p = scripted_params(s, s.world);

    Session session(s);
    json r = json::parse(session.handle(R"({"cmd":"reset"})"));
    Batch batch(s.batch_config());
    auto obs = batch.reset();
    std::vector<Observation> remote(4);
    for (int i = 0; i < 4; ++i)
    {
        remote[i] = Observation::from_array(
            r["observations"][i].get<std::vector<double>>());
    }
    for (int k = 0; k < 250; ++k)
    {
        json req{{"cmd", "step"}, {"actions", json::array()}};
        std::vector<Action> local;
        for (int i = 0; i < 4; ++i)
        {
            Action a = scripted_policy(remote[i], p, s.bounds);
            req["actions"].push_back({a[0], a[1], a[2], a[3]});
            local.push_back(scripted_policy(obs[i], p, s.bounds));
        }
        json t = json::parse(session.handle(req.dump()));
        auto tr = batch.step(local);
        for (int i = 0; i < 4; ++i)
        {
            json const& j = t["transitions"][i];
            ASSERT_EQ(tr[i].reward.total, j["reward"]["total"].get<double>());
            ASSERT_EQ(tr[i].done, j["done"].get<bool>());
            obs[i] = tr[i].done ? *tr[i].reset_observation : tr[i].observation;
            remote[i] = Observation::from_array(
                j[tr[i].done ? "reset_observation" : "observation"]
                    .get<std::vector<double>>());
            ASSERT_EQ(obs[i].to_array(), remote[i].to_array());
        }
    }
}

//---------------------------------------------------------------------------//
class CriterionPrinter : public ::testing::EmptyTestEventListener
{
  public:
    void OnTestPartResult(::testing::TestPartResult const& r) override
    {
        if (r.failed())
        {
            std::printf("  %s:%d: %s\n",
                        r.file_name() ? r.file_name() : "?",
                        r.line_number(),
                        r.summary());
        }
    }
    void OnTestEnd(::testing::TestInfo const& info) override
    {
        bool const ok = info.result()->Passed();
        std::printf("%s %s (%.1f s)\n",
                    ok ? "PASS" : "FAIL",
                    info.name(),
                    info.result()->elapsed_time() / 1000.0);
        std::fflush(stdout);
        failed_ += !ok;
        ++total_;
    }
    void OnTestProgramEnd(::testing::UnitTest const&) override
    {
        std::printf("%d/%d criteria passed\n", total_ - failed_, total_);
    }

  private:
    int failed_{0};
    int total_{0};
};

}  // namespace
}  // namespace aeropush

int main(int argc, char** argv)
{
    ::testing::InitGoogleTest(&argc, argv);
    auto& listeners = ::testing::UnitTest::GetInstance()->listeners();
    delete listeners.Release(listeners.default_result_printer());
    listeners.Append(new aeropush::CriterionPrinter);
    return RUN_ALL_TESTS();
}
