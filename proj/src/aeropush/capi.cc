// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aeropush/capi.cc
//---------------------------------------------------------------------------//
#include <aeropush/aeropush.h>

#include <cstdlib>
#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>

#include "harness.hh"
#include "settings.hh"

struct ap_config
{
    aeropush::Settings settings;
};

struct ap_batch
{
    aeropush::Batch batch;
};

struct ap_session
{
    aeropush::Session session;
};

namespace
{
thread_local std::string last_error;

ap_status fail(ap_status status, char const* message)
{
    last_error = message;
    return status;
}

template<class F>
ap_status guarded(F&& f)
{
    try
    {
        f();
        return AP_OK;
    }
    catch (std::invalid_argument const& e)
    {
        return fail(AP_ERR_INVALID_ARGUMENT, e.what());
    }
    catch (std::out_of_range const& e)
    {
        return fail(AP_ERR_INVALID_ARGUMENT, e.what());
    }
    catch (std::logic_error const& e)
    {
        return fail(AP_ERR_STATE, e.what());
    }
    catch (std::ios_base::failure const& e)
    {
        return fail(AP_ERR_IO, e.what());
    }
    catch (std::runtime_error const& e)
    {
        return fail(AP_ERR_RUNTIME, e.what());
    }
    catch (std::exception const& e)
    {
        return fail(AP_ERR_INTERNAL, e.what());
    }
    catch (...)
    {
        return fail(AP_ERR_INTERNAL, "unknown error");
    }
}

char* copy_string(std::string const& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
    {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

#define AP_REQUIRE(PTR) \
    if (!(PTR))         \
    return fail(AP_ERR_INVALID_ARGUMENT, "null argument: " #PTR)

void write_observation(aeropush::Observation const& obs, double* out)
{
    auto values = obs.to_array();
    std::memcpy(out, values.data(), sizeof(double) * values.size());
}

}  // namespace

extern "C" {

char const* ap_version(void)
{
    return "0.1.0";
}

char const* ap_last_error(void)
{
    return last_error.c_str();
}

char const* ap_status_string(ap_status status)
{
    switch (status)
    {
        case AP_OK:
            return "ok";
        case AP_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case AP_ERR_STATE:
            return "invalid state";
        case AP_ERR_IO:
            return "i/o error";
        case AP_ERR_RUNTIME:
            return "runtime error";
        case AP_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

void ap_string_free(char* s)
{
    std::free(s);
}

//---------------------------------------------------------------------------//
ap_status ap_config_create(ap_config** out)
{
    AP_REQUIRE(out);
    return guarded([&] { *out = new ap_config{}; });
}

ap_status ap_config_load_file(ap_config* cfg, char const* path)
{
    AP_REQUIRE(cfg);
    AP_REQUIRE(path);
    return guarded([&] { aeropush::load_file(cfg->settings, path); });
}

ap_status ap_config_set(ap_config* cfg, char const* key, char const* value)
{
    AP_REQUIRE(cfg);
    AP_REQUIRE(key);
    AP_REQUIRE(value);
    return guarded([&] { aeropush::set_value(cfg->settings, key, value); });
}

ap_status ap_config_validate(ap_config const* cfg)
{
    AP_REQUIRE(cfg);
    return guarded([&] { cfg->settings.validate(); });
}

ap_status ap_config_dump(ap_config const* cfg, char** out_yaml)
{
    AP_REQUIRE(cfg);
    AP_REQUIRE(out_yaml);
    return guarded(
        [&] { *out_yaml = copy_string(aeropush::dump_yaml(cfg->settings)); });
}

ap_status ap_config_keys(char** out_lines)
{
    AP_REQUIRE(out_lines);
    return guarded([&] {
        std::string text;
        for (auto const& k : aeropush::settings_keys())
            text += k + "\n";
        *out_lines = copy_string(text);
    });
}

void ap_config_destroy(ap_config* cfg)
{
    delete cfg;
}

//---------------------------------------------------------------------------//
ap_status ap_eval_run(ap_config const* cfg, char** out_csv)
{
    AP_REQUIRE(cfg);
    AP_REQUIRE(out_csv);
    return guarded([&] {
        auto result = aeropush::run_eval(cfg->settings);
        *out_csv = copy_string(aeropush::export_csv(result.rows));
    });
}

ap_status ap_rollout_run(ap_config const* cfg,
                         char** out_csv,
                         ap_episode_summary* out_summary)
{
    AP_REQUIRE(cfg);
    return guarded([&] {
        cfg->settings.validate();
        auto rec = aeropush::run_episode(cfg->settings,
                                         cfg->settings.world.scene.friction_mu,
                                         0,
                                         0,
                                         out_csv != nullptr,
                                         cfg->settings.workers);
        if (out_summary)
        {
            out_summary->goals_completed = rec.stats.goals_completed;
            out_summary->steps = rec.stats.steps;
            out_summary->total_reward = rec.stats.total_reward;
            out_summary->collision_steps = rec.stats.collision_steps;
        }
        if (out_csv)
        {
            *out_csv = copy_string(aeropush::trajectory_csv(rec.trajectory));
        }
    });
}

ap_status ap_bench_run(ap_config const* cfg, int steps, ap_bench_result* out)
{
    AP_REQUIRE(cfg);
    AP_REQUIRE(out);
    return guarded([&] {
        auto r = aeropush::run_bench(cfg->settings, steps);
        out->env_steps = r.env_steps;
        out->seconds = r.seconds;
        out->steps_per_second = r.steps_per_second;
    });
}

//---------------------------------------------------------------------------//
ap_status ap_batch_create(ap_config const* cfg, ap_batch** out)
{
    AP_REQUIRE(cfg);
    AP_REQUIRE(out);
    return guarded([&] {
        cfg->settings.validate();
        *out = new ap_batch{aeropush::Batch(cfg->settings.batch_config())};
    });
}

int ap_batch_size(ap_batch const* batch)
{
    return batch ? batch->batch.size() : 0;
}

ap_status ap_batch_reset(ap_batch* batch, double* out_observations)
{
    AP_REQUIRE(batch);
    return guarded([&] {
        auto obs = batch->batch.reset();
        if (out_observations)
        {
            for (std::size_t i = 0; i < obs.size(); ++i)
                write_observation(obs[i],
                                  out_observations + i * AP_OBSERVATION_SIZE);
        }
    });
}

ap_status ap_batch_step(ap_batch* batch,
                        double const* actions,
                        double* out_observations,
                        double* out_rewards,
                        int* out_done)
{
    AP_REQUIRE(batch);
    AP_REQUIRE(actions);
    return guarded([&] {
        int const n = batch->batch.size();
        std::vector<aeropush::Action> a(n);
        for (int i = 0; i < n; ++i)
        {
            for (int j = 0; j < AP_ACTION_SIZE; ++j)
                a[i][j] = actions[i * AP_ACTION_SIZE + j];
        }
        auto transitions = batch->batch.step(a);
        for (int i = 0; i < n; ++i)
        {
            auto const& t = transitions[i];
            if (out_observations)
                write_observation(
                    t.reset_observation ? *t.reset_observation : t.observation,
                    out_observations + i * AP_OBSERVATION_SIZE);
            if (out_rewards)
                out_rewards[i] = t.reward.total;
            if (out_done)
                out_done[i] = t.done ? 1 : 0;
        }
    });
}

void ap_batch_destroy(ap_batch* batch)
{
    delete batch;
}

//---------------------------------------------------------------------------//
ap_status ap_scripted_action(ap_config const* cfg,
                             double const* observation,
                             double* out_action)
{
    AP_REQUIRE(cfg);
    AP_REQUIRE(observation);
    AP_REQUIRE(out_action);
    return guarded([&] {
        auto obs = aeropush::Observation::from_array(
            std::span<double const>(observation, AP_OBSERVATION_SIZE));
        auto const& s = cfg->settings;
        auto a = aeropush::scripted_policy(
            obs, aeropush::scripted_params(s, s.world), s.bounds);
        for (int j = 0; j < AP_ACTION_SIZE; ++j)
            out_action[j] = a[j];
    });
}

//---------------------------------------------------------------------------//
ap_status ap_session_create(ap_config const* cfg, ap_session** out)
{
    AP_REQUIRE(cfg);
    AP_REQUIRE(out);
    return guarded([&] { *out = new ap_session{aeropush::Session(cfg->settings)}; });
}

ap_status ap_session_handle(ap_session* session,
                            char const* line,
                            char** out_response,
                            int* out_closed)
{
    AP_REQUIRE(session);
    AP_REQUIRE(line);
    AP_REQUIRE(out_response);
    return guarded([&] {
        *out_response = copy_string(session->session.handle(line));
        if (out_closed)
            *out_closed = session->session.closed() ? 1 : 0;
    });
}

void ap_session_destroy(ap_session* session)
{
    delete session;
}

}  // extern "C"
