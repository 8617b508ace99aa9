/* Copyright 2026 The aeropush Authors
 * SPDX-License-Identifier: Apache-2.0 */
/*!
 * \file aeropush/aeropush.h
 * \brief C interface to the aeropush pushing simulator.
 *
 * All functions return an ap_status. On failure a description is available
 * from ap_last_error() on the calling thread until the next failing call.
 * Strings returned through char** arguments are owned by the caller and
 * released with ap_string_free().
 */
#ifndef AEROPUSH_AEROPUSH_H
#define AEROPUSH_AEROPUSH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(AEROPUSH_BUILDING)
#    define AP_API __declspec(dllexport)
#  else
#    define AP_API __declspec(dllimport)
#  endif
#else
#  define AP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ap_status
{
    AP_OK = 0,
    AP_ERR_INVALID_ARGUMENT = 1,
    AP_ERR_STATE = 2,
    AP_ERR_IO = 3,
    AP_ERR_RUNTIME = 4,
    AP_ERR_INTERNAL = 5
} ap_status;

/*! Number of scalars in one observation vector */
#define AP_OBSERVATION_SIZE 16
/*! Number of components in one action */
#define AP_ACTION_SIZE 4

typedef struct ap_config ap_config;
typedef struct ap_batch ap_batch;
typedef struct ap_session ap_session;

typedef struct ap_episode_summary
{
    int goals_completed;
    int steps;
    double total_reward;
    int collision_steps;
} ap_episode_summary;

typedef struct ap_bench_result
{
    long env_steps;
    double seconds;
    double steps_per_second;
} ap_bench_result;

AP_API char const* ap_version(void);
AP_API char const* ap_last_error(void);
AP_API char const* ap_status_string(ap_status status);
AP_API void ap_string_free(char* s);

/* Configuration: defaults, then YAML files and key=value overrides */
AP_API ap_status ap_config_create(ap_config** out);
AP_API ap_status ap_config_load_file(ap_config* cfg, char const* path);
AP_API ap_status ap_config_set(ap_config* cfg, char const* key,
                               char const* value);
AP_API ap_status ap_config_validate(ap_config const* cfg);
AP_API ap_status ap_config_dump(ap_config const* cfg, char** out_yaml);
AP_API ap_status ap_config_keys(char** out_lines);
AP_API void ap_config_destroy(ap_config* cfg);

/* Evaluation table as CSV text */
AP_API ap_status ap_eval_run(ap_config const* cfg, char** out_csv);

/* One episode at the configured friction; trajectory as CSV text */
AP_API ap_status ap_rollout_run(ap_config const* cfg, char** out_csv,
                                ap_episode_summary* out_summary);

AP_API ap_status ap_bench_run(ap_config const* cfg, int steps,
                              ap_bench_result* out);

/* Batched environments. Buffers hold n_envs consecutive records. A finished
 * environment is reset within the step; its out_observations record is then
 * the first observation of the new episode. */
AP_API ap_status ap_batch_create(ap_config const* cfg, ap_batch** out);
AP_API int ap_batch_size(ap_batch const* batch);
AP_API ap_status ap_batch_reset(ap_batch* batch, double* out_observations);
AP_API ap_status ap_batch_step(ap_batch* batch, double const* actions,
                               double* out_observations, double* out_rewards,
                               int* out_done);
AP_API void ap_batch_destroy(ap_batch* batch);

/* Scripted policy applied to one observation vector */
AP_API ap_status ap_scripted_action(ap_config const* cfg,
                                    double const* observation,
                                    double* out_action);

/* Line-oriented JSON protocol */
AP_API ap_status ap_session_create(ap_config const* cfg, ap_session** out);
AP_API ap_status ap_session_handle(ap_session* session, char const* line,
                                   char** out_response, int* out_closed);
AP_API void ap_session_destroy(ap_session* session);

#ifdef __cplusplus
}
#endif

#endif /* AEROPUSH_AEROPUSH_H */
