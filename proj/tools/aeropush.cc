// Copyright 2026 The aeropush Authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/aeropush.cc
//! Command-line front end. Uses only the public C interface.
//---------------------------------------------------------------------------//
#include <aeropush/aeropush.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include "CLI11.hpp"

namespace
{
//---------------------------------------------------------------------------//
struct Failure
{
    int code;
};

void check(ap_status status, char const* what)
{
    if (status != AP_OK)
    {
        std::cerr << "aeropush: " << what << ": " << ap_last_error() << '\n';
        throw Failure{status == AP_ERR_INVALID_ARGUMENT ? 2 : 1};
    }
}

struct ConfigDeleter
{
    void operator()(ap_config* c) const { ap_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<ap_config, ConfigDeleter>;

struct SessionDeleter
{
    void operator()(ap_session* s) const { ap_session_destroy(s); }
};
using SessionPtr = std::unique_ptr<ap_session, SessionDeleter>;

struct CString
{
    char* p{nullptr};
    ~CString() { ap_string_free(p); }
};

//---------------------------------------------------------------------------//
//! Options shared by every subcommand; later sources win
struct CommonOptions
{
    std::string config_file;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> agent;
    std::optional<std::string> goal_mode;
    std::optional<int> n_envs;
    std::optional<int> episodes;
    std::optional<std::string> frictions;
    std::optional<double> friction;
    std::optional<int> max_steps;
    bool depth{false};
    bool training{false};
    bool eval_mode{false};
};

void add_common(CLI::App& app, CommonOptions& o)
{
    app.add_option("-c,--config", o.config_file, "YAML config file")
        ->check(CLI::ExistingFile);
    app.add_option("--set", o.sets, "Override a setting: key=value")
        ->allow_extra_args(false);
    app.add_option("--seed", o.seed, "Base random seed (run.seed)");
    app.add_option("--workers", o.workers, "Worker threads, 0 = all (run.workers)");
    app.add_option("--agent", o.agent, "scripted, mppi, zero (run.agent)");
    app.add_option("--goal-mode", o.goal_mode, "alternating or random");
    app.add_option("--n-envs", o.n_envs, "Environments per batch");
    app.add_option("--episodes", o.episodes, "Evaluation episodes per friction");
    app.add_option("--frictions", o.frictions,
                   "Evaluation frictions, e.g. \"[0.2, 0.4]\"");
    app.add_option("--friction", o.friction, "Friction for a single rollout");
    app.add_option("--max-steps", o.max_steps, "Episode length in steps");
    app.add_flag("--depth", o.depth, "Render depth images");
    app.add_flag("--training", o.training, "Enable vehicle-collision resets");
    app.add_flag("--no-training", o.eval_mode, "Disable vehicle-collision resets");
}

void set(ap_config* cfg, std::string const& key, std::string const& value)
{
    check(ap_config_set(cfg, key.c_str(), value.c_str()),
          ("setting " + key).c_str());
}

ConfigPtr build_config(CommonOptions const& o)
{
    ap_config* raw = nullptr;
    check(ap_config_create(&raw), "creating config");
    ConfigPtr cfg{raw};
    if (!o.config_file.empty())
    {
        check(ap_config_load_file(cfg.get(), o.config_file.c_str()),
              "loading config");
    }
    for (auto const& kv : o.sets)
    {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
        {
            std::cerr << "aeropush: --set expects key=value, got '" << kv
                      << "'\n";
            throw Failure{2};
        }
        set(cfg.get(), kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed)
        set(cfg.get(), "run.seed", std::to_string(*o.seed));
    if (o.workers)
        set(cfg.get(), "run.workers", std::to_string(*o.workers));
    if (o.agent)
        set(cfg.get(), "run.agent", *o.agent);
    if (o.goal_mode)
        set(cfg.get(), "episode.goal_mode", *o.goal_mode);
    if (o.n_envs)
        set(cfg.get(), "batch.n_envs", std::to_string(*o.n_envs));
    if (o.episodes)
        set(cfg.get(), "eval.episodes_per_value", std::to_string(*o.episodes));
    if (o.frictions)
        set(cfg.get(), "eval.frictions", *o.frictions);
    if (o.friction)
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", *o.friction);
        set(cfg.get(), "scene.friction_mu", buf);
    }
    if (o.max_steps)
        set(cfg.get(), "episode.max_steps", std::to_string(*o.max_steps));
    if (o.depth)
        set(cfg.get(), "camera.enabled", "true");
    if (o.training)
        set(cfg.get(), "episode.training_mode", "true");
    if (o.eval_mode)
        set(cfg.get(), "episode.training_mode", "false");
    check(ap_config_validate(cfg.get()), "invalid configuration");
    return cfg;
}

void write_output(std::string const& path, char const* text)
{
    if (path.empty() || path == "-")
    {
        std::fputs(text, stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
    {
        std::cerr << "aeropush: cannot write '" << path << "'\n";
        throw Failure{1};
    }
}

//---------------------------------------------------------------------------//
// Serve one line-oriented session; returns after close or end of input
template<class ReadLine, class WriteLine>
void serve_session(ap_config const* cfg, ReadLine&& read_line, WriteLine&& write_line)
{
    ap_session* raw = nullptr;
    check(ap_session_create(cfg, &raw), "creating session");
    SessionPtr session{raw};
    std::string line;
    while (read_line(line))
    {
        if (line.empty() || line == "\r")
            continue;
        CString response;
        int closed = 0;
        check(ap_session_handle(session.get(), line.c_str(), &response.p, &closed),
              "handling request");
        if (!write_line(std::string(response.p) + "\n"))
            return;
        if (closed)
            return;
    }
}

void serve_stdio(ap_config const* cfg)
{
    serve_session(
        cfg,
        [](std::string& line) { return static_cast<bool>(std::getline(std::cin, line)); },
        [](std::string const& text) {
            std::fputs(text.c_str(), stdout);
            return std::fflush(stdout) == 0;
        });
}

void serve_tcp(ap_config const* cfg, std::string const& address, bool once)
{
    auto colon = address.rfind(':');
    std::string host = colon == std::string::npos ? "127.0.0.1"
                                                  : address.substr(0, colon);
    std::string port = colon == std::string::npos ? address
                                                  : address.substr(colon + 1);
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    if (int rc = getaddrinfo(host.c_str(), port.c_str(), &hints, &res))
    {
        std::cerr << "aeropush: cannot resolve '" << address
                  << "': " << gai_strerror(rc) << '\n';
        throw Failure{2};
    }
    int listener = socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    int yes = 1;
    setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    if (listener < 0 || bind(listener, res->ai_addr, res->ai_addrlen) != 0
        || listen(listener, 1) != 0)
    {
        freeaddrinfo(res);
        std::perror("aeropush: listen");
        throw Failure{1};
    }
    freeaddrinfo(res);
    std::cerr << "aeropush: listening on " << host << ':' << port << '\n';

    do
    {
        int client = accept(listener, nullptr, nullptr);
        if (client < 0)
        {
            std::perror("aeropush: accept");
            continue;
        }
        std::string pending;
        auto read_line = [&](std::string& line) {
            for (;;)
            {
                auto nl = pending.find('\n');
                if (nl != std::string::npos)
                {
                    line = pending.substr(0, nl);
                    pending.erase(0, nl + 1);
                    return true;
                }
                char buf[4096];
                ssize_t n = recv(client, buf, sizeof(buf), 0);
                if (n <= 0)
                    return false;
                pending.append(buf, static_cast<std::size_t>(n));
            }
        };
        auto write_line = [&](std::string const& text) {
            std::size_t sent = 0;
            while (sent < text.size())
            {
                ssize_t n = send(client, text.data() + sent, text.size() - sent,
                                 MSG_NOSIGNAL);
                if (n <= 0)
                    return false;
                sent += static_cast<std::size_t>(n);
            }
            return true;
        };
        serve_session(cfg, read_line, write_line);
        close(client);
    } while (!once);
    close(listener);
}

}  // namespace

//---------------------------------------------------------------------------//
int main(int argc, char** argv)
{
    CLI::App app{"Quadrotor pushing simulator"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", ap_version());

    CommonOptions common;
    add_common(app, common);

    std::string output;
    auto* eval = app.add_subcommand("eval", "Goals completed per friction value");
    eval->add_option("-o,--output", output, "CSV destination (default stdout)");

    auto* rollout = app.add_subcommand("rollout",
                                       "Run one episode and export its trajectory");
    rollout->add_option("-o,--output", output, "CSV destination (default stdout)");

    int bench_steps = 200;
    auto* bench = app.add_subcommand("bench", "Batched stepping throughput");
    bench->add_option("--steps", bench_steps, "Batch steps to time")
        ->check(CLI::PositiveNumber);

    std::string listen;
    bool once = false;
    auto* serve = app.add_subcommand("serve", "JSON-lines protocol for external agents");
    serve->add_option("--listen", listen,
                      "TCP address host:port (default stdin/stdout)");
    serve->add_flag("--once", once, "Exit after the first TCP client");

    bool list_keys = false;
    auto* config = app.add_subcommand("config", "Print the effective settings");
    config->add_flag("--keys", list_keys, "List the recognized setting keys");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (config->parsed() && list_keys)
        {
            CString keys;
            check(ap_config_keys(&keys.p), "listing keys");
            std::fputs(keys.p, stdout);
            return 0;
        }
        ConfigPtr cfg = build_config(common);
        if (eval->parsed())
        {
            CString csv;
            check(ap_eval_run(cfg.get(), &csv.p), "eval");
            write_output(output, csv.p);
        }
        else if (rollout->parsed())
        {
            CString csv;
            ap_episode_summary summary{};
            check(ap_rollout_run(cfg.get(), &csv.p, &summary), "rollout");
            write_output(output, csv.p);
            std::fprintf(stderr,
                         "goals=%d steps=%d total_reward=%.6f collision_steps=%d\n",
                         summary.goals_completed,
                         summary.steps,
                         summary.total_reward,
                         summary.collision_steps);
        }
        else if (bench->parsed())
        {
            ap_bench_result r{};
            check(ap_bench_run(cfg.get(), bench_steps, &r), "bench");
            std::printf("env_steps=%ld seconds=%.6f steps_per_second=%.1f\n",
                        r.env_steps,
                        r.seconds,
                        r.steps_per_second);
        }
        else if (serve->parsed())
        {
            if (listen.empty())
                serve_stdio(cfg.get());
            else
                serve_tcp(cfg.get(), listen, once);
        }
        else if (config->parsed())
        {
            CString yaml;
            check(ap_config_dump(cfg.get(), &yaml.p), "dumping config");
            std::fputs(yaml.p, stdout);
        }
    }
    catch (Failure const& f)
    {
        return f.code;
    }
    return 0;
}
