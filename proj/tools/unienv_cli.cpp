#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "unienv/error.hpp"
#include "unienv/metrics/episode_log.hpp"
#include "unienv/metrics/plot.hpp"
#include "unienv/registry.hpp"
#include "unienv/service/server.hpp"

namespace {

using namespace unienv;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_random(const std::string& env_id, int episodes, std::uint64_t seed, const std::string& log_path) {
  EnvPtr env = make_env(env_id);
  Rng policy(seed, "policy");
  std::optional<metrics::LogWriter> log;
  if (!log_path.empty()) {
    metrics::LogHeader h;
    h.env_id = env_id;
    h.seed = seed;
    h.action_names = env->action_space().names;
    h.started_at = metrics::utc_timestamp();
    log.emplace(log_path, h);
  }
  const int n = env->action_space().n();
  for (int ep = 0; ep < episodes; ++ep) {
    const std::uint64_t ep_seed = seed + static_cast<std::uint64_t>(ep);
    env->reset(ep_seed);
    if (log) log->begin_episode(ep_seed, env->agent_pose());
    StepOutcome out;
    do {
      const int a = static_cast<int>(policy.below(static_cast<std::uint64_t>(n)));
      out = env->step(a);
      if (log) log->record_step(out, env->agent_pose(), out.info.executed_action.value_or(a));
    } while (!out.terminated && !out.truncated);
    std::printf("episode %d seed %llu reward %.6f steps %d %s\n", ep, static_cast<unsigned long long>(ep_seed),
                out.reward, out.info.step_count, out.terminated ? "terminated" : "truncated");
  }
  return kExitOk;
}

int benchmark(const std::string& env_id, int steps, std::uint64_t seed) {
  EnvPtr env = make_env(env_id);
  Rng policy(seed, "policy");
  const int n = env->action_space().n();
  env->reset(seed);
  std::uint64_t episode_seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < steps; ++i) {
    const StepOutcome out = env->step(static_cast<int>(policy.below(static_cast<std::uint64_t>(n))));
    if (out.terminated || out.truncated) env->reset(++episode_seed);
  }
  const double step_secs = seconds_since(t0);
  const int frames = std::max(1, steps / 10);
  const auto t1 = std::chrono::steady_clock::now();
  for (int i = 0; i < frames; ++i) (void)env->render(RenderMode::AgentView);
  const double frame_secs = seconds_since(t1);
  std::printf("{\"env_id\":\"%s\",\"steps\":%d,\"steps_per_sec\":%.1f,\"frames\":%d,\"frames_per_sec\":%.1f}\n",
              env_id.c_str(), steps, steps / step_secs, frames, frames / frame_secs);
  return kExitOk;
}

int replay(const std::string& log_path, const std::string& out_path) {
  const metrics::EpisodeLog log = metrics::read_log(log_path);
  const metrics::ReplayReport report = metrics::replay(log);
  if (!report.ok) {
    std::fprintf(stderr, "replay mismatch: %s\n", report.mismatch.c_str());
    return kExitVerify;
  }
  std::printf("verified %zu episode segments (%zu completed)\n", log.episodes.size(), log.completed_episodes());
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << metrics::render_trajectory_svg(log, report.start_worlds);
    if (!out) throw Error(ErrorCode::MalformedInput, "cannot write " + out_path);
    std::printf("wrote %s\n", out_path.c_str());
  }
  return kExitOk;
}

int serve(std::optional<int> port, const std::string& log_dir) {
  service::ServiceConfig cfg = service::config_from_environment();
  if (port) cfg.port = static_cast<unsigned short>(*port);
  if (!log_dir.empty()) cfg.log_dir = log_dir;
  service::SessionManager manager(cfg);
  service::Server server(manager, cfg.port);
  std::printf("listening on 127.0.0.1:%u (logs in %s)\n", server.port(), cfg.log_dir.string().c_str());
  std::fflush(stdout);
  server.run_until_signal();
  std::printf("stopped\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid and first-person RL environment engine"};
  app.require_subcommand(1);

  std::string env_id, log_path, out_path, log_dir;
  int episodes = 1, steps = 100000;
  std::uint64_t seed = 0;
  std::optional<int> port;

  auto* run_cmd = app.add_subcommand("run-random", "Run a uniform random policy");
  run_cmd->add_option("--env", env_id, "Environment id")->required();
  run_cmd->add_option("--episodes", episodes, "Episode count")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", seed, "Seed of the first episode");
  run_cmd->add_option("--log", log_path, "Write an episode log here");

  auto* bench_cmd = app.add_subcommand("benchmark", "Measure step and render throughput");
  bench_cmd->add_option("--env", env_id, "Environment id")->required();
  bench_cmd->add_option("--steps", steps, "Steps to time")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", seed, "Seed");

  auto* replay_cmd = app.add_subcommand("replay", "Verify a log and plot its trajectories");
  replay_cmd->add_option("--log", log_path, "Episode log")->required();
  replay_cmd->add_option("--out", out_path, "SVG output path");

  auto* serve_cmd = app.add_subcommand("serve", "Run the session service");
  serve_cmd->add_option("--port", port, "TCP port (env PORT)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--log-dir", log_dir, "Log directory (env LOG_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return run_random(env_id, episodes, seed, log_path);
    if (bench_cmd->parsed()) return benchmark(env_id, steps, seed);
    if (replay_cmd->parsed()) return replay(log_path, out_path);
    if (serve_cmd->parsed()) return serve(port, log_dir);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    if (e.code() == ErrorCode::UnknownEnvId) return kExitUsage;
    if (e.code() == ErrorCode::ReplayMismatch) return kExitVerify;
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
