#include "unienv/metrics/replay.hpp"

#include <sstream>

#include "unienv/registry.hpp"

namespace unienv::metrics {

namespace {

std::string describe(const AgentPoseRecord& pose) {
  std::ostringstream s;
  s.precision(17);
  if (const auto* c = std::get_if<CellPose>(&pose)) {
    s << "(" << c->x << ", " << c->y << ", dir " << c->dir << ")";
  } else {
    const auto& p = std::get<PlanePose>(pose);
    s << "(" << p.x << ", " << p.z << ", yaw " << p.yaw << ")";
  }
  return s.str();
}

WorldSnapshot snapshot(const Env& env) {
  if (const auto* g = env.grid_world()) return *g;
  return *env.world3d();
}

}  // namespace

ReplayReport replay(const EpisodeLog& log) {
  ReplayReport report;
  auto fail = [&](const std::string& msg) {
    report.ok = false;
    report.mismatch = msg;
    return report;
  };
  EnvPtr env = make_env(log.header.env_id);
  for (const EpisodeSegment& seg : log.episodes) {
    const std::string where = "episode " + std::to_string(seg.index);
    env->reset(seg.seed);
    report.start_worlds.push_back(snapshot(*env));
    if (env->agent_pose() != seg.start_pose) {
      return fail(where + ": start pose " + describe(seg.start_pose) + " != " + describe(env->agent_pose()));
    }
    bool over = false;
    for (std::size_t i = 0; i < seg.steps.size(); ++i) {
      const StepRecord& r = seg.steps[i];
      const std::string at = where + " record " + std::to_string(i);
      if (over) return fail(at + ": record after episode end");
      if (!r.action) {
        if (r.reward != 0.0 || r.terminated || r.truncated) return fail(at + ": no-op key with outcome");
        if (env->agent_pose() != r.pose) return fail(at + ": no-op key moved the agent");
        continue;
      }
      if (*r.action < 0 || *r.action >= env->action_space().n()) return fail(at + ": action out of range");
      const StepOutcome out = env->step(*r.action);
      if (out.info.step_count != r.t) return fail(at + ": t " + std::to_string(r.t));
      if (out.reward != r.reward) return fail(at + ": reward differs");
      if (out.terminated != r.terminated) return fail(at + ": terminated differs");
      if (out.truncated != r.truncated) return fail(at + ": truncated differs");
      if (env->agent_pose() != r.pose) {
        return fail(at + ": pose " + describe(r.pose) + " != " + describe(env->agent_pose()));
      }
      over = out.terminated || out.truncated;
    }
  }
  return report;
}

bool replay_verify(const EpisodeLog& log) { return replay(log).ok; }

}  // namespace unienv::metrics
