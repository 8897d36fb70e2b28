#pragma once

#include <string>
#include <variant>
#include <vector>

#include "unienv/grid/grid.hpp"
#include "unienv/metrics/episode_log.hpp"
#include "unienv/world3d/world.hpp"

namespace unienv::metrics {

using WorldSnapshot = std::variant<grid::GridWorld, world3d::World>;

struct ReplayReport {
  bool ok = true;
  std::string mismatch;  // first divergence, empty when ok
  std::vector<WorldSnapshot> start_worlds;  // one per episode segment
};

/// Rebuilds each segment from (env_id, seed), applies the logged actions and
/// compares every reward, flag and pose exactly. Throws UnknownEnvId.
ReplayReport replay(const EpisodeLog& log);

bool replay_verify(const EpisodeLog& log);

}  // namespace unienv::metrics
