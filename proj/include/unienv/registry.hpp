#pragma once

#include <string>
#include <vector>

#include "unienv/env.hpp"

namespace unienv {

struct EnvSummary {
  std::string env_id;
  bool grid = false;
  DiscreteActionSpace actions;
  ObservationSpec observation;
  int max_steps = 0;
};

/// Stable, sorted-by-registration list of env ids.
const std::vector<std::string>& registered_env_ids();

bool is_registered(const std::string& env_id);

/// Throws UnknownEnvId.
EnvPtr make_env(const std::string& env_id);

std::vector<EnvSummary> list_envs();

}  // namespace unienv
