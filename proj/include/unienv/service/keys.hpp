#pragma once

#include <map>
#include <optional>

#include "unienv/rng.hpp"

namespace unienv::service {

/// digit (1..9) -> action index. Never sent to the client.
struct KeyMapping {
  std::map<int, int> entries;
  int n_actions = 0;

  std::optional<int> action_for(int digit) const {
    auto it = entries.find(digit);
    if (it == entries.end()) return std::nullopt;
    return it->second;
  }
};

/// Uniform draw of n distinct digits from 1..9 assigned in action order.
/// Throws TooManyActions.
KeyMapping assign_keys(Rng& rng, int n_actions);

}  // namespace unienv::service
