#include "unienv/registry.hpp"

#include <algorithm>
#include <functional>

#include "unienv/error.hpp"
#include "unienv/grid/envs.hpp"
#include "unienv/world3d/envs.hpp"

namespace unienv {

namespace {

struct Entry {
  std::string id;
  std::function<EnvPtr()> make;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {"Grid-Empty-8x8", [] { return std::make_unique<grid::EmptyRoomEnv>(8); }},
      {"Grid-GoToObj-8x8", [] { return std::make_unique<grid::GoToObjEnv>(8); }},
      {"Grid-FourRooms", [] { return std::make_unique<grid::FourRoomsEnv>(); }},
      {"Grid-UnlockPickup", [] { return std::make_unique<grid::UnlockPickupEnv>(); }},
      {"World3D-GoToObj", [] { return std::make_unique<world3d::GoToObj3DEnv>(); }},
      {"World3D-FourRooms", [] { return std::make_unique<world3d::FourRooms3DEnv>(); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& registered_env_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& e : entries()) out.push_back(e.id);
    return out;
  }();
  return ids;
}

bool is_registered(const std::string& env_id) {
  const auto& ids = registered_env_ids();
  return std::find(ids.begin(), ids.end(), env_id) != ids.end();
}

EnvPtr make_env(const std::string& env_id) {
  for (const auto& e : entries()) {
    if (e.id == env_id) return e.make();
  }
  throw Error(ErrorCode::UnknownEnvId, "no env registered as \"" + env_id + "\"");
}

std::vector<EnvSummary> list_envs() {
  std::vector<EnvSummary> out;
  for (const auto& e : entries()) {
    const EnvPtr env = e.make();
    out.push_back({e.id, env->grid_world() != nullptr, env->action_space(), env->observation_spec(),
                   env->max_steps()});
  }
  return out;
}

}  // namespace unienv
