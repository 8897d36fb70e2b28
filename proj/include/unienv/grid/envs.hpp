#pragma once

#include <functional>
#include <string>

#include "unienv/env.hpp"
#include "unienv/grid/encoding.hpp"
#include "unienv/mission.hpp"

namespace unienv::grid {

struct GridEnvConfig {
  std::string env_id;
  int width = 8;
  int height = 8;
  int view_size = kDefaultViewSize;
  int max_steps = 0;  // 0 selects 4 * width * height
  int distractors = 2;
};

/// Common machinery for tile-world envs. Subclasses fill `world_` (and
/// optionally `mission_`) in generate() and define success().
class GridEnv : public EpisodicEnv {
 public:
  Image render(RenderMode mode) const override;
  const DiscreteActionSpace& action_space() const override { return grid::action_space(); }
  ObservationSpec observation_spec() const override;
  const std::string& id() const override { return config_.env_id; }
  AgentPoseRecord agent_pose() const override;
  const GridWorld* grid_world() const override { return &world_; }

  const GridEnvConfig& config() const { return config_; }
  const std::string& mission_text() const { return mission_text_; }

 protected:
  explicit GridEnv(GridEnvConfig config);

  bool transition(int action) override;
  ObservationRecord observe() const override;

  GridEnvConfig config_;
  GridWorld world_;
  std::string mission_text_;
};

/// Border walls, goal at (size-2, size-2), random agent.
class EmptyRoomEnv : public GridEnv {
 public:
  explicit EmptyRoomEnv(int size = 8);

 protected:
  void generate(Rng& rng) override;
  bool success() const override;
};

/// Go to a target object among distractors, named by the mission.
class GoToObjEnv : public GridEnv {
 public:
  explicit GoToObjEnv(int size = 8, int distractors = 2);

  const mission::Mission& mission() const { return mission_; }
  Cell target() const { return target_; }

 protected:
  void generate(Rng& rng) override;
  bool success() const override;

 private:
  mission::Mission mission_;
  Cell target_;
};

/// 19x19, four rooms joined by one gap per internal wall segment.
class FourRoomsEnv : public GridEnv {
 public:
  FourRoomsEnv();

  Cell goal() const { return goal_; }

 protected:
  void generate(Rng& rng) override;
  bool success() const override;

 private:
  Cell goal_;
};

/// Two rooms, locked door blocked by a ball, matching key on the agent's
/// side and a box to fetch on the other.
class UnlockPickupEnv : public GridEnv {
 public:
  explicit UnlockPickupEnv(int room_size = 6);

  Cell door() const { return door_; }
  Cell box() const { return box_; }
  Color door_color() const { return door_color_; }

 protected:
  void generate(Rng& rng) override;
  bool success() const override;

 private:
  int room_size_;
  Cell door_;
  Cell box_;
  Color door_color_ = Color::Red;
};

/// Success predicate for GoToObj: front cell is the target.
bool facing_target(const GridWorld& world, Cell target);

}  // namespace unienv::grid
