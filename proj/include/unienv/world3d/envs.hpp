#pragma once

#include <string>

#include "unienv/env.hpp"
#include "unienv/mission.hpp"
#include "unienv/world3d/render.hpp"

namespace unienv::world3d {

class World3DEnv : public EpisodicEnv {
 public:
  Image render(RenderMode mode) const override;
  const DiscreteActionSpace& action_space() const override { return world3d::action_space(); }
  ObservationSpec observation_spec() const override;
  const std::string& id() const override { return env_id_; }
  AgentPoseRecord agent_pose() const override;
  const World* world3d() const override { return &world_; }
  void set_camera(const Camera& camera) override;

  const Camera& camera() const { return camera_; }
  const std::string& mission_text() const { return mission_text_; }

 protected:
  World3DEnv(std::string env_id, int max_steps);

  bool transition(int action) override;
  ObservationRecord observe() const override;

  std::string env_id_;
  World world_;
  Camera camera_;
  std::string mission_text_;
};

/// Single room with a target entity and distractors; the mission names the
/// target.
class GoToObj3DEnv : public World3DEnv {
 public:
  explicit GoToObj3DEnv(double room_size = 6.0, int distractors = 2);

  const mission::Mission& mission() const { return mission_; }

 protected:
  void generate(Rng& rng) override;
  bool success() const override;

 private:
  double room_size_;
  int distractors_;
  mission::Mission mission_;
};

/// 2x2 rooms joined by four portals; reach the green box.
class FourRooms3DEnv : public World3DEnv {
 public:
  explicit FourRooms3DEnv(double room_size = 4.0);


 protected:
  void generate(Rng& rng) override;
  bool success() const override;

 private:
  double room_size_;
};

/// Minimum free distance kept between non-agent entities and any wall or
/// other entity: an agent disc always fits between obstacles.
inline constexpr double kEntitySpacing = 2.0 * kAgentRadius + 0.05;

inline constexpr double kPortalWidth = 1.5;

}  // namespace unienv::world3d
