#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "unienv/image.hpp"
#include "unienv/rng.hpp"

namespace unienv {

namespace grid {
struct GridWorld;
}
namespace world3d {
struct World;
struct Camera;
}  // namespace world3d

struct DiscreteActionSpace {
  std::vector<std::string> names;

  int n() const { return static_cast<int>(names.size()); }
  friend bool operator==(const DiscreteActionSpace&, const DiscreteActionSpace&) = default;
};

enum class MissionField { None, Text, OneHot };

/// Shape and value range of every observation an env emits.
struct ObservationSpec {
  int height = 0;
  int width = 0;
  int channels = 3;
  int max_value = 255;
  bool has_direction = false;
  MissionField mission = MissionField::Text;
  int one_hot_size = 0;

  friend bool operator==(const ObservationSpec&, const ObservationSpec&) = default;
};

struct ObservationRecord {
  Image image;
  std::optional<int> direction;
  std::optional<std::string> mission;
  std::optional<std::vector<std::uint8_t>> mission_one_hot;

  friend bool operator==(const ObservationRecord&, const ObservationRecord&) = default;
};

bool conforms(const ObservationRecord& obs, const ObservationSpec& spec);

struct StepInfo {
  std::uint64_t seed = 0;
  int step_count = 0;
  bool success = false;
  /// Action actually applied to the core env, when a wrapper substituted it.
  std::optional<int> executed_action;

  friend bool operator==(const StepInfo&, const StepInfo&) = default;
};

struct ResetResult {
  ObservationRecord observation;
  StepInfo info;
};

struct StepOutcome {
  ObservationRecord observation;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
  StepInfo info;

  friend bool operator==(const StepOutcome&, const StepOutcome&) = default;
};

struct EpisodeClock {
  int step_count = 0;
  int max_steps = 1;

  bool exhausted() const { return step_count >= max_steps; }
};

/// Grid agent pose: tile cell plus heading (0=east, 1=south, 2=west, 3=north).
struct CellPose {
  int x = 0;
  int y = 0;
  int dir = 0;
  friend bool operator==(const CellPose&, const CellPose&) = default;
};

/// Continuous floor-plane pose.
struct PlanePose {
  double x = 0.0;
  double z = 0.0;
  double yaw = 0.0;
  friend bool operator==(const PlanePose&, const PlanePose&) = default;
};

using AgentPoseRecord = std::variant<CellPose, PlanePose>;

enum class RenderMode { TopDown, AgentView };

/// reset/step/render contract shared by every 2D and 3D environment and by
/// every wrapper.
class Env {
 public:
  virtual ~Env() = default;

  virtual ResetResult reset(std::optional<std::uint64_t> seed = std::nullopt) = 0;
  virtual StepOutcome step(int action) = 0;
  virtual Image render(RenderMode mode) const = 0;

  virtual const DiscreteActionSpace& action_space() const = 0;
  virtual ObservationSpec observation_spec() const = 0;
  virtual const std::string& id() const = 0;

  virtual AgentPoseRecord agent_pose() const = 0;
  virtual int max_steps() const = 0;

  /// Direct access to the underlying world; null when the env is not of
  /// that kind.
  virtual const grid::GridWorld* grid_world() const { return nullptr; }
  virtual const world3d::World* world3d() const { return nullptr; }

  /// Re-parameterizes the first-person camera. Only 3D envs accept this.
  virtual void set_camera(const world3d::Camera& camera);
};

using EnvPtr = std::unique_ptr<Env>;

/// Shared episode lifecycle: seeding, step counting, truncation, the
/// sparse reward rule and the post-episode guard. Concrete envs supply
/// generation, transition, success and observation.
class EpisodicEnv : public Env {
 public:
  ResetResult reset(std::optional<std::uint64_t> seed = std::nullopt) final;
  StepOutcome step(int action) final;

  int max_steps() const override { return clock_.max_steps; }
  const EpisodeClock& clock() const { return clock_; }
  bool episode_over() const { return ended_; }

 protected:
  explicit EpisodicEnv(int max_steps) { clock_.max_steps = max_steps; }

  virtual void generate(Rng& rng) = 0;
  /// Applies an in-range action. Returns true when the action ends the
  /// episode in failure (e.g. stepping onto lava).
  virtual bool transition(int action) = 0;
  virtual bool success() const = 0;
  virtual ObservationRecord observe() const = 0;

  /// Reward paid on success. Defaults to 1 - 0.9 * step_count / max_steps.
  virtual double reward() const;

  void require_reset() const;

  EpisodeClock clock_;

 private:
  std::uint64_t seed_ = 0;
  bool has_reset_ = false;
  bool ended_ = false;
};

double compute_reward(const EpisodeClock& clock);

}  // namespace unienv
