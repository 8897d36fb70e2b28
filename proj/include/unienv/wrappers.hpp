#pragma once

#include "unienv/env.hpp"
#include "unienv/world3d/world.hpp"

namespace unienv::wrappers {

/// Forwards everything to the wrapped env; layers override what they change.
class Wrapper : public Env {
 public:
  explicit Wrapper(EnvPtr inner) : inner_(std::move(inner)) {}

  ResetResult reset(std::optional<std::uint64_t> seed = std::nullopt) override {
    return inner_->reset(seed);
  }
  StepOutcome step(int action) override { return inner_->step(action); }
  Image render(RenderMode mode) const override { return inner_->render(mode); }
  const DiscreteActionSpace& action_space() const override { return inner_->action_space(); }
  ObservationSpec observation_spec() const override { return inner_->observation_spec(); }
  const std::string& id() const override { return inner_->id(); }
  AgentPoseRecord agent_pose() const override { return inner_->agent_pose(); }
  int max_steps() const override { return inner_->max_steps(); }
  const grid::GridWorld* grid_world() const override { return inner_->grid_world(); }
  const world3d::World* world3d() const override { return inner_->world3d(); }
  void set_camera(const world3d::Camera& camera) override { inner_->set_camera(camera); }

  const Env& inner() const { return *inner_; }

 protected:
  EnvPtr inner_;
};

/// Observation reduced to the image array.
EnvPtr image_only(EnvPtr env);

/// Mission text replaced by its 18-way one-hot vector.
EnvPtr one_hot_mission(EnvPtr env);

/// With probability epsilon the submitted action is replaced by a uniform
/// random one. The perturbation stream is keyed by the episode seed under its
/// own label, so generated worlds do not depend on epsilon.
EnvPtr stochastic_actions(EnvPtr env, double epsilon);

/// Grid only: the image becomes the full height x width x 3 encoding with
/// the agent cell marked. Throws NotAGridEnv.
EnvPtr fully_observable(EnvPtr env);

/// 3D only: re-renders at the requested size. Throws InvalidDims or
/// NotAWorld3DEnv.
EnvPtr resize_observation(EnvPtr env, int width, int height);

/// Restricts the action space to turn left / turn right / go forward
/// (indices 0..2 of both the grid and 3D tables).
EnvPtr navigation_actions(EnvPtr env);

}  // namespace unienv::wrappers
