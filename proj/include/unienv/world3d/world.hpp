#pragma once

#include <numbers>
#include <optional>

#include "unienv/env.hpp"
#include "unienv/world3d/floorplan.hpp"

namespace unienv::world3d {

inline constexpr double kMoveStep = 0.15;
inline constexpr double kTurnStep = std::numbers::pi / 12.0;  // 15 degrees
inline constexpr double kReachFactor = 1.5;
inline constexpr double kPickupHalfAngle = std::numbers::pi / 4.0;

enum class Action : int {
  TurnLeft = 0,
  TurnRight,
  MoveForward,
  MoveBack,
  Pickup,
  Drop,
  Toggle,
  Done
};

inline constexpr int kNumActions = 8;

const DiscreteActionSpace& action_space();

struct Agent {
  PlanePose pose;
  double radius = kAgentRadius;
  double eye_height = kEyeHeight;
  std::optional<Entity3D> carrying;

  Vec2 position() const { return {pose.x, pose.z}; }
  Vec2 heading() const;
};

struct World {
  FloorPlan plan;
  Agent agent;
};

struct Camera {
  int obs_width = 80;
  int obs_height = 60;
  double horizontal_fov_deg = 60.0;
};

/// Wraps into [0, 2pi).
double wrap_angle(double a);

/// Applies one action. Translation that would overlap a wall or a solid
/// entity leaves the pose unchanged.
void step_kinematics(World& world, Action action);

/// Uniform position anywhere (or in one room) plus uniform yaw.
void place_agent(World& world, Rng& rng, std::optional<int> room = std::nullopt);

/// Within kReachFactor times the summed radii.
bool near(const Agent& agent, const Entity3D& entity);

}  // namespace unienv::world3d
