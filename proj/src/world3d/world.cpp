#include "unienv/world3d/world.hpp"

#include <cmath>

namespace unienv::world3d {

const DiscreteActionSpace& action_space() {
  static const DiscreteActionSpace space{
      {"turn left", "turn right", "move forward", "move back", "pickup", "drop", "toggle", "done"}};
  return space;
}

Vec2 Agent::heading() const { return {std::cos(pose.yaw), std::sin(pose.yaw)}; }

double wrap_angle(double a) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0;
  return a;
}

namespace {

void try_translate(World& world, double distance) {
  Agent& agent = world.agent;
  const Vec2 next = agent.position() + distance * agent.heading();
  if (disc_collides(world.plan, next, agent.radius)) return;
  agent.pose.x = next.x();
  agent.pose.z = next.y();
}

void pickup(World& world) {
  Agent& agent = world.agent;
  if (agent.carrying) return;
  auto& ents = world.plan.entities();
  const Vec2 pos = agent.position();
  const Vec2 heading = agent.heading();
  int best = -1;
  double best_dist = 0;
  for (int i = 0; i < static_cast<int>(ents.size()); ++i) {
    const Vec2 to = ents[i].position - pos;
    const double dist = to.norm();
    if (dist > kReachFactor * (agent.radius + ents[i].radius)) continue;
    if (dist > 0 && heading.dot(to) / dist < std::cos(kPickupHalfAngle)) continue;
    if (best < 0 || dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  if (best < 0) return;
  agent.carrying = ents[best];
  ents.erase(ents.begin() + best);
}

void drop(World& world) {
  Agent& agent = world.agent;
  if (!agent.carrying) return;
  Entity3D e = *agent.carrying;
  const Vec2 spot = agent.position() + (agent.radius + e.radius + 0.05) * agent.heading();
  if (world.plan.room_at(spot) < 0 || disc_collides(world.plan, spot, e.radius)) return;
  e.position = spot;
  world.plan.entities().push_back(e);
  agent.carrying.reset();
}

}  // namespace

void step_kinematics(World& world, Action action) {
  Agent& agent = world.agent;
  switch (action) {
    case Action::TurnLeft: agent.pose.yaw = wrap_angle(agent.pose.yaw - kTurnStep); break;
    case Action::TurnRight: agent.pose.yaw = wrap_angle(agent.pose.yaw + kTurnStep); break;
    case Action::MoveForward: try_translate(world, kMoveStep); break;
    case Action::MoveBack: try_translate(world, -kMoveStep); break;
    case Action::Pickup: pickup(world); break;
    case Action::Drop: drop(world); break;
    case Action::Toggle:
    case Action::Done: break;
  }
}

void place_agent(World& world, Rng& rng, std::optional<int> room) {
  PlacementOptions opts;
  opts.room = room;
  const Vec2 p = sample_free_position(world.plan, rng, world.agent.radius, opts);
  world.agent.pose = PlanePose{p.x(), p.y(), rng.uniform(0.0, 2.0 * std::numbers::pi)};
}

bool near(const Agent& agent, const Entity3D& entity) {
  return (agent.position() - entity.position).norm() <= kReachFactor * (agent.radius + entity.radius);
}

}  // namespace unienv::world3d
