#include "unienv/world3d/envs.hpp"

#include "unienv/error.hpp"

namespace unienv::world3d {

namespace {

struct RoomStyle {
  Rgb wall, floor, ceiling;
};

constexpr RoomStyle kStyles[4] = {
    {{190, 180, 160}, {95, 90, 80}, {60, 60, 75}},
    {{160, 175, 195}, {80, 85, 100}, {55, 60, 75}},
    {{175, 195, 160}, {85, 100, 80}, {60, 70, 55}},
    {{195, 165, 175}, {100, 80, 90}, {70, 55, 60}},
};

void style_room(FloorPlan& plan, int room) {
  const RoomStyle& s = kStyles[room % 4];
  plan.set_room_colors(room, s.wall, s.floor, s.ceiling);
}

EntityKind to_entity_kind(mission::ObjType t) {
  switch (t) {
    case mission::ObjType::Key: return EntityKind::Key;
    case mission::ObjType::Ball: return EntityKind::Ball;
    case mission::ObjType::Box: return EntityKind::Box;
  }
  return EntityKind::Box;
}

/// Entities may be picked up and dropped, so targets are found by
/// (kind, color), which is unique within a shipped world. A carried target
/// counts as reached.
bool reached(const World& world, EntityKind kind, grid::Color color) {
  const auto& c = world.agent.carrying;
  if (c && c->kind == kind && c->color == color) return true;
  for (const Entity3D& e : world.plan.entities()) {
    if (e.kind == kind && e.color == color) return near(world.agent, e);
  }
  return false;
}

/// Redraws the agent pose while the episode would already be won.
template <typename Done>
void place_start(World& world, Rng& rng, Done done) {
  do {
    place_agent(world, rng);
  } while (done());
}

PlacementOptions spaced() {
  PlacementOptions o;
  o.margin = kEntitySpacing;
  return o;
}

}  // namespace

World3DEnv::World3DEnv(std::string env_id, int max_steps) : EpisodicEnv(max_steps), env_id_(std::move(env_id)) {}

bool World3DEnv::transition(int action) {
  step_kinematics(world_, static_cast<Action>(action));
  return false;
}

ObservationRecord World3DEnv::observe() const {
  ObservationRecord obs;
  obs.image = render_first_person(world_, camera_);
  obs.mission = mission_text_;
  return obs;
}

ObservationSpec World3DEnv::observation_spec() const {
  ObservationSpec spec;
  spec.height = camera_.obs_height;
  spec.width = camera_.obs_width;
  spec.channels = 3;
  spec.max_value = 255;
  spec.has_direction = false;
  spec.mission = MissionField::Text;
  return spec;
}

Image World3DEnv::render(RenderMode mode) const {
  require_reset();
  return mode == RenderMode::AgentView ? render_first_person(world_, camera_) : render_topdown3d(world_);
}

AgentPoseRecord World3DEnv::agent_pose() const { return world_.agent.pose; }

void World3DEnv::set_camera(const Camera& camera) {
  if (camera.obs_width < 1 || camera.obs_height < 1) {
    throw Error(ErrorCode::InvalidDims, "observation dimensions must be at least 1x1");
  }
  camera_ = camera;
}

// --- GoToObj3D --------------------------------------------------------------

GoToObj3DEnv::GoToObj3DEnv(double room_size, int distractors)
    : World3DEnv("World3D-GoToObj", 200), room_size_(room_size), distractors_(distractors) {}

void GoToObj3DEnv::generate(Rng& rng) {
  const auto& vocab = mission::Vocabulary::standard();
  world_ = World{};
  style_room(world_.plan, world_.plan.add_rect_room(0, room_size_, 0, room_size_));
  mission_ = mission::sample_mission(vocab, mission::kGoTo, rng);
  place_entity(world_.plan, rng, Entity3D::make(to_entity_kind(mission_.obj_type), mission_.color), spaced());
  for (int i = 0; i < distractors_; ++i) {
    mission::Mission other;
    do {
      other = mission::sample_mission(vocab, mission::kGoTo, rng);
    } while (other.color == mission_.color && other.obj_type == mission_.obj_type);
    place_entity(world_.plan, rng, Entity3D::make(to_entity_kind(other.obj_type), other.color), spaced());
  }
  place_start(world_, rng, [&] { return success(); });
  mission_text_ = mission_.text;
}

bool GoToObj3DEnv::success() const {
  return reached(world_, to_entity_kind(mission_.obj_type), mission_.color);
}

// --- FourRooms3D ------------------------------------------------------------

FourRooms3DEnv::FourRooms3DEnv(double room_size) : World3DEnv("World3D-FourRooms", 250), room_size_(room_size) {}

void FourRooms3DEnv::generate(Rng& rng) {
  world_ = World{};
  FloorPlan& plan = world_.plan;
  const double s = room_size_;
  // 0 1
  // 2 3
  const int rooms[4] = {plan.add_rect_room(0, s, 0, s), plan.add_rect_room(s, 2 * s, 0, s),
                        plan.add_rect_room(0, s, s, 2 * s), plan.add_rect_room(s, 2 * s, s, 2 * s)};
  for (int r : rooms) style_room(plan, r);
  const double slack = s - kPortalWidth - 1.0;
  auto portal = [&](int a, int b, double base) {
    const double start = base + 0.5 + rng.uniform01() * slack;
    plan.connect_rooms(a, b, start, start + kPortalWidth);
  };
  portal(rooms[0], rooms[1], 0);
  portal(rooms[2], rooms[3], s);
  portal(rooms[0], rooms[2], 0);
  portal(rooms[1], rooms[3], s);
  place_entity(plan, rng, Entity3D::make(EntityKind::Box, grid::Color::Green), spaced());
  place_start(world_, rng, [&] { return success(); });
  mission_text_ = "go to the green box";
}

bool FourRooms3DEnv::success() const { return reached(world_, EntityKind::Box, grid::Color::Green); }

}  // namespace unienv::world3d
