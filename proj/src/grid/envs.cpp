#include "unienv/grid/envs.hpp"

#include <deque>

#include "unienv/grid/render.hpp"

namespace unienv::grid {

namespace {

int default_max_steps(const GridEnvConfig& c) { return c.max_steps > 0 ? c.max_steps : 4 * c.width * c.height; }

std::string sized_id(const std::string& stem, int size) {
  return stem + "-" + std::to_string(size) + "x" + std::to_string(size);
}

}  // namespace

GridEnv::GridEnv(GridEnvConfig config) : EpisodicEnv(default_max_steps(config)), config_(std::move(config)) {
  config_.max_steps = clock_.max_steps;
  world_.grid = Grid(config_.width, config_.height);
}

bool GridEnv::transition(int action) { return apply_action(world_, static_cast<Action>(action)).entered_lava; }

ObservationRecord GridEnv::observe() const {
  ObservationRecord obs;
  obs.image = encode_view(world_, config_.view_size).encoding;
  obs.direction = world_.agent.dir;
  obs.mission = mission_text_;
  return obs;
}

ObservationSpec GridEnv::observation_spec() const {
  ObservationSpec spec;
  spec.height = config_.view_size;
  spec.width = config_.view_size;
  spec.channels = 3;
  spec.max_value = static_cast<int>(Kind::Lava);
  spec.has_direction = true;
  spec.mission = MissionField::Text;
  return spec;
}

Image GridEnv::render(RenderMode mode) const {
  require_reset();
  if (mode == RenderMode::AgentView) return render_view(encode_view(world_, config_.view_size));
  const auto cells = visible_cells(world_, config_.view_size);
  return render_rgb(world_, kDefaultTilePx, &cells);
}

AgentPoseRecord GridEnv::agent_pose() const {
  return CellPose{world_.agent.pos.x, world_.agent.pos.y, world_.agent.dir};
}

// --- Empty room -------------------------------------------------------------

EmptyRoomEnv::EmptyRoomEnv(int size)
    : GridEnv(GridEnvConfig{sized_id("Grid-Empty", size), size, size, kDefaultViewSize, 0, 0}) {}

void EmptyRoomEnv::generate(Rng& rng) {
  const int n = config_.width;
  world_ = GridWorld{Grid(n, n), {}};
  world_.grid.wall_rect(0, 0, n, n);
  put_object(world_.grid, WorldObject::goal(), n - 2, n - 2);
  place_agent(world_, rng);
  mission_text_ = "get to the green goal square";
}

bool EmptyRoomEnv::success() const {
  const int n = config_.width;
  return world_.agent.pos == Cell{n - 2, n - 2};
}

// --- GoToObj ----------------------------------------------------------------

bool facing_target(const GridWorld& world, Cell target) { return world.agent.front() == target; }

GoToObjEnv::GoToObjEnv(int size, int distractors)
    : GridEnv(GridEnvConfig{sized_id("Grid-GoToObj", size), size, size, kDefaultViewSize, 0, distractors}) {}

namespace {

/// Some cell 4-adjacent to the target is reachable over empty cells.
bool target_approachable(const GridWorld& world, Cell target) {
  const Grid& g = world.grid;
  std::vector<char> seen(static_cast<std::size_t>(g.width()) * g.height(), 0);
  std::deque<Cell> queue{world.agent.pos};
  seen[static_cast<std::size_t>(world.agent.pos.y) * g.width() + world.agent.pos.x] = 1;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (int d = 0; d < 4; ++d) {
      const Cell v = dir_vec(d);
      const Cell n{c.x + v.x, c.y + v.y};
      if (n == target) return true;
      if (!g.in_bounds(n.x, n.y) || g.get(n.x, n.y)) continue;
      auto& s = seen[static_cast<std::size_t>(n.y) * g.width() + n.x];
      if (!s) {
        s = 1;
        queue.push_back(n);
      }
    }
  }
  return false;
}

WorldObject make_object(mission::ObjType type, Color color) {
  switch (type) {
    case mission::ObjType::Key: return WorldObject::key(color);
    case mission::ObjType::Ball: return WorldObject::ball(color);
    case mission::ObjType::Box: return WorldObject::box(color);
  }
  return WorldObject::key(color);
}

}  // namespace

void GoToObjEnv::generate(Rng& rng) {
  const auto& vocab = mission::Vocabulary::standard();
  const int n = config_.width;
  // Objects are solid, so a target boxed in by distractors is possible;
  // such layouts are redrawn from the same stream.
  do {
    world_ = GridWorld{Grid(n, n), {}};
    world_.grid.wall_rect(0, 0, n, n);
    mission_ = mission::sample_mission(vocab, mission::kGoTo, rng);
    target_ = place_randomly(world_, rng, make_object(mission_.obj_type, mission_.color));
    for (int i = 0; i < config_.distractors; ++i) {
      mission::Mission other;
      do {
        other = mission::sample_mission(vocab, mission::kGoTo, rng);
      } while (other.color == mission_.color && other.obj_type == mission_.obj_type);
      place_randomly(world_, rng, make_object(other.obj_type, other.color));
    }
    place_agent(world_, rng);
  } while (!target_approachable(world_, target_));
  mission_text_ = mission_.text;
}

bool GoToObjEnv::success() const { return facing_target(world_, target_); }

// --- FourRooms --------------------------------------------------------------

FourRoomsEnv::FourRoomsEnv() : GridEnv(GridEnvConfig{"Grid-FourRooms", 19, 19, kDefaultViewSize, 100, 0}) {}

void FourRoomsEnv::generate(Rng& rng) {
  const int w = config_.width, h = config_.height;
  world_ = GridWorld{Grid(w, h), {}};
  Grid& g = world_.grid;
  g.wall_rect(0, 0, w, h);
  const int room_w = w / 2, room_h = h / 2;
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      const int x_left = i * room_w, y_top = j * room_h;
      const int x_right = x_left + room_w, y_bottom = y_top + room_h;
      if (i + 1 < 2) {
        g.vert_wall(x_right, y_top, room_h);
        g.set(x_right, rng.uniform_int(y_top + 1, y_bottom), std::nullopt);
      }
      if (j + 1 < 2) {
        g.horz_wall(x_left, y_bottom, room_w);
        g.set(rng.uniform_int(x_left + 1, x_right), y_bottom, std::nullopt);
      }
    }
  }
  goal_ = place_randomly(world_, rng, WorldObject::goal());
  place_agent(world_, rng);
  mission_text_ = "reach the goal";
}

bool FourRoomsEnv::success() const { return world_.agent.pos == goal_; }

// --- UnlockPickup -----------------------------------------------------------

UnlockPickupEnv::UnlockPickupEnv(int room_size)
    : GridEnv(GridEnvConfig{"Grid-UnlockPickup", 2 * room_size - 1, room_size, kDefaultViewSize, 0, 0}),
      room_size_(room_size) {}

void UnlockPickupEnv::generate(Rng& rng) {
  const int w = config_.width, h = config_.height;
  const int wall_x = room_size_ - 1;
  const int inner = room_size_ - 2;
  world_ = GridWorld{Grid(w, h), {}};
  Grid& g = world_.grid;
  g.wall_rect(0, 0, w, h);
  g.vert_wall(wall_x, 0, h);

  const Region left{1, 1, inner, inner};
  const Region right{wall_x + 1, 1, inner, inner};

  const Color box_color = kColors[rng.below(kColors.size())];
  box_ = place_randomly(world_, rng, WorldObject::box(box_color), right);

  door_color_ = kColors[rng.below(kColors.size())];
  door_ = {wall_x, rng.uniform_int(1, h - 1)};
  g.set(door_.x, door_.y, WorldObject::door_with(door_color_, DoorState::Locked));

  const Color ball_color = kColors[rng.below(kColors.size())];
  g.set(door_.x - 1, door_.y, WorldObject::ball(ball_color));

  place_randomly(world_, rng, WorldObject::key(door_color_), left);
  place_agent(world_, rng, left);
  mission_text_ = "pick up the " + std::string(color_name(box_color)) + " box";
}

bool UnlockPickupEnv::success() const {
  const auto& c = world_.agent.carrying;
  return c && c->kind == Kind::Box;
}

}  // namespace unienv::grid
