#include "oracles.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "unienv/mission.hpp"

namespace oracle {

using namespace unienv;
using grid::Action;
using grid::AgentState;
using grid::Color;
using grid::DoorState;
using grid::Grid;
using grid::Kind;
using grid::WorldObject;

// --- transition table ----------------------------------------------------------

namespace {

using Occupant = std::optional<WorldObject>;

struct FrontCase {
  std::string name;
  bool out_of_bounds = false;
  Occupant obj;
};

std::vector<FrontCase> front_cases() {
  std::vector<FrontCase> out{{"oob", true, std::nullopt},
                             {"empty", false, std::nullopt},
                             {"wall", false, WorldObject::wall()},
                             {"floor", false, WorldObject::floor()},
                             {"goal", false, WorldObject::goal()},
                             {"lava", false, WorldObject::lava()}};
  for (Color c : {Color::Red, Color::Blue}) {
    const std::string cn(grid::color_name(c));
    out.push_back({"door-open-" + cn, false, WorldObject::door_with(c, DoorState::Open)});
    out.push_back({"door-closed-" + cn, false, WorldObject::door_with(c, DoorState::Closed)});
    out.push_back({"door-locked-" + cn, false, WorldObject::door_with(c, DoorState::Locked)});
    out.push_back({"key-" + cn, false, WorldObject::key(c)});
    out.push_back({"ball-" + cn, false, WorldObject::ball(c)});
    out.push_back({"box-" + cn, false, WorldObject::box(c)});
  }
  out.push_back({"box-red-holding-blue-key", false, WorldObject::box(Color::Red, WorldObject::key(Color::Blue))});
  out.push_back({"box-blue-holding-red-ball", false, WorldObject::box(Color::Blue, WorldObject::ball(Color::Red))});
  return out;
}

std::vector<std::pair<std::string, Occupant>> carried_cases() {
  std::vector<std::pair<std::string, Occupant>> out{{"nothing", std::nullopt}};
  for (Color c : {Color::Red, Color::Blue}) {
    const std::string cn(grid::color_name(c));
    out.emplace_back("key-" + cn, WorldObject::key(c));
    out.emplace_back("ball-" + cn, WorldObject::ball(c));
    out.emplace_back("box-" + cn, WorldObject::box(c));
  }
  return out;
}

bool is(const Occupant& o, Kind k) { return o && o->kind == k; }
bool door_in(const Occupant& o, DoorState s) { return is(o, Kind::Door) && o->door == s; }

}  // namespace

std::vector<TransitionCase> transition_table() {
  std::vector<TransitionCase> cases;
  for (const FrontCase& front : front_cases()) {
    for (const auto& [carried_name, carried] : carried_cases()) {
      for (int dir = 0; dir < 4; ++dir) {
        for (int a = 0; a < grid::kNumActions; ++a) {
          TransitionCase tc;
          tc.action = static_cast<Action>(a);
          tc.label = front.name + " / carrying " + carried_name + " / dir " + std::to_string(dir) + " / " +
                     grid::action_space().names[a];
          GridWorld w;
          if (front.out_of_bounds) {
            w.grid = Grid(1, 1);
            w.agent.pos = {0, 0};
          } else {
            w.grid = Grid(3, 3);
            w.agent.pos = {1, 1};
          }
          w.agent.dir = dir;
          w.agent.carrying = carried;
          const Cell f = w.agent.front();
          if (!front.out_of_bounds) w.grid.set(f.x, f.y, front.obj);
          tc.before = w;

          GridWorld e = w;
          const Occupant& fo = front.obj;
          const bool inside = !front.out_of_bounds;
          switch (tc.action) {
            case Action::TurnLeft: e.agent.dir = (dir + 3) % 4; break;
            case Action::TurnRight: e.agent.dir = (dir + 1) % 4; break;
            case Action::Forward: {
              const bool walkable = !fo || is(fo, Kind::Floor) || is(fo, Kind::Goal) || is(fo, Kind::Lava) ||
                                    door_in(fo, DoorState::Open);
              if (inside && walkable) {
                e.agent.pos = f;
                tc.expect_lava = is(fo, Kind::Lava);
              }
              break;
            }
            case Action::Pickup:
              if (inside && !carried && (is(fo, Kind::Key) || is(fo, Kind::Ball) || is(fo, Kind::Box))) {
                e.agent.carrying = fo;
                e.grid.set(f.x, f.y, std::nullopt);
              }
              break;
            case Action::Drop:
              if (inside && carried && !fo) {
                e.grid.set(f.x, f.y, carried);
                e.agent.carrying.reset();
              }
              break;
            case Action::Toggle:
              if (!inside) break;
              if (door_in(fo, DoorState::Open)) {
                e.grid.set(f.x, f.y, WorldObject::door_with(fo->color, DoorState::Closed));
              } else if (door_in(fo, DoorState::Closed)) {
                e.grid.set(f.x, f.y, WorldObject::door_with(fo->color, DoorState::Open));
              } else if (door_in(fo, DoorState::Locked)) {
                if (is(carried, Kind::Key) && carried->color == fo->color) {
                  e.grid.set(f.x, f.y, WorldObject::door_with(fo->color, DoorState::Open));
                }
              } else if (is(fo, Kind::Box)) {
                e.grid.set(f.x, f.y, fo->contents ? Occupant(*fo->contents) : std::nullopt);
              }
              break;
            case Action::Done: break;
          }
          tc.expected = e;
          cases.push_back(std::move(tc));
        }
      }
    }
  }
  return cases;
}

// --- line of sight -----------------------------------------------------------------

namespace {

/// t = num/den with den > 0.
struct Frac {
  long long num, den;
};
bool less(Frac a, Frac b) { return a.num * b.den < b.num * a.den; }

}  // namespace

bool segment_touches_cell(Cell from, Cell to, Cell cell) {
  // Doubled coordinates: centers are odd, cell edges even.
  const long long p[2] = {2LL * from.x + 1, 2LL * from.y + 1};
  const long long d[2] = {2LL * (to.x - from.x), 2LL * (to.y - from.y)};
  const long long lo[2] = {2LL * cell.x, 2LL * cell.y};
  const long long hi[2] = {2LL * cell.x + 2, 2LL * cell.y + 2};
  Frac t0{0, 1}, t1{1, 1};
  for (int k = 0; k < 2; ++k) {
    if (d[k] == 0) {
      if (p[k] < lo[k] || p[k] > hi[k]) return false;
      continue;
    }
    Frac a{lo[k] - p[k], d[k]}, b{hi[k] - p[k], d[k]};
    if (d[k] < 0) {
      a = {-a.num, -a.den};
      b = {-b.num, -b.den};
      std::swap(a, b);
    }
    if (less(t0, a)) t0 = a;
    if (less(b, t1)) t1 = b;
  }
  return !less(t1, t0);
}

grid::ViewMask brute_force_mask(const Grid& g, const AgentState& agent, int view_size) {
  grid::ViewMask m{view_size, std::vector<bool>(static_cast<std::size_t>(view_size) * view_size, false)};
  const Cell fv = grid::dir_vec(agent.dir);
  const Cell rv{-fv.y, fv.x};
  for (int row = 0; row < view_size; ++row) {
    for (int col = 0; col < view_size; ++col) {
      const int fwd = view_size - 1 - row;
      const int lat = col - view_size / 2;
      const Cell t{agent.pos.x + fv.x * fwd + rv.x * lat, agent.pos.y + fv.y * fwd + rv.y * lat};
      bool vis = g.in_bounds(t.x, t.y);
      if (vis && !(t == agent.pos)) {
        for (int y = std::min(t.y, agent.pos.y); y <= std::max(t.y, agent.pos.y) && vis; ++y) {
          for (int x = std::min(t.x, agent.pos.x); x <= std::max(t.x, agent.pos.x); ++x) {
            const Cell c{x, y};
            if (c == t || c == agent.pos) continue;
            const auto& o = g.get(x, y);
            if (o && o->opaque() && segment_touches_cell(agent.pos, t, c)) {
              vis = false;
              break;
            }
          }
        }
      }
      if (fwd == 0 && lat == 0) vis = true;
      m.visible[static_cast<std::size_t>(row) * view_size + col] = vis;
    }
  }
  return m;
}

// --- grid planners ---------------------------------------------------------------

namespace {

struct Node {
  AgentState s;
  int parent;
  int action;
};

bool enterable(const Grid& g, Cell c) {
  if (!g.in_bounds(c.x, c.y)) return false;
  const auto& o = g.get(c.x, c.y);
  return !o || (o->can_overlap() && o->kind != Kind::Lava);
}

/// Breadth-first expansion over (cell, heading); stops at the first node
/// satisfying `goal`.
std::optional<std::vector<int>> search(const Grid& g, const AgentState& start,
                                       const std::function<bool(const AgentState&)>& goal) {
  std::vector<Node> nodes{{start, -1, -1}};
  std::vector<char> seen(static_cast<std::size_t>(g.width()) * g.height() * 4, 0);
  auto key = [&](const AgentState& s) { return (static_cast<std::size_t>(s.pos.y) * g.width() + s.pos.x) * 4 + s.dir; };
  seen[key(start)] = 1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const AgentState s = nodes[i].s;
    if (goal(s)) {
      std::vector<int> plan;
      for (int k = static_cast<int>(i); nodes[k].parent >= 0; k = nodes[k].parent) plan.push_back(nodes[k].action);
      return std::vector<int>(plan.rbegin(), plan.rend());
    }
    for (int a = 0; a < 3; ++a) {
      AgentState n = s;
      if (a == 0) n.dir = (s.dir + 3) % 4;
      if (a == 1) n.dir = (s.dir + 1) % 4;
      if (a == 2) {
        if (!enterable(g, s.front())) continue;
        n.pos = s.front();
      }
      if (seen[key(n)]) continue;
      seen[key(n)] = 1;
      nodes.push_back({n, static_cast<int>(i), a});
    }
  }
  return std::nullopt;
}

std::optional<Cell> find_cell(const Grid& g, const std::function<bool(const WorldObject&)>& pred) {
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      const auto& o = g.get(x, y);
      if (o && pred(*o)) return Cell{x, y};
    }
  }
  return std::nullopt;
}

StepOutcome run(Env& env, const std::vector<int>& actions, StepOutcome last) {
  for (int a : actions) {
    last = env.step(a);
    if (last.terminated || last.truncated) break;
  }
  return last;
}

bool ended(const StepOutcome& o) { return o.terminated || o.truncated; }

std::vector<int> must(std::optional<std::vector<int>> plan, const char* what) {
  if (!plan) throw std::runtime_error(std::string("planner found no path: ") + what);
  return *plan;
}

/// Faces `target` from the current world state and applies one action.
StepOutcome face_and(Env& env, Cell target, Action act, StepOutcome last, const char* what) {
  const GridWorld& w = *env.grid_world();
  last = run(env, must(search(w.grid, w.agent, [&](const AgentState& s) { return s.front() == target; }), what), last);
  if (ended(last)) return last;
  return env.step(static_cast<int>(act));
}

/// Drops the carried object on the nearest front cell that keeps every cell
/// in `keep` approachable.
StepOutcome drop_safely(Env& env, const std::vector<Cell>& keep, StepOutcome last) {
  const GridWorld w = *env.grid_world();
  auto ok = [&](const AgentState& s) {
    const Cell f = s.front();
    if (!w.grid.in_bounds(f.x, f.y) || w.grid.get(f.x, f.y)) return false;
    for (const Cell& k : keep) {
      if (f == k) return false;
    }
    GridWorld trial = w;
    trial.agent = s;
    trial.grid.set(f.x, f.y, *w.agent.carrying);
    for (const Cell& k : keep) {
      const bool reachable = search(trial.grid, s, [&](const AgentState& q) {
        return q.front() == k || q.pos == k;
      }).has_value();
      if (!reachable) return false;
    }
    return true;
  };
  last = run(env, must(search(w.grid, w.agent, ok), "drop cell"), last);
  if (ended(last)) return last;
  return env.step(static_cast<int>(Action::Drop));
}

}  // namespace

std::optional<std::vector<int>> bfs_actions(const GridWorld& world,
                                            const std::function<bool(const AgentState&)>& goal) {
  return search(world.grid, world.agent, goal);
}

int fourrooms_optimal_steps(const GridWorld& world) {
  const Cell goal = *find_cell(world.grid, [](const WorldObject& o) { return o.kind == Kind::Goal; });
  return static_cast<int>(must(search(world.grid, world.agent, [&](const AgentState& s) { return s.pos == goal; }),
                               "goal")
                              .size());
}

StepOutcome solve_grid(Env& env, const std::string& mission_text) {
  const std::string& id = env.id();
  const GridWorld& w = *env.grid_world();
  StepOutcome last;
  if (id.rfind("Grid-Empty", 0) == 0 || id == "Grid-FourRooms") {
    const Cell goal = *find_cell(w.grid, [](const WorldObject& o) { return o.kind == Kind::Goal; });
    return run(env, must(search(w.grid, w.agent, [&](const AgentState& s) { return s.pos == goal; }), "goal"), last);
  }
  if (id.rfind("Grid-GoToObj", 0) == 0) {
    const auto m = mission::parse_mission(mission::Vocabulary::standard(), mission_text);
    const Kind kind = mission::to_kind(m.obj_type);
    const Cell target = *find_cell(w.grid, [&](const WorldObject& o) { return o.kind == kind && o.color == m.color; });
    auto plan = must(search(w.grid, w.agent, [&](const AgentState& s) { return s.front() == target; }), "target");
    if (plan.empty()) plan.push_back(static_cast<int>(Action::Done));
    return run(env, plan, last);
  }
  if (id == "Grid-UnlockPickup") {
    const Cell door = *find_cell(w.grid, [](const WorldObject& o) { return o.kind == Kind::Door; });
    const Cell blocker{door.x - 1, door.y};
    const Cell key = *find_cell(w.grid, [](const WorldObject& o) { return o.kind == Kind::Key; });
    const Cell box = *find_cell(w.grid, [](const WorldObject& o) { return o.kind == Kind::Box; });
    if (w.grid.get(blocker.x, blocker.y)) {
      last = face_and(env, blocker, Action::Pickup, last, "blocker");
      if (ended(last)) return last;
      last = drop_safely(env, {blocker, key}, last);
      if (ended(last)) return last;
    }
    last = face_and(env, key, Action::Pickup, last, "key");
    if (ended(last)) return last;
    last = face_and(env, door, Action::Toggle, last, "door");
    if (ended(last)) return last;
    last = drop_safely(env, {box}, last);
    if (ended(last)) return last;
    return face_and(env, box, Action::Pickup, last, "box");
  }
  throw std::invalid_argument("no grid solver for " + id);
}

// --- 3D planner ------------------------------------------------------------------

namespace {

constexpr double kLatticePitch = 0.15;

struct PoseNode {
  PlanePose pose;
  int parent;
  int action;
  int depth;
};

}  // namespace

std::optional<std::vector<int>> plan_world3d(const world3d::World& world,
                                             const std::function<bool(const world3d::World&)>& goal,
                                             int max_depth) {
  using world3d::kTurnStep;
  world3d::World sim = world;
  const double yaw0 = world.agent.pose.yaw;
  auto key = [&](const PlanePose& p) {
    const long long ix = std::llround(p.x / kLatticePitch);
    const long long iz = std::llround(p.z / kLatticePitch);
    const long long k = ((std::llround(world3d::wrap_angle(p.yaw - yaw0) / kTurnStep) % 24) + 24) % 24;
    return (ix * 100003 + iz) * 24 + k;
  };
  std::vector<PoseNode> nodes{{world.agent.pose, -1, -1, 0}};
  std::unordered_map<long long, char> seen{{key(world.agent.pose), 1}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    sim.agent.pose = nodes[i].pose;
    if (goal(sim)) {
      std::vector<int> plan;
      for (int k = static_cast<int>(i); nodes[k].parent >= 0; k = nodes[k].parent) plan.push_back(nodes[k].action);
      return std::vector<int>(plan.rbegin(), plan.rend());
    }
    if (nodes[i].depth >= max_depth) continue;
    for (int a = 0; a < 3; ++a) {
      sim.agent.pose = nodes[i].pose;
      world3d::step_kinematics(sim, static_cast<world3d::Action>(a));
      const PlanePose next = sim.agent.pose;
      if (next == nodes[i].pose) continue;
      if (!seen.emplace(key(next), 1).second) continue;
      nodes.push_back({next, static_cast<int>(i), a, nodes[i].depth + 1});
    }
  }
  return std::nullopt;
}

StepOutcome solve_world3d(Env& env, const std::string& mission_text) {
  const auto m = mission::parse_mission(mission::Vocabulary::standard(), mission_text);
  const world3d::EntityKind kind = m.obj_type == mission::ObjType::Key    ? world3d::EntityKind::Key
                                   : m.obj_type == mission::ObjType::Ball ? world3d::EntityKind::Ball
                                                                          : world3d::EntityKind::Box;
  auto goal = [&](const world3d::World& w) {
    for (const auto& e : w.plan.entities()) {
      if (e.kind == kind && e.color == m.color && world3d::near(w.agent, e)) return true;
    }
    return false;
  };
  auto plan = must(plan_world3d(*env.world3d(), goal, env.max_steps()), "3D target");
  if (plan.empty()) plan.push_back(static_cast<int>(world3d::Action::Done));
  return run(env, plan, StepOutcome{});
}

// --- renderer ----------------------------------------------------------------------

RayHit nearest_wall(const world3d::FloorPlan& plan, const world3d::Vec2& origin, const world3d::Vec2& dir) {
  RayHit best{std::numeric_limits<double>::infinity(), -1};
  const auto& walls = plan.walls();
  for (int i = 0; i < static_cast<int>(walls.size()); ++i) {
    const auto& w = walls[i];
    double t = 0, along = 0, lo = 0, hi = 0;
    if (w.a.x() == w.b.x()) {
      if (dir.x() == 0) continue;
      t = (w.a.x() - origin.x()) / dir.x();
      along = origin.y() + t * dir.y();
      lo = std::min(w.a.y(), w.b.y());
      hi = std::max(w.a.y(), w.b.y());
    } else {
      if (dir.y() == 0) continue;
      t = (w.a.y() - origin.y()) / dir.y();
      along = origin.x() + t * dir.x();
      lo = std::min(w.a.x(), w.b.x());
      hi = std::max(w.a.x(), w.b.x());
    }
    if (t > 0 && along >= lo && along <= hi && t < best.depth) best = {t, i};
  }
  return best;
}

GridWorld random_visibility_world(Rng& rng, int n, int max_walls) {
  GridWorld w{Grid(n, n), {}};
  w.agent.pos = {static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n))};
  w.agent.dir = static_cast<int>(rng.below(4));
  const int walls = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_walls + 1)));
  for (int i = 0; i < walls; ++i) {
    const Cell c{static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n))};
    if (!(c == w.agent.pos)) w.grid.set(c.x, c.y, WorldObject::wall());
  }
  return w;
}

std::vector<world3d::World> ray_scenes() {
  std::vector<world3d::World> out(5);
  {  // closed room, centered, facing east
    auto& p = out[0].plan;
    p.add_rect_room(0, 4, 0, 4);
    out[0].agent.pose = {2, 2, 0};
  }
  {  // closed room, off-center, oblique
    auto& p = out[1].plan;
    p.add_rect_room(0, 6, 0, 3);
    out[1].agent.pose = {1.3, 0.9, 0.7};
  }
  {  // looking through a portal into a deeper room
    auto& p = out[2].plan;
    p.add_rect_room(0, 3, 0, 3);
    p.add_rect_room(3, 9, 0, 3);
    p.connect_rooms(0, 1, 1.0, 2.0);
    out[2].agent.pose = {1.0, 1.5, 0.05};
  }
  {  // two by two rooms with four portals
    auto& p = out[3].plan;
    p.add_rect_room(0, 4, 0, 4);
    p.add_rect_room(4, 8, 0, 4);
    p.add_rect_room(0, 4, 4, 8);
    p.add_rect_room(4, 8, 4, 8);
    p.connect_rooms(0, 1, 1.0, 2.5);
    p.connect_rooms(2, 3, 5.0, 6.5);
    p.connect_rooms(0, 2, 1.5, 3.0);
    p.connect_rooms(1, 3, 4.5, 6.0);
    out[3].agent.pose = {2.7, 3.1, 2.2};
  }
  {  // L-shaped corridor seen from its corner
    auto& p = out[4].plan;
    p.add_rect_room(0, 2, 0, 2);
    p.add_rect_room(2, 10, 0, 2);
    p.add_rect_room(0, 2, 2, 10);
    p.connect_rooms(0, 1, 0.2, 1.8);
    p.connect_rooms(0, 2, 0.2, 1.8);
    out[4].agent.pose = {1.0, 1.0, std::numbers::pi / 4};
  }
  for (auto& w : out) {
    for (int i = 0; i < static_cast<int>(w.plan.rooms().size()); ++i) {
      w.plan.set_room_colors(i, kSceneWall, kSceneFloor, kSceneCeil);
    }
  }
  return out;
}

std::string check_columns(const world3d::World& world, const world3d::Camera& cam) {
  using namespace world3d;
  const Projection proj(cam);
  const Image img = render_first_person(world, cam);
  const double horizon = cam.obs_height / 2.0;
  for (int col = 0; col < cam.obs_width; ++col) {
    const Vec2 dir = proj.column_ray(cam, world.agent, col);
    const RayHit ref = nearest_wall(world.plan, world.agent.position(), dir);
    const ColumnHit hit = cast_column(world.plan, world.agent, cam, col);
    const std::string at = "col " + std::to_string(col);
    if (ref.wall < 0) return at + ": oracle ray escaped";
    if (std::abs(hit.depth - ref.depth) > 1e-9) return at + ": depth differs";
    const WallSegment& w = world.plan.walls()[ref.wall];
    Rgb wall = w.color;
    if (w.a.x() == w.b.x()) {
      wall = {static_cast<std::uint8_t>(w.color.r * 0.8), static_cast<std::uint8_t>(w.color.g * 0.8),
              static_cast<std::uint8_t>(w.color.b * 0.8)};
    }
    const double top = horizon - (kWallHeight - kEyeHeight) * proj.focal_px / ref.depth;
    const double bottom = horizon + kEyeHeight * proj.focal_px / ref.depth;
    for (int row = 0; row < cam.obs_height; ++row) {
      const double y = row + 0.5;
      if (std::abs(y - top) < 1e-6 || std::abs(y - bottom) < 1e-6) continue;
      const Rgb expect = (y > top && y < bottom) ? wall : (y < horizon ? kSceneCeil : kSceneFloor);
      if (!(img.pixel(row, col) == expect)) return at + " row " + std::to_string(row) + ": pixel differs";
    }
  }
  return "";
}

// --- service client -----------------------------------------------------------------

namespace asio = boost::asio;
namespace beast = boost::beast;
using tcp = asio::ip::tcp;

struct WsClient::Impl {
  asio::io_context io;
  beast::websocket::stream<tcp::socket> ws{io};
};

WsClient::WsClient(const std::string& host, unsigned short port) : impl_(std::make_unique<Impl>()) {
  tcp::resolver resolver(impl_->io);
  asio::connect(impl_->ws.next_layer(), resolver.resolve(host, std::to_string(port)));
  impl_->ws.handshake(host, "/ws");
  impl_->ws.text(true);
}

WsClient::~WsClient() {
  beast::error_code ec;
  impl_->ws.close(beast::websocket::close_code::normal, ec);
}

std::string WsClient::raw(const std::string& text) {
  impl_->ws.write(asio::buffer(text));
  beast::flat_buffer buf;
  impl_->ws.read(buf);
  return beast::buffers_to_string(buf.data());
}

nlohmann::json WsClient::request(const nlohmann::json& message) {
  const std::string reply = raw(message.dump() + "\n");
  return nlohmann::json::parse(reply);
}

std::pair<int, std::string> http_get(const std::string& host, unsigned short port, const std::string& target) {
  asio::io_context io;
  tcp::socket socket(io);
  tcp::resolver resolver(io);
  asio::connect(socket, resolver.resolve(host, std::to_string(port)));
  namespace http = beast::http;
  http::request<http::empty_body> req{http::verb::get, target, 11};
  req.set(http::field::host, host);
  req.keep_alive(false);
  http::write(socket, req);
  beast::flat_buffer buf;
  http::response<http::string_body> res;
  http::read(socket, buf, res);
  beast::error_code ec;
  socket.shutdown(tcp::socket::shutdown_both, ec);
  return {static_cast<int>(res.result_int()), res.body()};
}

void collect_strings(const nlohmann::json& j, std::vector<std::string>& out) {
  if (j.is_string()) {
    out.push_back(j.get<std::string>());
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      out.push_back(k);
      collect_strings(v, out);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_strings(v, out);
  }
}

}  // namespace oracle
