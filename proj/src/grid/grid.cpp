#include "unienv/grid/grid.hpp"

#include <sstream>
#include <string>

#include "unienv/error.hpp"

namespace unienv::grid {

std::string_view color_name(Color c) {
  switch (c) {
    case Color::Red: return "red";
    case Color::Green: return "green";
    case Color::Blue: return "blue";
    case Color::Purple: return "purple";
    case Color::Yellow: return "yellow";
    case Color::Grey: return "grey";
  }
  return "?";
}

std::optional<Color> parse_color(std::string_view name) {
  for (Color c : kColors) {
    if (color_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Unseen: return "unseen";
    case Kind::Empty: return "empty";
    case Kind::Wall: return "wall";
    case Kind::Floor: return "floor";
    case Kind::Door: return "door";
    case Kind::Key: return "key";
    case Kind::Ball: return "ball";
    case Kind::Box: return "box";
    case Kind::Goal: return "goal";
    case Kind::Lava: return "lava";
    case Kind::Agent: return "agent";
  }
  return "?";
}

Cell dir_vec(int dir) {
  static constexpr Cell kDirs[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kDirs[dir & 3];
}

Grid::Grid(int width, int height)
    : width_(width), height_(height), cells_(static_cast<std::size_t>(width) * height) {
  if (width <= 0 || height <= 0) throw Error(ErrorCode::OutOfBounds, "grid dimensions must be positive");
}

void Grid::check(int x, int y) const {
  if (!in_bounds(x, y)) {
    throw Error(ErrorCode::OutOfBounds, "cell (" + std::to_string(x) + ", " + std::to_string(y) + ") outside " +
                                            std::to_string(width_) + "x" + std::to_string(height_));
  }
}

const std::optional<WorldObject>& Grid::get(int x, int y) const {
  check(x, y);
  return cells_[static_cast<std::size_t>(y) * width_ + x];
}

void Grid::set(int x, int y, std::optional<WorldObject> obj) {
  check(x, y);
  cells_[static_cast<std::size_t>(y) * width_ + x] = std::move(obj);
}

void Grid::horz_wall(int x, int y, int length) {
  check(x, y);
  check(x + length - 1, y);
  for (int i = 0; i < length; ++i) set(x + i, y, WorldObject::wall());
}

void Grid::vert_wall(int x, int y, int length) {
  check(x, y);
  check(x, y + length - 1);
  for (int i = 0; i < length; ++i) set(x, y + i, WorldObject::wall());
}

void Grid::wall_rect(int x, int y, int w, int h) {
  if (w <= 0 || h <= 0) throw Error(ErrorCode::OutOfBounds, "wall_rect needs positive extent");
  check(x, y);
  check(x + w - 1, y + h - 1);
  horz_wall(x, y, w);
  horz_wall(x, y + h - 1, w);
  vert_wall(x, y, h);
  vert_wall(x + w - 1, y, h);
}

const DiscreteActionSpace& action_space() {
  static const DiscreteActionSpace space{
      {"turn left", "turn right", "move forward", "pickup", "drop", "toggle", "done"}};
  return space;
}

ActionEffect apply_action(GridWorld& world, Action action) {
  ActionEffect effect;
  AgentState& agent = world.agent;
  Grid& grid = world.grid;
  const Cell f = agent.front();
  const bool front_ok = grid.in_bounds(f.x, f.y);

  switch (action) {
    case Action::TurnLeft:
      agent.dir = (agent.dir + 3) % 4;
      break;
    case Action::TurnRight:
      agent.dir = (agent.dir + 1) % 4;
      break;
    case Action::Forward: {
      if (!front_ok) break;
      const auto& cell = grid.get(f.x, f.y);
      if (!cell || cell->can_overlap()) {
        agent.pos = f;
        effect.entered_lava = cell && cell->kind == Kind::Lava;
      }
      break;
    }
    case Action::Pickup: {
      if (!front_ok || agent.carrying) break;
      const auto& cell = grid.get(f.x, f.y);
      if (cell && cell->can_pickup()) {
        agent.carrying = cell;
        grid.set(f.x, f.y, std::nullopt);
      }
      break;
    }
    case Action::Drop:
      if (!front_ok || !agent.carrying || grid.get(f.x, f.y)) break;
      grid.set(f.x, f.y, std::move(agent.carrying));
      agent.carrying.reset();
      break;
    case Action::Toggle: {
      if (!front_ok) break;
      const auto& cell = grid.get(f.x, f.y);
      if (!cell) break;
      if (cell->kind == Kind::Door) {
        WorldObject door = *cell;
        switch (*door.door) {
          case DoorState::Locked:
            if (agent.carrying && agent.carrying->kind == Kind::Key && agent.carrying->color == door.color) {
              door.door = DoorState::Open;
            }
            break;
          case DoorState::Closed: door.door = DoorState::Open; break;
          case DoorState::Open: door.door = DoorState::Closed; break;
        }
        grid.set(f.x, f.y, door);
      } else if (cell->kind == Kind::Box) {
        std::optional<WorldObject> inside;
        if (cell->contents) inside = *cell->contents;
        grid.set(f.x, f.y, std::move(inside));
      }
      break;
    }
    case Action::Done:
      break;
  }
  return effect;
}

GridWorld transition(GridWorld world, Action action) {
  apply_action(world, action);
  return world;
}

void put_object(Grid& grid, const WorldObject& obj, int x, int y) { grid.set(x, y, obj); }

namespace {

Region full_region(const Grid& g) { return {0, 0, g.width(), g.height()}; }

Cell sample_free(const GridWorld& world, Rng& rng, std::optional<Region> region) {
  const Grid& g = world.grid;
  const Region r = region.value_or(full_region(g));
  if (r.w <= 0 || r.h <= 0 || !g.in_bounds(r.x, r.y) || !g.in_bounds(r.x + r.w - 1, r.y + r.h - 1)) {
    throw Error(ErrorCode::OutOfBounds, "placement region outside grid");
  }
  auto is_free = [&](int x, int y) { return !g.get(x, y) && !(world.agent.pos == Cell{x, y}); };
  bool any = false;
  for (int y = r.y; y < r.y + r.h && !any; ++y) {
    for (int x = r.x; x < r.x + r.w && !any; ++x) any = is_free(x, y);
  }
  if (!any) throw Error(ErrorCode::NoFreeCell, "no empty cell in placement region");
  for (;;) {
    const int x = r.x + static_cast<int>(rng.below(static_cast<std::uint64_t>(r.w)));
    const int y = r.y + static_cast<int>(rng.below(static_cast<std::uint64_t>(r.h)));
    if (is_free(x, y)) return {x, y};
  }
}

}  // namespace

Cell place_randomly(GridWorld& world, Rng& rng, const WorldObject& obj, std::optional<Region> region) {
  const Cell c = sample_free(world, rng, region);
  world.grid.set(c.x, c.y, obj);
  return c;
}

Cell place_agent(GridWorld& world, Rng& rng, std::optional<Region> region) {
  world.agent.pos = Cell{-1, -1};
  const Cell c = sample_free(world, rng, region);
  world.agent.pos = c;
  world.agent.dir = static_cast<int>(rng.below(4));
  return c;
}

namespace {

constexpr std::string_view kColorLetters = "rgbpye";
constexpr std::string_view kAgentGlyphs = ">v<^";

char color_letter(Color c) { return kColorLetters[static_cast<int>(c)]; }

Color letter_color(char ch) {
  const auto i = kColorLetters.find(ch);
  if (i == std::string_view::npos) throw Error(ErrorCode::MalformedInput, std::string("bad color letter ") + ch);
  return static_cast<Color>(i);
}

std::string token(const std::optional<WorldObject>& obj) {
  if (!obj) return ".";
  switch (obj->kind) {
    case Kind::Wall: return "W";
    case Kind::Goal: return "G";
    case Kind::Lava: return "L";
    case Kind::Floor: return "F";
    case Kind::Key: return std::string("K") + color_letter(obj->color);
    case Kind::Ball: return std::string("B") + color_letter(obj->color);
    case Kind::Box: return std::string("O") + color_letter(obj->color);
    case Kind::Door: return std::string("D") + color_letter(obj->color) + "ocl"[static_cast<int>(*obj->door)];
    default: return "?";
  }
}

}  // namespace

std::string to_golden(const GridWorld& world) {
  std::string out;
  const Grid& g = world.grid;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (x) out += ' ';
      if (world.agent.pos == Cell{x, y}) {
        out += kAgentGlyphs[world.agent.dir];
      } else {
        out += token(g.get(x, y));
      }
    }
    out += '\n';
  }
  return out;
}

GridWorld from_golden(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.empty()) continue;
    std::istringstream toks(line);
    std::vector<std::string> row;
    for (std::string t; toks >> t;) row.push_back(t);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::MalformedInput, "empty golden map");
  GridWorld world{Grid(static_cast<int>(rows[0].size()), static_cast<int>(rows.size())), {}};
  for (int y = 0; y < static_cast<int>(rows.size()); ++y) {
    if (rows[y].size() != rows[0].size()) throw Error(ErrorCode::MalformedInput, "ragged golden map");
    for (int x = 0; x < static_cast<int>(rows[y].size()); ++x) {
      const std::string& t = rows[y][x];
      std::optional<WorldObject> obj;
      switch (t[0]) {
        case '.': break;
        case 'W': obj = WorldObject::wall(); break;
        case 'G': obj = WorldObject::goal(); break;
        case 'L': obj = WorldObject::lava(); break;
        case 'F': obj = WorldObject::floor(); break;
        case 'K': obj = WorldObject::key(letter_color(t.at(1))); break;
        case 'B': obj = WorldObject::ball(letter_color(t.at(1))); break;
        case 'O': obj = WorldObject::box(letter_color(t.at(1))); break;
        case 'D': {
          const auto s = std::string_view("ocl").find(t.at(2));
          if (s == std::string_view::npos) throw Error(ErrorCode::MalformedInput, "bad door state " + t);
          obj = WorldObject::door_with(letter_color(t.at(1)), static_cast<DoorState>(s));
          break;
        }
        default: {
          const auto d = kAgentGlyphs.find(t[0]);
          if (d == std::string_view::npos) throw Error(ErrorCode::MalformedInput, "bad token " + t);
          world.agent.pos = {x, y};
          world.agent.dir = static_cast<int>(d);
        }
      }
      world.grid.set(x, y, std::move(obj));
    }
  }
  return world;
}

}  // namespace unienv::grid
