#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unienv/env.hpp"
#include "unienv/grid/object.hpp"
#include "unienv/rng.hpp"

namespace unienv::grid {

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Unit step for each heading. y grows downwards.
Cell dir_vec(int dir);

/// Rectangular field of optional objects, row-major.
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  const std::optional<WorldObject>& get(int x, int y) const;
  void set(int x, int y, std::optional<WorldObject> obj);

  /// Perimeter of the rectangle becomes wall; interior untouched.
  void wall_rect(int x, int y, int w, int h);
  void horz_wall(int x, int y, int length);
  void vert_wall(int x, int y, int length);

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  void check(int x, int y) const;

  int width_ = 0;
  int height_ = 0;
  std::vector<std::optional<WorldObject>> cells_;
};

struct AgentState {
  Cell pos{-1, -1};  // unplaced
  int dir = 0;
  std::optional<WorldObject> carrying;

  Cell front() const {
    const Cell d = dir_vec(dir);
    return {pos.x + d.x, pos.y + d.y};
  }
  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct GridWorld {
  Grid grid;
  AgentState agent;
  friend bool operator==(const GridWorld&, const GridWorld&) = default;
};

enum class Action : int { TurnLeft = 0, TurnRight, Forward, Pickup, Drop, Toggle, Done };

inline constexpr int kNumActions = 7;

const DiscreteActionSpace& action_space();

struct ActionEffect {
  bool entered_lava = false;
};

/// Deterministic transition. Total: actions that make no sense in the
/// current state leave the world untouched.
ActionEffect apply_action(GridWorld& world, Action action);

/// Copying form of apply_action.
GridWorld transition(GridWorld world, Action action);

void put_object(Grid& grid, const WorldObject& obj, int x, int y);

/// Sub-rectangle used to restrict random placement.
struct Region {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};

/// Rejection-samples an empty cell in the region (never the agent's cell)
/// and puts the object there.
Cell place_randomly(GridWorld& world, Rng& rng, const WorldObject& obj,
                    std::optional<Region> region = std::nullopt);

/// Same sampling for the agent; also draws a uniform heading.
Cell place_agent(GridWorld& world, Rng& rng, std::optional<Region> region = std::nullopt);

/// Text map, one space-separated token per cell, one line per row:
/// W wall, . empty, G goal, L lava, F floor, K/B/O + color letter for
/// key/ball/box, D + color letter + state letter (o/c/l) for doors, and the
/// agent as > v < ^. Color letters are r g b p y e (grey).
std::string to_golden(const GridWorld& world);
GridWorld from_golden(const std::string& text);

}  // namespace unienv::grid
