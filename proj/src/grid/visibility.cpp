#include "unienv/grid/visibility.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>

namespace unienv::grid {

Cell view_to_world(const AgentState& agent, int view_size, int row, int col) {
  const int fwd = view_size - 1 - row;
  const int lat = col - view_size / 2;
  const Cell f = dir_vec(agent.dir);
  const Cell r{-f.y, f.x};
  return {agent.pos.x + f.x * fwd + r.x * lat, agent.pos.y + f.y * fwd + r.y * lat};
}

std::vector<Cell> supercover_between(Cell from, Cell to) {
  std::vector<Cell> out;
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  const int nx = std::abs(dx);
  const int ny = std::abs(dy);
  const int sx = dx > 0 ? 1 : -1;
  const int sy = dy > 0 ? 1 : -1;
  Cell p = from;
  int ix = 0;
  int iy = 0;
  auto push = [&](Cell c) {
    if (!(c == from) && !(c == to)) out.push_back(c);
  };
  while (ix < nx || iy < ny) {
    // Compare the parameters at which the segment crosses the next vertical
    // and the next horizontal cell boundary: (2ix+1)/2nx vs (2iy+1)/2ny.
    const long long cross_x = static_cast<long long>(2 * ix + 1) * ny;
    const long long cross_y = static_cast<long long>(2 * iy + 1) * nx;
    if (cross_x == cross_y) {
      // Exactly through a corner: the two side cells touch the segment.
      push({p.x + sx, p.y});
      push({p.x, p.y + sy});
      p.x += sx;
      p.y += sy;
      ++ix;
      ++iy;
    } else if (cross_x < cross_y) {
      p.x += sx;
      ++ix;
    } else {
      p.y += sy;
      ++iy;
    }
    push(p);
  }
  return out;
}

namespace {

/// For each view cell, the view-cell indices strictly between it and the
/// agent. Egocentric, so it depends on view_size only.
struct SightTable {
  std::vector<std::vector<int>> between;
};

std::shared_ptr<const SightTable> sight_table(int view_size) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const SightTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[view_size];
  if (!slot) {
    auto table = std::make_shared<SightTable>();
    const int n = view_size * view_size;
    table->between.resize(n);
    const int half = view_size / 2;
    // Ego frame: x = lateral, y = forward.
    const Cell origin{0, 0};
    for (int row = 0; row < view_size; ++row) {
      for (int col = 0; col < view_size; ++col) {
        const Cell target{col - half, view_size - 1 - row};
        for (const Cell c : supercover_between(origin, target)) {
          const int r = view_size - 1 - c.y;
          const int k = c.x + half;
          table->between[row * view_size + col].push_back(r * view_size + k);
        }
      }
    }
    slot = std::move(table);
  }
  return slot;
}

}  // namespace

ViewMask visible_mask(const Grid& grid, const AgentState& agent, int view_size) {
  const auto table = sight_table(view_size);
  const int n = view_size * view_size;
  std::vector<char> in_grid(n), opaque(n);
  for (int row = 0; row < view_size; ++row) {
    for (int col = 0; col < view_size; ++col) {
      const Cell w = view_to_world(agent, view_size, row, col);
      const int i = row * view_size + col;
      in_grid[i] = grid.in_bounds(w.x, w.y);
      if (in_grid[i]) {
        const auto& obj = grid.get(w.x, w.y);
        opaque[i] = obj && obj->opaque();
      }
    }
  }
  ViewMask mask{view_size, std::vector<bool>(n, false)};
  for (int i = 0; i < n; ++i) {
    if (!in_grid[i]) continue;
    bool clear = true;
    for (int j : table->between[i]) {
      if (opaque[j]) {
        clear = false;
        break;
      }
    }
    mask.visible[i] = clear;
  }
  mask.visible[(view_size - 1) * view_size + view_size / 2] = true;
  return mask;
}

}  // namespace unienv::grid
