#pragma once

#include <vector>

#include "unienv/grid/grid.hpp"

namespace unienv::grid {

/// view_size x view_size booleans, row-major in egocentric view coordinates:
/// the agent sits at (row view_size-1, col view_size/2) facing up.
struct ViewMask {
  int view_size = 0;
  std::vector<bool> visible;

  bool at(int row, int col) const { return visible[row * view_size + col]; }
  friend bool operator==(const ViewMask&, const ViewMask&) = default;
};

/// World cell shown at a given egocentric view position.
Cell view_to_world(const AgentState& agent, int view_size, int row, int col);

/// Cells (other than the endpoints) whose closed unit square touches the
/// segment between the two cell centers. Corner touches count.
std::vector<Cell> supercover_between(Cell from, Cell to);

/// A view cell is visible iff it is inside the grid and no opaque cell lies
/// on the supercover strictly between the agent and it.
ViewMask visible_mask(const Grid& grid, const AgentState& agent, int view_size);

}  // namespace unienv::grid
