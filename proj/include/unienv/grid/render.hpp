#pragma once

#include <optional>

#include "unienv/grid/encoding.hpp"

namespace unienv::grid {

inline constexpr int kDefaultTilePx = 16;
/// Highlighted pixels move this fraction of the way towards white.
inline constexpr double kHighlightFactor = 0.3;

Rgb palette(Color c);

/// Pixel art for a single tile occupant, tile_px square.
Image render_tile(const std::optional<WorldObject>& obj, int tile_px);

/// Full top-down render. Cells set in `highlight` (height*width, row-major)
/// are brightened; the agent is drawn as a heading triangle.
Image render_rgb(const GridWorld& world, int tile_px = kDefaultTilePx,
                 const std::vector<bool>* highlight = nullptr);

/// Renders what an encoded view shows: decoded tiles, unseen cells black,
/// the agent at bottom-center pointing up.
Image render_view(const GridView& view, int tile_px = kDefaultTilePx);

/// Per-cell highlight flags (row-major over the grid) for the agent's
/// visible region.
std::vector<bool> visible_cells(const GridWorld& world, int view_size);

}  // namespace unienv::grid
