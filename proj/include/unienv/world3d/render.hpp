#pragma once

#include <vector>

#include "unienv/world3d/world.hpp"

namespace unienv::world3d {

/// Pinhole parameters derived from a camera. Square pixels: the same focal
/// length (in pixels) applies on both axes.
struct Projection {
  double focal_px = 0;
  double tan_half_hfov = 0;
  double tan_half_vfov = 0;

  explicit Projection(const Camera& cam);

  /// Unnormalized ray direction for a column center, forward component 1.
  Vec2 column_ray(const Camera& cam, const Agent& agent, int col) const;
};

struct ColumnHit {
  double depth = 0;  // along the view axis; +inf on a miss
  int wall = -1;
};

/// Nearest wall along the column's ray.
ColumnHit cast_column(const FloorPlan& plan, const Agent& agent, const Camera& cam, int col);

/// Column raycast of walls, flat floor and ceiling, then depth-tested
/// camera-facing entity sprites drawn far to near.
Image render_first_person(const World& world, const Camera& cam = {});

Rgb entity_color(const Entity3D& e);

/// Orthographic plan view: room floors, wall lines (portal gaps show),
/// entity discs and the agent as a heading wedge.
Image render_topdown3d(const World& world, int px_per_unit = 16);

inline constexpr int kTopdownMargin = 4;

}  // namespace unienv::world3d
