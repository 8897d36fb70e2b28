#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "unienv/grid/object.hpp"
#include "unienv/image.hpp"
#include "unienv/rng.hpp"

namespace unienv::world3d {

using Vec2 = Eigen::Vector2d;  // (x, z) on the floor plane

inline constexpr double kAgentRadius = 0.4;
inline constexpr double kEyeHeight = 1.5;
inline constexpr double kWallHeight = 2.5;
inline constexpr double kPortalClearance = 0.1;
inline constexpr int kPlacementAttempts = 1000;
/// Lattice pitch of the exhaustive fallback after rejection sampling fails.
inline constexpr double kFallbackLattice = 0.05;

struct Room {
  double min_x = 0, max_x = 0, min_z = 0, max_z = 0;
  Rgb wall_color{200, 200, 200};
  Rgb floor_color{110, 110, 110};
  Rgb ceil_color{60, 60, 80};

  bool contains(const Vec2& p) const {
    return p.x() >= min_x && p.x() <= max_x && p.y() >= min_z && p.y() <= max_z;
  }
};

/// Axis the shared edge runs along.
enum class Axis { X, Z };

struct Portal {
  int room_a = 0;
  int room_b = 0;
  Axis axis = Axis::X;
  double coord = 0;  // fixed coordinate of the edge line
  double start = 0;
  double end = 0;
};

enum class EntityKind { Box, Ball, Key };

std::string_view entity_kind_name(EntityKind k);

struct Entity3D {
  EntityKind kind = EntityKind::Box;
  grid::Color color = grid::Color::Red;
  Vec2 position = Vec2::Zero();
  double radius = 0.4;
  double height = 0.8;

  static Entity3D make(EntityKind kind, grid::Color color);
};

struct WallSegment {
  Vec2 a;
  Vec2 b;
  Rgb color;
};

/// Axis-aligned rooms, the portals between them and the entities inside.
/// Wall segments are derived: every room edge minus its portal spans.
class FloorPlan {
 public:
  const std::vector<Room>& rooms() const { return rooms_; }
  const std::vector<Portal>& portals() const { return portals_; }
  const std::vector<WallSegment>& walls() const { return walls_; }
  std::vector<Entity3D>& entities() { return entities_; }
  const std::vector<Entity3D>& entities() const { return entities_; }

  int add_rect_room(double min_x, double max_x, double min_z, double max_z);
  void connect_rooms(int room_a, int room_b, double start, double end);
  void set_room_colors(int room, Rgb wall, Rgb floor, Rgb ceiling);

  /// Room containing the point, first match; -1 when outside every room.
  int room_at(const Vec2& p) const;

  /// Bounding box of all rooms: (min_x, max_x, min_z, max_z).
  std::array<double, 4> bounds() const;

  /// `room x0 x1 z0 z1` / `portal a b axis start end` / `entity kind color x z`
  /// records, one per line.
  std::string to_golden() const;

 private:
  void rebuild_walls();

  std::vector<Room> rooms_;
  std::vector<Portal> portals_;
  std::vector<WallSegment> walls_;
  std::vector<Entity3D> entities_;
};

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// True when a disc at `p` overlaps a wall or an entity (other than `skip`).
bool disc_collides(const FloorPlan& plan, const Vec2& p, double radius, int skip_entity = -1);

/// Minimum distance from p to any wall segment.
double wall_clearance(const FloorPlan& plan, const Vec2& p);

struct PlacementOptions {
  std::optional<int> room;  // restrict to one room
  /// Extra free distance kept between the footprint and walls/entities.
  double margin = 0.0;
};

/// Rejection-samples a collision-free position for a disc. Falls back to
/// a lattice scan after kPlacementAttempts misses; throws NoFreeSpace if
/// that finds nothing.
Vec2 sample_free_position(const FloorPlan& plan, Rng& rng, double radius,
                          const PlacementOptions& opts = {});

/// Places and appends an entity; returns a copy of it.
Entity3D place_entity(FloorPlan& plan, Rng& rng, Entity3D entity, const PlacementOptions& opts = {});

}  // namespace unienv::world3d
