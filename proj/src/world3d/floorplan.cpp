#include "unienv/world3d/floorplan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "unienv/error.hpp"

namespace unienv::world3d {

namespace {
constexpr double kEdgeEps = 1e-9;
}  // namespace

std::string_view entity_kind_name(EntityKind k) {
  switch (k) {
    case EntityKind::Box: return "box";
    case EntityKind::Ball: return "ball";
    case EntityKind::Key: return "key";
  }
  return "?";
}

Entity3D Entity3D::make(EntityKind kind, grid::Color color) {
  Entity3D e;
  e.kind = kind;
  e.color = color;
  switch (kind) {
    case EntityKind::Box: e.radius = 0.4; e.height = 0.8; break;
    case EntityKind::Ball: e.radius = 0.35; e.height = 0.7; break;
    case EntityKind::Key: e.radius = 0.25; e.height = 0.5; break;
  }
  return e;
}

int FloorPlan::add_rect_room(double min_x, double max_x, double min_z, double max_z) {
  if (!(min_x < max_x) || !(min_z < max_z)) {
    throw Error(ErrorCode::DegenerateExtent, "room extents must satisfy min < max");
  }
  for (const Room& r : rooms_) {
    const bool overlap_x = min_x < r.max_x - kEdgeEps && r.min_x < max_x - kEdgeEps;
    const bool overlap_z = min_z < r.max_z - kEdgeEps && r.min_z < max_z - kEdgeEps;
    if (overlap_x && overlap_z) throw Error(ErrorCode::OverlappingRoom, "room overlaps an existing room");
  }
  Room room;
  room.min_x = min_x;
  room.max_x = max_x;
  room.min_z = min_z;
  room.max_z = max_z;
  rooms_.push_back(room);
  rebuild_walls();
  return static_cast<int>(rooms_.size()) - 1;
}

void FloorPlan::connect_rooms(int room_a, int room_b, double start, double end) {
  const int n = static_cast<int>(rooms_.size());
  if (room_a < 0 || room_b < 0 || room_a >= n || room_b >= n || room_a == room_b) {
    throw Error(ErrorCode::NoSharedEdge, "invalid room pair");
  }
  const Room& a = rooms_[room_a];
  const Room& b = rooms_[room_b];
  Portal p{room_a, room_b, Axis::X, 0, start, end};
  double lo = 0, hi = 0;
  if (std::abs(a.max_x - b.min_x) < kEdgeEps || std::abs(b.max_x - a.min_x) < kEdgeEps) {
    p.axis = Axis::Z;
    p.coord = std::abs(a.max_x - b.min_x) < kEdgeEps ? a.max_x : a.min_x;
    lo = std::max(a.min_z, b.min_z);
    hi = std::min(a.max_z, b.max_z);
  } else if (std::abs(a.max_z - b.min_z) < kEdgeEps || std::abs(b.max_z - a.min_z) < kEdgeEps) {
    p.axis = Axis::X;
    p.coord = std::abs(a.max_z - b.min_z) < kEdgeEps ? a.max_z : a.min_z;
    lo = std::max(a.min_x, b.min_x);
    hi = std::min(a.max_x, b.max_x);
  } else {
    throw Error(ErrorCode::NoSharedEdge, "rooms do not touch");
  }
  if (hi - lo <= kEdgeEps || start < lo - kEdgeEps || end > hi + kEdgeEps || !(start < end)) {
    throw Error(ErrorCode::NoSharedEdge, "span is not on the shared edge");
  }
  if (end - start < 2.0 * kAgentRadius + kPortalClearance - kEdgeEps) {
    throw Error(ErrorCode::SpanTooNarrow, "portal narrower than the agent plus clearance");
  }
  portals_.push_back(p);
  rebuild_walls();
}

void FloorPlan::set_room_colors(int room, Rgb wall, Rgb floor, Rgb ceiling) {
  Room& r = rooms_.at(room);
  r.wall_color = wall;
  r.floor_color = floor;
  r.ceil_color = ceiling;
  rebuild_walls();
}

void FloorPlan::rebuild_walls() {
  walls_.clear();
  for (int i = 0; i < static_cast<int>(rooms_.size()); ++i) {
    const Room& r = rooms_[i];
    struct Edge {
      Axis axis;
      double coord, from, to;
    };
    const Edge edges[4] = {{Axis::X, r.min_z, r.min_x, r.max_x},
                           {Axis::Z, r.max_x, r.min_z, r.max_z},
                           {Axis::X, r.max_z, r.min_x, r.max_x},
                           {Axis::Z, r.min_x, r.min_z, r.max_z}};
    for (const Edge& e : edges) {
      std::vector<std::pair<double, double>> gaps;
      for (const Portal& p : portals_) {
        if ((p.room_a == i || p.room_b == i) && p.axis == e.axis && std::abs(p.coord - e.coord) < kEdgeEps) {
          gaps.emplace_back(p.start, p.end);
        }
      }
      std::sort(gaps.begin(), gaps.end());
      double cursor = e.from;
      auto emit = [&](double s, double t) {
        if (t - s <= kEdgeEps) return;
        WallSegment w;
        if (e.axis == Axis::X) {
          w.a = Vec2(s, e.coord);
          w.b = Vec2(t, e.coord);
        } else {
          w.a = Vec2(e.coord, s);
          w.b = Vec2(e.coord, t);
        }
        w.color = r.wall_color;
        walls_.push_back(w);
      };
      for (const auto& [s, t] : gaps) {
        emit(cursor, s);
        cursor = std::max(cursor, t);
      }
      emit(cursor, e.to);
    }
  }
}

int FloorPlan::room_at(const Vec2& p) const {
  for (int i = 0; i < static_cast<int>(rooms_.size()); ++i) {
    if (rooms_[i].contains(p)) return i;
  }
  return -1;
}

std::array<double, 4> FloorPlan::bounds() const {
  std::array<double, 4> b{0, 0, 0, 0};
  for (std::size_t i = 0; i < rooms_.size(); ++i) {
    const Room& r = rooms_[i];
    if (i == 0) {
      b = {r.min_x, r.max_x, r.min_z, r.max_z};
    } else {
      b = {std::min(b[0], r.min_x), std::max(b[1], r.max_x), std::min(b[2], r.min_z), std::max(b[3], r.max_z)};
    }
  }
  return b;
}

std::string FloorPlan::to_golden() const {
  std::string out;
  char buf[160];
  for (const Room& r : rooms_) {
    std::snprintf(buf, sizeof buf, "room %.6f %.6f %.6f %.6f\n", r.min_x, r.max_x, r.min_z, r.max_z);
    out += buf;
  }
  for (const Portal& p : portals_) {
    std::snprintf(buf, sizeof buf, "portal %d %d %s %.6f %.6f\n", p.room_a, p.room_b, p.axis == Axis::X ? "x" : "z",
                  p.start, p.end);
    out += buf;
  }
  for (const Entity3D& e : entities_) {
    std::snprintf(buf, sizeof buf, "entity %s %s %.6f %.6f\n", std::string(entity_kind_name(e.kind)).c_str(),
                  std::string(grid::color_name(e.color)).c_str(), e.position.x(), e.position.y());
    out += buf;
  }
  return out;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double wall_clearance(const FloorPlan& plan, const Vec2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const WallSegment& w : plan.walls()) best = std::min(best, point_segment_distance(p, w.a, w.b));
  return best;
}

bool disc_collides(const FloorPlan& plan, const Vec2& p, double radius, int skip_entity) {
  for (const WallSegment& w : plan.walls()) {
    if (point_segment_distance(p, w.a, w.b) < radius) return true;
  }
  const auto& ents = plan.entities();
  for (int i = 0; i < static_cast<int>(ents.size()); ++i) {
    if (i == skip_entity) continue;
    if ((p - ents[i].position).norm() < radius + ents[i].radius) return true;
  }
  return false;
}

Vec2 sample_free_position(const FloorPlan& plan, Rng& rng, double radius, const PlacementOptions& opts) {
  std::vector<int> candidates;
  if (opts.room) {
    if (*opts.room < 0 || *opts.room >= static_cast<int>(plan.rooms().size())) {
      throw Error(ErrorCode::NoFreeSpace, "no such room");
    }
    candidates.push_back(*opts.room);
  } else {
    for (int i = 0; i < static_cast<int>(plan.rooms().size()); ++i) candidates.push_back(i);
  }
  if (candidates.empty()) throw Error(ErrorCode::NoFreeSpace, "floor plan has no rooms");
  double total = 0;
  for (int i : candidates) {
    const Room& r = plan.rooms()[i];
    total += (r.max_x - r.min_x) * (r.max_z - r.min_z);
  }
  const double inflated = radius + opts.margin;
  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    // Area-weighted room choice keeps the draw uniform over the union.
    double pick = rng.uniform01() * total;
    const Room* room = &plan.rooms()[candidates.back()];
    for (int i : candidates) {
      const Room& r = plan.rooms()[i];
      const double area = (r.max_x - r.min_x) * (r.max_z - r.min_z);
      if (pick < area) {
        room = &r;
        break;
      }
      pick -= area;
    }
    const Vec2 p(rng.uniform(room->min_x, room->max_x), rng.uniform(room->min_z, room->max_z));
    if (!disc_collides(plan, p, inflated)) return p;
  }
  std::vector<Vec2> free;
  for (int i : candidates) {
    const Room& r = plan.rooms()[i];
    for (double x = r.min_x + kFallbackLattice / 2; x < r.max_x; x += kFallbackLattice) {
      for (double z = r.min_z + kFallbackLattice / 2; z < r.max_z; z += kFallbackLattice) {
        const Vec2 p(x, z);
        if (!disc_collides(plan, p, inflated)) free.push_back(p);
      }
    }
  }
  if (free.empty()) throw Error(ErrorCode::NoFreeSpace, "no collision-free position");
  return free[rng.below(free.size())];
}

Entity3D place_entity(FloorPlan& plan, Rng& rng, Entity3D entity, const PlacementOptions& opts) {
  entity.position = sample_free_position(plan, rng, entity.radius, opts);
  plan.entities().push_back(entity);
  return entity;
}

}  // namespace unienv::world3d
