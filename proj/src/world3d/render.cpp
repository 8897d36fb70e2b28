#include "unienv/world3d/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "unienv/grid/render.hpp"

namespace unienv::world3d {

namespace {

constexpr double kNearPlane = 0.05;
constexpr double kParallelEps = 1e-12;
constexpr Rgb kVoid{0, 0, 0};
constexpr Rgb kAgentMarker{255, 255, 255};

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Rgb scale(Rgb c, double f) {
  return {static_cast<std::uint8_t>(c.r * f), static_cast<std::uint8_t>(c.g * f), static_cast<std::uint8_t>(c.b * f)};
}

Vec2 right_of(const Vec2& forward) { return {-forward.y(), forward.x()}; }

/// z-running walls are shaded darker so corners read in the image.
Rgb wall_shade(const WallSegment& w) {
  return std::abs(w.a.x() - w.b.x()) < 1e-12 ? scale(w.color, 0.8) : w.color;
}

bool sprite_covers(EntityKind kind, double u, double v) {
  switch (kind) {
    case EntityKind::Box:
      return true;
    case EntityKind::Ball: {
      const double w = 2.0 * v - 1.0;
      return u * u + w * w <= 1.0;
    }
    case EntityKind::Key: {
      const double w = 2.0 * v - 1.0;
      const double ring = u * u + (w - 0.5) * (w - 0.5);
      const bool in_ring = ring <= 0.45 * 0.45 && ring >= 0.2 * 0.2;
      const bool shaft = std::abs(u) <= 0.15 && w <= 0.1;
      const bool teeth = u >= 0.15 && u <= 0.5 && ((w >= -0.6 && w <= -0.45) || w <= -0.8);
      return in_ring || shaft || teeth;
    }
  }
  return false;
}

}  // namespace

Projection::Projection(const Camera& cam) {
  const double hfov = cam.horizontal_fov_deg * std::numbers::pi / 180.0;
  tan_half_hfov = std::tan(hfov / 2.0);
  focal_px = (cam.obs_width / 2.0) / tan_half_hfov;
  tan_half_vfov = (cam.obs_height / 2.0) / focal_px;
}

Vec2 Projection::column_ray(const Camera& cam, const Agent& agent, int col) const {
  const Vec2 f = agent.heading();
  const double s = ((col + 0.5) * 2.0 / cam.obs_width - 1.0) * tan_half_hfov;
  return f + s * right_of(f);
}

ColumnHit cast_column(const FloorPlan& plan, const Agent& agent, const Camera& cam, int col) {
  const Projection proj(cam);
  const Vec2 origin = agent.position();
  const Vec2 dir = proj.column_ray(cam, agent, col);
  ColumnHit hit{std::numeric_limits<double>::infinity(), -1};
  const auto& walls = plan.walls();
  for (int i = 0; i < static_cast<int>(walls.size()); ++i) {
    const Vec2 edge = walls[i].b - walls[i].a;
    const double denom = cross(dir, edge);
    if (std::abs(denom) < kParallelEps) continue;
    const Vec2 rel = walls[i].a - origin;
    const double t = cross(rel, edge) / denom;
    const double u = cross(rel, dir) / denom;
    if (t > 0 && u >= 0 && u <= 1 && t < hit.depth) hit = {t, i};
  }
  return hit;
}

Rgb entity_color(const Entity3D& e) { return grid::palette(e.color); }

Image render_first_person(const World& world, const Camera& cam) {
  const int W = cam.obs_width;
  const int H = cam.obs_height;
  Image img(H, W, 3, 0);
  const Projection proj(cam);
  const Agent& agent = world.agent;
  const FloorPlan& plan = world.plan;
  const Vec2 origin = agent.position();
  const double eye = agent.eye_height;
  const double horizon = H / 2.0;
  const int own_room = plan.room_at(origin);
  const Room* fallback = own_room >= 0 ? &plan.rooms()[own_room] : nullptr;

  std::vector<double> zbuffer(W);
  for (int col = 0; col < W; ++col) {
    const ColumnHit hit = cast_column(plan, agent, cam, col);
    zbuffer[col] = hit.depth;
    const Vec2 dir = proj.column_ray(cam, agent, col);
    double wall_top = horizon, wall_bottom = horizon;
    Rgb wall_rgb = kVoid;
    if (hit.wall >= 0) {
      wall_top = horizon - (kWallHeight - eye) * proj.focal_px / hit.depth;
      wall_bottom = horizon + eye * proj.focal_px / hit.depth;
      wall_rgb = wall_shade(plan.walls()[hit.wall]);
    }
    for (int row = 0; row < H; ++row) {
      const double y = row + 0.5;
      Rgb c = kVoid;
      if (hit.wall >= 0 && y >= wall_top && y < wall_bottom) {
        c = wall_rgb;
      } else if (y != horizon) {
        // Flat floor / ceiling: intersect the pixel ray with the plane.
        const bool floor = y > horizon;
        const double height = floor ? eye : kWallHeight - eye;
        const double depth = height * proj.focal_px / std::abs(y - horizon);
        const int room = plan.room_at(origin + depth * dir);
        const Room* r = room >= 0 ? &plan.rooms()[room] : fallback;
        if (r) c = floor ? r->floor_color : r->ceil_color;
      }
      img.set_pixel(row, col, c);
    }
  }

  // Camera-facing sprites, far to near, each column depth-tested against
  // the walls.
  const Vec2 f = agent.heading();
  const Vec2 right = right_of(f);
  const auto& ents = plan.entities();
  std::vector<int> order(ents.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> depth(ents.size());
  for (std::size_t i = 0; i < ents.size(); ++i) depth[i] = (ents[i].position - origin).dot(f);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
  for (int i : order) {
    const Entity3D& e = ents[i];
    const double d = depth[i];
    if (d <= kNearPlane) continue;
    const double lateral = (e.position - origin).dot(right);
    const double center_x = W / 2.0 + lateral * proj.focal_px / d;
    const double half_w = e.radius * proj.focal_px / d;
    const double bottom = horizon + eye * proj.focal_px / d;
    const double top = horizon - (e.height - eye) * proj.focal_px / d;
    const int c0 = std::max(0, static_cast<int>(std::floor(center_x - half_w)));
    const int c1 = std::min(W - 1, static_cast<int>(std::ceil(center_x + half_w)));
    const int r0 = std::max(0, static_cast<int>(std::floor(top)));
    const int r1 = std::min(H - 1, static_cast<int>(std::ceil(bottom)));
    const Rgb color = entity_color(e);
    for (int col = c0; col <= c1; ++col) {
      if (!(d < zbuffer[col])) continue;
      const double u = (col + 0.5 - center_x) / half_w;
      if (u < -1.0 || u > 1.0) continue;
      for (int row = r0; row <= r1; ++row) {
        const double y = row + 0.5;
        if (y < top || y >= bottom) continue;
        const double v = (bottom - y) / (bottom - top);
        if (sprite_covers(e.kind, u, v)) img.set_pixel(row, col, color);
      }
    }
  }
  return img;
}

Image render_topdown3d(const World& world, int px_per_unit) {
  const FloorPlan& plan = world.plan;
  const auto b = plan.bounds();
  const double s = px_per_unit;
  const int W = static_cast<int>(std::ceil((b[1] - b[0]) * s)) + 2 * kTopdownMargin;
  const int H = static_cast<int>(std::ceil((b[3] - b[2]) * s)) + 2 * kTopdownMargin;
  Image img(H, W, 3, 0);
  const double wall_half = 0.75 / s;

  const Agent& agent = world.agent;
  const Vec2 ap = agent.position();
  const Vec2 h = agent.heading();
  const Vec2 r = right_of(h);
  const Vec2 tip = ap + h * (agent.radius * 1.5);
  const Vec2 left_base = ap - h * (agent.radius * 0.6) - r * (agent.radius * 0.7);
  const Vec2 right_base = ap - h * (agent.radius * 0.6) + r * (agent.radius * 0.7);
  auto in_wedge = [&](const Vec2& p) {
    const double d0 = cross(right_base - tip, p - tip);
    const double d1 = cross(left_base - right_base, p - right_base);
    const double d2 = cross(tip - left_base, p - left_base);
    return (d0 >= 0 && d1 >= 0 && d2 >= 0) || (d0 <= 0 && d1 <= 0 && d2 <= 0);
  };

  for (int row = 0; row < H; ++row) {
    for (int col = 0; col < W; ++col) {
      const Vec2 p(b[0] + (col + 0.5 - kTopdownMargin) / s, b[2] + (row + 0.5 - kTopdownMargin) / s);
      Rgb c = kVoid;
      const int room = plan.room_at(p);
      if (room >= 0) c = plan.rooms()[room].floor_color;
      for (const WallSegment& w : plan.walls()) {
        if (point_segment_distance(p, w.a, w.b) <= wall_half) {
          c = w.color;
          break;
        }
      }
      for (const Entity3D& e : plan.entities()) {
        if ((p - e.position).norm() <= e.radius) c = entity_color(e);
      }
      if (in_wedge(p)) c = kAgentMarker;
      img.set_pixel(row, col, c);
    }
  }
  return img;
}

}  // namespace unienv::world3d
