#include "unienv/metrics/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "unienv/error.hpp"
#include "unienv/grid/render.hpp"

namespace unienv::metrics {

namespace {

constexpr double kPanel = 240.0;  // panel edge in SVG units
constexpr double kPad = 12.0;
constexpr double kLabelBand = 20.0;
constexpr int kColumns = 5;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

/// World extent and mapping from world coordinates to panel coordinates.
struct Frame {
  double min_x, min_y, scale, ox, oy;

  double px(double x) const { return ox + (x - min_x) * scale; }
  double py(double y) const { return oy + (y - min_y) * scale; }
};

Frame fit(double min_x, double max_x, double min_y, double max_y, double ox, double oy) {
  const double span = std::max(max_x - min_x, max_y - min_y);
  const double s = span > 0 ? (kPanel - 2 * kPad) / span : 1.0;
  return {min_x, min_y, s, ox + kPad, oy + kLabelBand + kPad};
}

std::string rect(double x, double y, double w, double h, const std::string& fill) {
  return "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" fill=\"" + fill + "\"/>\n";
}

std::string circle(double x, double y, double r, const std::string& fill) {
  return "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(r) + "\" fill=\"" + fill + "\"/>\n";
}

Rgb cell_color(const grid::WorldObject& o) {
  switch (o.kind) {
    case grid::Kind::Wall: return {100, 100, 100};
    case grid::Kind::Goal: return {0, 200, 0};
    case grid::Kind::Lava: return {255, 128, 0};
    default: return grid::palette(o.color);
  }
}

std::string draw_grid(const grid::GridWorld& w, const Frame& f) {
  std::string out = rect(f.px(0), f.py(0), w.grid.width() * f.scale, w.grid.height() * f.scale, "#000000");
  for (int y = 0; y < w.grid.height(); ++y) {
    for (int x = 0; x < w.grid.width(); ++x) {
      const auto& o = w.grid.get(x, y);
      if (!o) continue;
      const std::string fill = hex(cell_color(*o));
      if (o->can_pickup()) {
        out += circle(f.px(x + 0.5), f.py(y + 0.5), 0.35 * f.scale, fill);
      } else {
        out += rect(f.px(x), f.py(y), f.scale, f.scale, fill);
      }
    }
  }
  return out;
}

std::string draw_world3d(const world3d::World& w, const Frame& f) {
  std::string out;
  for (const auto& r : w.plan.rooms()) {
    out += rect(f.px(r.min_x), f.py(r.min_z), (r.max_x - r.min_x) * f.scale, (r.max_z - r.min_z) * f.scale,
                hex(r.floor_color));
  }
  for (const auto& s : w.plan.walls()) {
    out += "<line x1=\"" + num(f.px(s.a.x())) + "\" y1=\"" + num(f.py(s.a.y())) + "\" x2=\"" + num(f.px(s.b.x())) +
           "\" y2=\"" + num(f.py(s.b.y())) + "\" stroke=\"" + hex(s.color) + "\" stroke-width=\"2\"/>\n";
  }
  for (const auto& e : w.plan.entities()) {
    out += circle(f.px(e.position.x()), f.py(e.position.y()), e.radius * f.scale, hex(grid::palette(e.color)));
  }
  return out;
}

/// Pose in world units; grid poses are drawn at cell centers.
std::pair<double, double> pose_point(const AgentPoseRecord& p) {
  if (const auto* c = std::get_if<CellPose>(&p)) return {c->x + 0.5, c->y + 0.5};
  const auto& q = std::get<PlanePose>(p);
  return {q.x, q.z};
}

}  // namespace

std::string render_trajectory_svg(const EpisodeLog& log, std::span<const WorldSnapshot> start_worlds) {
  const int n = static_cast<int>(log.episodes.size());
  const int cols = std::max(1, std::min(n, kColumns));
  const int rows = std::max(1, (n + kColumns - 1) / kColumns);
  const double cell_h = kPanel + kLabelBand;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(cols * kPanel) + "\" height=\"" +
                    num(rows * cell_h) + "\" viewBox=\"0 0 " + num(cols * kPanel) + " " + num(rows * cell_h) +
                    "\">\n";
  svg += rect(0, 0, cols * kPanel, rows * cell_h, "#ffffff");
  for (int i = 0; i < n; ++i) {
    const EpisodeSegment& seg = log.episodes[i];
    const double ox = (i % kColumns) * kPanel;
    const double oy = (i / kColumns) * cell_h;
    svg += "<g class=\"episode\" id=\"episode-" + std::to_string(i + 1) + "\">\n";
    svg += "<text x=\"" + num(ox + kPad) + "\" y=\"" + num(oy + kLabelBand - 4) +
           "\" font-family=\"monospace\" font-size=\"14\">" + std::to_string(i + 1) + "</text>\n";
    Frame f{0, 0, 1, ox + kPad, oy + kLabelBand + kPad};
    if (i < static_cast<int>(start_worlds.size())) {
      if (const auto* g = std::get_if<grid::GridWorld>(&start_worlds[i])) {
        f = fit(0, g->grid.width(), 0, g->grid.height(), ox, oy);
        svg += draw_grid(*g, f);
      } else {
        const auto& w = std::get<world3d::World>(start_worlds[i]);
        const auto b = w.plan.bounds();
        f = fit(b[0], b[1], b[2], b[3], ox, oy);
        svg += draw_world3d(w, f);
      }
    }
    std::vector<std::pair<double, double>> pts{pose_point(seg.start_pose)};
    for (const auto& s : seg.steps) {
      if (s.action) pts.push_back(pose_point(s.pose));
    }
    svg += "<polyline class=\"trajectory\" fill=\"none\" stroke=\"#ff00ff\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k) svg += " ";
      svg += num(f.px(pts[k].first)) + "," + num(f.py(pts[k].second));
    }
    svg += "\"/>\n";
    const auto [sx, sy] = pts.front();
    const auto [ex, ey] = pts.back();
    svg += "<circle class=\"start\" cx=\"" + num(f.px(sx)) + "\" cy=\"" + num(f.py(sy)) +
           "\" r=\"4\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";
    svg += "<rect class=\"end\" x=\"" + num(f.px(ex) - 4) + "\" y=\"" + num(f.py(ey) - 4) +
           "\" width=\"8\" height=\"8\" fill=\"#ff00ff\" stroke=\"#000000\"/>\n";
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string plot_trajectory(const EpisodeLog& log) {
  const ReplayReport report = replay(log);
  if (!report.ok) throw Error(ErrorCode::ReplayMismatch, report.mismatch);
  return render_trajectory_svg(log, report.start_worlds);
}

}  // namespace unienv::metrics
