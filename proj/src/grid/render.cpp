#include "unienv/grid/render.hpp"

#include <cmath>

#include "unienv/error.hpp"

namespace unienv::grid {

Rgb palette(Color c) {
  switch (c) {
    case Color::Red: return {255, 0, 0};
    case Color::Green: return {0, 255, 0};
    case Color::Blue: return {0, 0, 255};
    case Color::Purple: return {112, 39, 195};
    case Color::Yellow: return {255, 255, 0};
    case Color::Grey: return {100, 100, 100};
  }
  return {};
}

namespace {

constexpr Rgb kBlack{0, 0, 0};
constexpr Rgb kGridLine{100, 100, 100};
constexpr Rgb kLava{255, 128, 0};

Rgb halve(Rgb c) { return {static_cast<std::uint8_t>(c.r / 2), static_cast<std::uint8_t>(c.g / 2),
                           static_cast<std::uint8_t>(c.b / 2)}; }

// Shape predicates on normalized pixel-center coordinates (u right, v down).
bool in_rect(double u, double v, double u0, double u1, double v0, double v1) {
  return u >= u0 && u <= u1 && v >= v0 && v <= v1;
}
bool in_circle(double u, double v, double cu, double cv, double r) {
  return (u - cu) * (u - cu) + (v - cv) * (v - cv) <= r * r;
}
bool in_triangle(double u, double v, const double (&p)[3][2]) {
  auto side = [&](int a, int b) {
    return (p[b][0] - p[a][0]) * (v - p[a][1]) - (p[b][1] - p[a][1]) * (u - p[a][0]);
  };
  const double d0 = side(0, 1), d1 = side(1, 2), d2 = side(2, 0);
  const bool neg = d0 < 0 || d1 < 0 || d2 < 0;
  const bool pos = d0 > 0 || d1 > 0 || d2 > 0;
  return !(neg && pos);
}

template <typename Pred>
void fill(Image& tile, Rgb c, Pred pred) {
  const int n = tile.width;
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const double u = (col + 0.5) / n;
      const double v = (row + 0.5) / n;
      if (pred(u, v)) tile.set_pixel(row, col, c);
    }
  }
}

void draw_object(Image& tile, const WorldObject& obj) {
  const Rgb c = palette(obj.color);
  switch (obj.kind) {
    case Kind::Wall:
      fill(tile, c, [](double, double) { return true; });
      break;
    case Kind::Floor:
      fill(tile, halve(c), [](double u, double v) { return in_rect(u, v, 0.031, 1, 0.031, 1); });
      break;
    case Kind::Goal:
      fill(tile, c, [](double u, double v) { return in_rect(u, v, 0.031, 1, 0.031, 1); });
      break;
    case Kind::Lava:
      fill(tile, kLava, [](double, double) { return true; });
      for (int i = 0; i < 3; ++i) {
        const double base = 0.3 + 0.2 * i;
        fill(tile, kBlack, [base](double u, double v) {
          const double wave = base + 0.03 * std::sin(u * 2.0 * 3.14159265358979 * 3.0);
          return u > 0.1 && u < 0.9 && std::abs(v - wave) < 0.03;
        });
      }
      break;
    case Kind::Door:
      switch (*obj.door) {
        case DoorState::Open:
          fill(tile, c, [](double u, double v) {
            return in_rect(u, v, 0.88, 1.0, 0, 1) && !in_rect(u, v, 0.92, 0.96, 0.04, 0.96);
          });
          break;
        case DoorState::Closed:
          fill(tile, c, [](double u, double v) {
            return !in_rect(u, v, 0.04, 0.96, 0.04, 0.96) || in_rect(u, v, 0.08, 0.92, 0.08, 0.92);
          });
          fill(tile, kBlack, [](double u, double v) {
            return in_rect(u, v, 0.12, 0.88, 0.12, 0.88) && !in_rect(u, v, 0.16, 0.84, 0.16, 0.84);
          });
          fill(tile, kBlack, [](double u, double v) { return in_circle(u, v, 0.75, 0.5, 0.08); });
          break;
        case DoorState::Locked:
          fill(tile, c, [](double, double) { return true; });
          fill(tile, halve(c), [](double u, double v) { return in_rect(u, v, 0.06, 0.94, 0.06, 0.94); });
          fill(tile, c, [](double u, double v) { return in_rect(u, v, 0.52, 0.75, 0.45, 0.55); });
          break;
      }
      break;
    case Kind::Key:
      fill(tile, c, [](double u, double v) {
        return in_rect(u, v, 0.5, 0.63, 0.31, 0.88) ||  // shaft
               in_rect(u, v, 0.38, 0.5, 0.59, 0.66) ||  // teeth
               in_rect(u, v, 0.38, 0.5, 0.81, 0.88) ||
               (in_circle(u, v, 0.56, 0.28, 0.19) && !in_circle(u, v, 0.56, 0.28, 0.064));  // ring
      });
      break;
    case Kind::Ball:
      fill(tile, c, [](double u, double v) { return in_circle(u, v, 0.5, 0.5, 0.31); });
      break;
    case Kind::Box:
      fill(tile, c, [](double u, double v) {
        return (in_rect(u, v, 0.12, 0.88, 0.12, 0.88) && !in_rect(u, v, 0.18, 0.82, 0.18, 0.82)) ||
               in_rect(u, v, 0.16, 0.84, 0.47, 0.53);
      });
      break;
    default:
      break;
  }
}

void draw_agent(Image& tile, int dir) {
  // East-facing triangle rotated about the tile center.
  const double base[3][2] = {{0.12, 0.19}, {0.87, 0.50}, {0.12, 0.81}};
  const double angle = dir * 3.14159265358979323846 / 2.0;
  const double ca = std::cos(angle), sa = std::sin(angle);
  double pts[3][2];
  for (int i = 0; i < 3; ++i) {
    const double du = base[i][0] - 0.5, dv = base[i][1] - 0.5;
    pts[i][0] = 0.5 + du * ca - dv * sa;
    pts[i][1] = 0.5 + du * sa + dv * ca;
  }
  fill(tile, palette(Color::Red), [&](double u, double v) { return in_triangle(u, v, pts); });
}

void grid_lines(Image& tile) {
  const int n = tile.width;
  for (int i = 0; i < n; ++i) {
    tile.set_pixel(0, i, kGridLine);
    tile.set_pixel(i, 0, kGridLine);
  }
}

void highlight(Image& tile) {
  for (auto& v : tile.data) v = static_cast<std::uint8_t>(v + std::lround((255 - v) * kHighlightFactor));
}

void blit(Image& dst, const Image& tile, int row0, int col0) {
  for (int r = 0; r < tile.height; ++r) {
    for (int c = 0; c < tile.width; ++c) dst.set_pixel(row0 + r, col0 + c, tile.pixel(r, c));
  }
}

void check_tile_px(int tile_px) {
  if (tile_px < 8) throw Error(ErrorCode::InvalidDims, "tile_px must be at least 8");
}

}  // namespace

Image render_tile(const std::optional<WorldObject>& obj, int tile_px) {
  check_tile_px(tile_px);
  Image tile(tile_px, tile_px, 3, 0);
  grid_lines(tile);
  if (obj) draw_object(tile, *obj);
  return tile;
}

Image render_rgb(const GridWorld& world, int tile_px, const std::vector<bool>* highlight_cells) {
  check_tile_px(tile_px);
  const Grid& g = world.grid;
  Image img(g.height() * tile_px, g.width() * tile_px, 3, 0);
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      Image tile = render_tile(g.get(x, y), tile_px);
      if (world.agent.pos == Cell{x, y}) draw_agent(tile, world.agent.dir);
      if (highlight_cells && (*highlight_cells)[static_cast<std::size_t>(y) * g.width() + x]) highlight(tile);
      blit(img, tile, y * tile_px, x * tile_px);
    }
  }
  return img;
}

Image render_view(const GridView& view, int tile_px) {
  check_tile_px(tile_px);
  const int n = view.view_size;
  Image img(n * tile_px, n * tile_px, 3, 0);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const auto kind = view.encoding.at(row, col, 0);
      if (kind == static_cast<std::uint8_t>(Kind::Unseen)) continue;
      Image tile = render_tile(decode_cell(kind, view.encoding.at(row, col, 1), view.encoding.at(row, col, 2)),
                               tile_px);
      if (row == n - 1 && col == n / 2) draw_agent(tile, 3);
      blit(img, tile, row * tile_px, col * tile_px);
    }
  }
  return img;
}

std::vector<bool> visible_cells(const GridWorld& world, int view_size) {
  const Grid& g = world.grid;
  std::vector<bool> cells(static_cast<std::size_t>(g.width()) * g.height(), false);
  const ViewMask mask = visible_mask(g, world.agent, view_size);
  for (int row = 0; row < view_size; ++row) {
    for (int col = 0; col < view_size; ++col) {
      if (!mask.at(row, col)) continue;
      const Cell w = view_to_world(world.agent, view_size, row, col);
      cells[static_cast<std::size_t>(w.y) * g.width() + w.x] = true;
    }
  }
  return cells;
}

}  // namespace unienv::grid
