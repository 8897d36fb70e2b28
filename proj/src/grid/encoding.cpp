#include "unienv/grid/encoding.hpp"

namespace unienv::grid {

std::array<std::uint8_t, 3> encode_cell(const std::optional<WorldObject>& obj) {
  if (!obj) return {static_cast<std::uint8_t>(Kind::Empty), 0, 0};
  return {static_cast<std::uint8_t>(obj->kind), static_cast<std::uint8_t>(obj->color), obj->state_id()};
}

std::optional<WorldObject> decode_cell(std::uint8_t kind, std::uint8_t color, std::uint8_t state) {
  const auto c = static_cast<Color>(color % 6);
  switch (static_cast<Kind>(kind)) {
    case Kind::Wall: return WorldObject::wall();
    case Kind::Floor: return WorldObject::floor(c);
    case Kind::Door: return WorldObject::door_with(c, static_cast<DoorState>(state % 3));
    case Kind::Key: return WorldObject::key(c);
    case Kind::Ball: return WorldObject::ball(c);
    case Kind::Box: return WorldObject::box(c);
    case Kind::Goal: return WorldObject::goal();
    case Kind::Lava: return WorldObject::lava();
    default: return std::nullopt;
  }
}

namespace {
void put(Image& img, int row, int col, const std::array<std::uint8_t, 3>& v) {
  for (int ch = 0; ch < 3; ++ch) img.at(row, col, ch) = v[ch];
}
}  // namespace

GridView encode_view(const GridWorld& world, int view_size) {
  GridView view;
  view.view_size = view_size;
  view.mask = visible_mask(world.grid, world.agent, view_size);
  view.encoding = Image(view_size, view_size, 3, 0);
  for (int row = 0; row < view_size; ++row) {
    for (int col = 0; col < view_size; ++col) {
      if (!view.mask.at(row, col)) continue;  // stays (unseen, 0, 0)
      const Cell w = view_to_world(world.agent, view_size, row, col);
      put(view.encoding, row, col, encode_cell(world.grid.get(w.x, w.y)));
    }
  }
  put(view.encoding, view_size - 1, view_size / 2, encode_cell(world.agent.carrying));
  return view;
}

Image encode_grid(const Grid& grid) {
  Image img(grid.height(), grid.width(), 3, 0);
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) put(img, y, x, encode_cell(grid.get(x, y)));
  }
  return img;
}

Image encode_full_observation(const GridWorld& world) {
  Image img = encode_grid(world.grid);
  put(img, world.agent.pos.y, world.agent.pos.x,
      {static_cast<std::uint8_t>(Kind::Agent), static_cast<std::uint8_t>(Color::Red),
       static_cast<std::uint8_t>(world.agent.dir)});
  return img;
}

}  // namespace unienv::grid
