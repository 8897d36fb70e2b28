#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

namespace unienv::grid {

// Ids double as observation channel values and are frozen.
enum class Kind : std::uint8_t {
  Unseen = 0,
  Empty = 1,
  Wall = 2,
  Floor = 3,
  Door = 4,
  Key = 5,
  Ball = 6,
  Box = 7,
  Goal = 8,
  Lava = 9,
  Agent = 10,  // only emitted by the fully observable encoding
};

enum class Color : std::uint8_t { Red = 0, Green = 1, Blue = 2, Purple = 3, Yellow = 4, Grey = 5 };

enum class DoorState : std::uint8_t { Open = 0, Closed = 1, Locked = 2 };

inline constexpr std::array<Color, 6> kColors = {Color::Red,    Color::Green,  Color::Blue,
                                                 Color::Purple, Color::Yellow, Color::Grey};

std::string_view color_name(Color c);
std::string_view kind_name(Kind k);
std::optional<Color> parse_color(std::string_view name);

/// A typed, colored tile occupant. Only doors carry a state and only boxes
/// carry contents; the constructors below are the only way to build one.
struct WorldObject {
  Kind kind = Kind::Wall;
  Color color = Color::Grey;
  std::optional<DoorState> door;
  std::shared_ptr<const WorldObject> contents;

  static WorldObject wall() { return {Kind::Wall, Color::Grey, std::nullopt, nullptr}; }
  static WorldObject floor(Color c = Color::Blue) { return {Kind::Floor, c, std::nullopt, nullptr}; }
  static WorldObject goal() { return {Kind::Goal, Color::Green, std::nullopt, nullptr}; }
  static WorldObject lava() { return {Kind::Lava, Color::Red, std::nullopt, nullptr}; }
  static WorldObject key(Color c) { return {Kind::Key, c, std::nullopt, nullptr}; }
  static WorldObject ball(Color c) { return {Kind::Ball, c, std::nullopt, nullptr}; }
  static WorldObject box(Color c, std::optional<WorldObject> inside = std::nullopt) {
    return {Kind::Box, c, std::nullopt,
            inside ? std::make_shared<const WorldObject>(*inside) : nullptr};
  }
  static WorldObject door_with(Color c, DoorState s) { return {Kind::Door, c, s, nullptr}; }

  bool can_overlap() const {
    return kind == Kind::Floor || kind == Kind::Goal || kind == Kind::Lava ||
           (kind == Kind::Door && door == DoorState::Open);
  }
  bool can_pickup() const { return kind == Kind::Key || kind == Kind::Ball || kind == Kind::Box; }
  bool opaque() const {
    return kind == Kind::Wall || (kind == Kind::Door && door != DoorState::Open);
  }
  std::uint8_t state_id() const { return door ? static_cast<std::uint8_t>(*door) : 0; }

  friend bool operator==(const WorldObject& a, const WorldObject& b) {
    if (a.kind != b.kind || a.color != b.color || a.door != b.door) return false;
    if (!a.contents || !b.contents) return !a.contents && !b.contents;
    return *a.contents == *b.contents;
  }
};

}  // namespace unienv::grid
