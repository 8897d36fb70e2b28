#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "unienv/grid/object.hpp"
#include "unienv/rng.hpp"

namespace unienv::mission {

enum class ObjType : std::uint8_t { Key = 0, Ball = 1, Box = 2 };

inline constexpr std::array<ObjType, 3> kObjTypes = {ObjType::Key, ObjType::Ball, ObjType::Box};

std::string_view obj_type_name(ObjType t);
grid::Kind to_kind(ObjType t);

struct Template {
  int id = 0;
  std::string pattern;  // slots: {color} {obj_type}
};

/// Frozen ordering of colors, object types and templates.
struct Vocabulary {
  std::vector<grid::Color> colors;
  std::vector<ObjType> obj_types;
  std::vector<Template> templates;

  std::size_t instance_count() const { return colors.size() * obj_types.size(); }

  static const Vocabulary& standard();
};

inline constexpr int kGoTo = 0;
inline constexpr int kOneHotSize = 18;

struct Mission {
  int template_id = kGoTo;
  grid::Color color = grid::Color::Red;
  ObjType obj_type = ObjType::Key;
  std::string text;

  friend bool operator==(const Mission&, const Mission&) = default;
};

std::string render(const Vocabulary& vocab, int template_id, grid::Color color, ObjType type);
Mission make_mission(const Vocabulary& vocab, int template_id, grid::Color color, ObjType type);

Mission sample_mission(const Vocabulary& vocab, int template_id, Rng& rng);

/// Strict, case-sensitive match against the templates. Throws
/// UnparsableMission.
Mission parse_mission(const Vocabulary& vocab, std::string_view text);

/// Color-major: index = color_id * |types| + type_id.
std::vector<std::uint8_t> encode_one_hot(const Vocabulary& vocab, const Mission& m);
Mission decode_one_hot(const Vocabulary& vocab, const std::vector<std::uint8_t>& hot);

/// Plain-text listing of the vocabulary; the golden file is this string.
std::string vocabulary_listing(const Vocabulary& vocab);

}  // namespace unienv::mission
