#include "unienv/mission.hpp"

#include "unienv/error.hpp"

namespace unienv::mission {

std::string_view obj_type_name(ObjType t) {
  switch (t) {
    case ObjType::Key: return "key";
    case ObjType::Ball: return "ball";
    case ObjType::Box: return "box";
  }
  return "?";
}

grid::Kind to_kind(ObjType t) {
  switch (t) {
    case ObjType::Key: return grid::Kind::Key;
    case ObjType::Ball: return grid::Kind::Ball;
    case ObjType::Box: return grid::Kind::Box;
  }
  return grid::Kind::Key;
}

const Vocabulary& Vocabulary::standard() {
  static const Vocabulary vocab{
      {grid::kColors.begin(), grid::kColors.end()},
      {kObjTypes.begin(), kObjTypes.end()},
      {Template{kGoTo, "go to the {color} {obj_type}"}},
  };
  return vocab;
}

namespace {

const Template& find_template(const Vocabulary& vocab, int template_id) {
  for (const auto& t : vocab.templates) {
    if (t.id == template_id) return t;
  }
  throw Error(ErrorCode::UnparsableMission, "unknown template id " + std::to_string(template_id));
}

std::string substitute(std::string pattern, std::string_view slot, std::string_view value) {
  const auto pos = pattern.find(slot);
  if (pos != std::string::npos) pattern.replace(pos, slot.size(), value);
  return pattern;
}

std::size_t index_of(const std::vector<grid::Color>& v, grid::Color c) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == c) return i;
  }
  throw Error(ErrorCode::UnparsableMission, "color outside vocabulary");
}

std::size_t index_of(const std::vector<ObjType>& v, ObjType t) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == t) return i;
  }
  throw Error(ErrorCode::UnparsableMission, "object type outside vocabulary");
}

}  // namespace

std::string render(const Vocabulary& vocab, int template_id, grid::Color color, ObjType type) {
  const Template& t = find_template(vocab, template_id);
  return substitute(substitute(t.pattern, "{color}", grid::color_name(color)), "{obj_type}", obj_type_name(type));
}

Mission make_mission(const Vocabulary& vocab, int template_id, grid::Color color, ObjType type) {
  return Mission{template_id, color, type, render(vocab, template_id, color, type)};
}

Mission sample_mission(const Vocabulary& vocab, int template_id, Rng& rng) {
  find_template(vocab, template_id);
  const auto color = vocab.colors[rng.below(vocab.colors.size())];
  const auto type = vocab.obj_types[rng.below(vocab.obj_types.size())];
  return make_mission(vocab, template_id, color, type);
}

Mission parse_mission(const Vocabulary& vocab, std::string_view text) {
  // The vocabulary is tiny; matching against every rendering is exact and
  // trivially strict.
  for (const auto& t : vocab.templates) {
    for (auto c : vocab.colors) {
      for (auto o : vocab.obj_types) {
        if (render(vocab, t.id, c, o) == text) return make_mission(vocab, t.id, c, o);
      }
    }
  }
  throw Error(ErrorCode::UnparsableMission, "\"" + std::string(text) + "\" matches no template");
}

std::vector<std::uint8_t> encode_one_hot(const Vocabulary& vocab, const Mission& m) {
  std::vector<std::uint8_t> hot(vocab.instance_count(), 0);
  hot[index_of(vocab.colors, m.color) * vocab.obj_types.size() + index_of(vocab.obj_types, m.obj_type)] = 1;
  return hot;
}

Mission decode_one_hot(const Vocabulary& vocab, const std::vector<std::uint8_t>& hot) {
  if (hot.size() != vocab.instance_count()) throw Error(ErrorCode::UnparsableMission, "one-hot length mismatch");
  int index = -1;
  for (std::size_t i = 0; i < hot.size(); ++i) {
    if (hot[i] == 1 && index < 0) {
      index = static_cast<int>(i);
    } else if (hot[i] != 0) {
      throw Error(ErrorCode::UnparsableMission, "not a one-hot vector");
    }
  }
  if (index < 0) throw Error(ErrorCode::UnparsableMission, "not a one-hot vector");
  const auto n_types = vocab.obj_types.size();
  return make_mission(vocab, kGoTo, vocab.colors[index / n_types], vocab.obj_types[index % n_types]);
}

std::string vocabulary_listing(const Vocabulary& vocab) {
  std::string out = "colors:";
  for (auto c : vocab.colors) out += " " + std::string(grid::color_name(c));
  out += "\nobj_types:";
  for (auto t : vocab.obj_types) out += " " + std::string(obj_type_name(t));
  out += "\n";
  for (const auto& t : vocab.templates) out += "template " + std::to_string(t.id) + ": " + t.pattern + "\n";
  out += "one_hot: color_major " + std::to_string(vocab.instance_count()) + "\n";
  for (auto c : vocab.colors) {
    for (auto t : vocab.obj_types) {
      const auto m = make_mission(vocab, kGoTo, c, t);
      int idx = 0;
      for (auto v : encode_one_hot(vocab, m)) {
        if (v) break;
        ++idx;
      }
      out += std::to_string(idx) + " " + m.text + "\n";
    }
  }
  return out;
}

}  // namespace unienv::mission
