#pragma once

#include <array>

#include "unienv/grid/visibility.hpp"

namespace unienv::grid {

inline constexpr int kDefaultViewSize = 7;

/// (kind_id, color_id, state_id).
std::array<std::uint8_t, 3> encode_cell(const std::optional<WorldObject>& obj);

/// Inverse of encode_cell for ids that name a concrete occupant.
std::optional<WorldObject> decode_cell(std::uint8_t kind, std::uint8_t color, std::uint8_t state);

struct GridView {
  int view_size = 0;
  Image encoding;  // view_size x view_size x 3
  ViewMask mask;
};

/// Egocentric partial observation. Occluded and out-of-grid cells encode
/// as (unseen, 0, 0); the agent cell shows the carried object, or empty.
GridView encode_view(const GridWorld& world, int view_size = kDefaultViewSize);

/// Absolute height x width x 3 encoding of the whole grid with no masking.
Image encode_grid(const Grid& grid);

/// encode_grid plus the agent cell marked as (agent, red, direction).
Image encode_full_observation(const GridWorld& world);

}  // namespace unienv::grid
