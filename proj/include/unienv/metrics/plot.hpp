#pragma once

#include <span>
#include <string>

#include "unienv/metrics/replay.hpp"

namespace unienv::metrics {

/// One SVG panel per episode: the episode's start world from above, the
/// pose polyline, a circle at the start, a square at the end, and the
/// 1-based episode number.
std::string render_trajectory_svg(const EpisodeLog& log, std::span<const WorldSnapshot> start_worlds);

/// Replays first; throws ReplayMismatch if the log does not verify.
std::string plot_trajectory(const EpisodeLog& log);

}  // namespace unienv::metrics
