#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace unienv::metrics {

struct CurvePoint {
  std::int64_t timestep = 0;
  double reward = 0.0;
};

/// Episodic reward against cumulative environment timesteps.
struct RewardCurve {
  std::vector<CurvePoint> points;
};

/// Builds (cumulative timesteps, episode reward) points from per-episode
/// lengths and rewards.
RewardCurve curve_from_episodes(std::span<const int> lengths, std::span<const double> rewards);

/// Trapezoidal integral over the timestep axis. Throws TooFewPoints, or
/// MalformedInput when timesteps are not strictly increasing.
double area_under_curve(const RewardCurve& curve);

/// (auc_transfer - auc_baseline) / auc_baseline. Throws ZeroBaseline.
double transfer_improvement(double auc_transfer, double auc_baseline);

}  // namespace unienv::metrics
