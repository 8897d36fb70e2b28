#include "unienv/metrics/curve.hpp"

#include <Eigen/Core>

#include "unienv/error.hpp"

namespace unienv::metrics {

RewardCurve curve_from_episodes(std::span<const int> lengths, std::span<const double> rewards) {
  if (lengths.size() != rewards.size()) {
    throw Error(ErrorCode::MalformedInput, "lengths and rewards differ in size");
  }
  RewardCurve curve;
  std::int64_t t = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] <= 0) throw Error(ErrorCode::MalformedInput, "episode lengths must be positive");
    t += lengths[i];
    curve.points.push_back({t, rewards[i]});
  }
  return curve;
}

double area_under_curve(const RewardCurve& curve) {
  const auto n = static_cast<Eigen::Index>(curve.points.size());
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "area under a curve needs at least two points");
  Eigen::ArrayXd t(n), r(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i > 0 && curve.points[i].timestep <= curve.points[i - 1].timestep) {
      throw Error(ErrorCode::MalformedInput, "timesteps must be strictly increasing");
    }
    t[i] = static_cast<double>(curve.points[i].timestep);
    r[i] = curve.points[i].reward;
  }
  const Eigen::ArrayXd dt = t.tail(n - 1) - t.head(n - 1);
  const Eigen::ArrayXd mid = 0.5 * (r.tail(n - 1) + r.head(n - 1));
  return (dt * mid).sum();
}

double transfer_improvement(double auc_transfer, double auc_baseline) {
  if (!(auc_baseline > 0.0)) throw Error(ErrorCode::ZeroBaseline, "baseline AUC must be positive");
  return (auc_transfer - auc_baseline) / auc_baseline;
}

}  // namespace unienv::metrics
