#include "unienv/env.hpp"

#include <string>

#include "unienv/error.hpp"

namespace unienv {

bool conforms(const ObservationRecord& obs, const ObservationSpec& spec) {
  const Image& img = obs.image;
  if (img.height != spec.height || img.width != spec.width || img.channels != spec.channels) return false;
  if (img.data.size() != static_cast<std::size_t>(img.height) * img.width * img.channels) return false;
  for (auto v : img.data) {
    if (v > spec.max_value) return false;
  }
  if (obs.direction.has_value() != spec.has_direction) return false;
  if (obs.direction && (*obs.direction < 0 || *obs.direction > 3)) return false;
  switch (spec.mission) {
    case MissionField::None:
      return !obs.mission && !obs.mission_one_hot;
    case MissionField::Text:
      return obs.mission.has_value() && !obs.mission_one_hot;
    case MissionField::OneHot: {
      if (obs.mission || !obs.mission_one_hot) return false;
      if (static_cast<int>(obs.mission_one_hot->size()) != spec.one_hot_size) return false;
      int ones = 0;
      for (auto v : *obs.mission_one_hot) {
        if (v > 1) return false;
        ones += v;
      }
      return ones == 1;
    }
  }
  return false;
}

void Env::set_camera(const world3d::Camera&) {
  throw Error(ErrorCode::NotAWorld3DEnv, id() + " has no first-person camera");
}

double compute_reward(const EpisodeClock& clock) {
  return 1.0 - 0.9 * (static_cast<double>(clock.step_count) / clock.max_steps);
}

double EpisodicEnv::reward() const { return compute_reward(clock_); }

void EpisodicEnv::require_reset() const {
  if (!has_reset_) throw Error(ErrorCode::NotReset, id() + " must be reset first");
}

ResetResult EpisodicEnv::reset(std::optional<std::uint64_t> seed) {
  seed_ = seed.value_or(entropy_seed());
  Rng rng(seed_, "world");
  clock_.step_count = 0;
  generate(rng);
  has_reset_ = true;
  ended_ = false;
  ResetResult out;
  out.observation = observe();
  out.info.seed = seed_;
  out.info.step_count = 0;
  out.info.success = false;
  return out;
}

StepOutcome EpisodicEnv::step(int action) {
  require_reset();
  if (ended_) throw Error(ErrorCode::EpisodeEnded, "episode ended; call reset()");
  if (action < 0 || action >= action_space().n()) {
    throw Error(ErrorCode::ActionOutOfRange,
                "action " + std::to_string(action) + " outside [0, " + std::to_string(action_space().n()) + ")");
  }
  ++clock_.step_count;
  const bool failed = transition(action);
  const bool succeeded = !failed && success();

  StepOutcome out;
  out.terminated = failed || succeeded;
  out.reward = succeeded ? reward() : 0.0;
  out.truncated = !out.terminated && clock_.exhausted();
  ended_ = out.terminated || out.truncated;
  out.observation = observe();
  out.info.seed = seed_;
  out.info.step_count = clock_.step_count;
  out.info.success = succeeded;
  return out;
}

}  // namespace unienv
