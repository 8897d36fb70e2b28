#include "unienv/wrappers.hpp"

#include "unienv/error.hpp"
#include "unienv/grid/encoding.hpp"
#include "unienv/mission.hpp"

namespace unienv::wrappers {

namespace {

/// Base for layers that only rewrite observations.
class ObservationWrapper : public Wrapper {
 public:
  using Wrapper::Wrapper;

  ResetResult reset(std::optional<std::uint64_t> seed) override {
    ResetResult r = inner_->reset(seed);
    r.observation = transform(std::move(r.observation));
    return r;
  }
  StepOutcome step(int action) override {
    StepOutcome s = inner_->step(action);
    s.observation = transform(std::move(s.observation));
    return s;
  }

 protected:
  virtual ObservationRecord transform(ObservationRecord obs) const = 0;
};

class ImageOnly final : public ObservationWrapper {
 public:
  using ObservationWrapper::ObservationWrapper;

  ObservationSpec observation_spec() const override {
    ObservationSpec spec = inner_->observation_spec();
    spec.has_direction = false;
    spec.mission = MissionField::None;
    spec.one_hot_size = 0;
    return spec;
  }

 protected:
  ObservationRecord transform(ObservationRecord obs) const override {
    ObservationRecord out;
    out.image = std::move(obs.image);
    return out;
  }
};

class OneHotMission final : public ObservationWrapper {
 public:
  using ObservationWrapper::ObservationWrapper;

  ObservationSpec observation_spec() const override {
    ObservationSpec spec = inner_->observation_spec();
    if (spec.mission == MissionField::Text) {
      spec.mission = MissionField::OneHot;
      spec.one_hot_size = mission::kOneHotSize;
    }
    return spec;
  }

 protected:
  ObservationRecord transform(ObservationRecord obs) const override {
    if (!obs.mission) return obs;
    const auto& vocab = mission::Vocabulary::standard();
    obs.mission_one_hot = mission::encode_one_hot(vocab, mission::parse_mission(vocab, *obs.mission));
    obs.mission.reset();
    return obs;
  }
};

class StochasticActions final : public Wrapper {
 public:
  StochasticActions(EnvPtr inner, double epsilon) : Wrapper(std::move(inner)), epsilon_(epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw Error(ErrorCode::MalformedInput, "epsilon must lie in [0, 1]");
    }
  }

  ResetResult reset(std::optional<std::uint64_t> seed) override {
    ResetResult r = inner_->reset(seed);
    rng_ = Rng(r.info.seed, "stochastic_actions");
    return r;
  }

  StepOutcome step(int action) override {
    const int n = inner_->action_space().n();
    if (action < 0 || action >= n) {
      throw Error(ErrorCode::ActionOutOfRange, "action " + std::to_string(action) + " out of range");
    }
    int executed = action;
    if (rng_.bernoulli(epsilon_)) executed = static_cast<int>(rng_.below(static_cast<std::uint64_t>(n)));
    StepOutcome s = inner_->step(executed);
    s.info.executed_action = executed;
    return s;
  }

 private:
  double epsilon_;
  Rng rng_;
};

class FullyObservable final : public ObservationWrapper {
 public:
  explicit FullyObservable(EnvPtr inner) : ObservationWrapper(std::move(inner)) {
    if (!inner_->grid_world()) throw Error(ErrorCode::NotAGridEnv, inner_->id() + " is not a grid env");
  }

  ObservationSpec observation_spec() const override {
    ObservationSpec spec = inner_->observation_spec();
    const grid::GridWorld* w = inner_->grid_world();
    spec.height = w->grid.height();
    spec.width = w->grid.width();
    spec.max_value = static_cast<int>(grid::Kind::Agent);
    return spec;
  }

 protected:
  ObservationRecord transform(ObservationRecord obs) const override {
    obs.image = grid::encode_full_observation(*inner_->grid_world());
    return obs;
  }
};

class NavigationActions final : public Wrapper {
 public:
  using Wrapper::Wrapper;

  const DiscreteActionSpace& action_space() const override {
    static const DiscreteActionSpace space{{"turn left", "turn right", "go forward"}};
    return space;
  }

  StepOutcome step(int action) override {
    if (action < 0 || action >= action_space().n()) {
      throw Error(ErrorCode::ActionOutOfRange, "action " + std::to_string(action) + " out of range");
    }
    return inner_->step(action);
  }
};

}  // namespace

EnvPtr image_only(EnvPtr env) { return std::make_unique<ImageOnly>(std::move(env)); }

EnvPtr one_hot_mission(EnvPtr env) { return std::make_unique<OneHotMission>(std::move(env)); }

EnvPtr stochastic_actions(EnvPtr env, double epsilon) {
  return std::make_unique<StochasticActions>(std::move(env), epsilon);
}

EnvPtr fully_observable(EnvPtr env) { return std::make_unique<FullyObservable>(std::move(env)); }

EnvPtr resize_observation(EnvPtr env, int width, int height) {
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidDims, "observation dimensions must be at least 1x1");
  if (!env->world3d()) throw Error(ErrorCode::NotAWorld3DEnv, env->id() + " has no first-person camera");
  world3d::Camera cam;
  cam.obs_width = width;
  cam.obs_height = height;
  env->set_camera(cam);
  return env;
}

EnvPtr navigation_actions(EnvPtr env) { return std::make_unique<NavigationActions>(std::move(env)); }

}  // namespace unienv::wrappers
