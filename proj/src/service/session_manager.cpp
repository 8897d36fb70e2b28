#include "unienv/service/session_manager.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "unienv/error.hpp"
#include "unienv/registry.hpp"
#include "unienv/wrappers.hpp"

namespace unienv::service {

using nlohmann::json;

struct SessionManager::Session {
  std::mutex mu;
  std::string id;
  EnvPtr env;
  bool study = false;
  bool grid = false;
  Rng seeds;
  std::optional<KeyMapping> mapping;
  std::unique_ptr<metrics::LogWriter> log;
  int episode_index = 0;
  std::string mission;
  Clock::time_point last_active = Clock::now();
};

namespace {

json spec_json(const ObservationSpec& s) {
  const char* mission = s.mission == MissionField::Text ? "text" : s.mission == MissionField::OneHot ? "one_hot" : "none";
  return json{{"height", s.height},   {"width", s.width},
              {"channels", s.channels}, {"max_value", s.max_value},
              {"has_direction", s.has_direction}, {"mission", mission}};
}

std::string png64(const Image& img) { return base64_encode(encode_png(img)); }

const std::string& field_string(const json& req, const char* key) {
  if (!req.contains(key) || !req[key].is_string()) {
    throw Error(ErrorCode::MalformedInput, std::string("\"") + key + "\" must be a string");
  }
  return req[key].get_ref<const std::string&>();
}

std::optional<std::uint64_t> field_seed(const json& req) {
  if (!req.contains("seed") || req["seed"].is_null()) return std::nullopt;
  const json& v = req["seed"];
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) throw Error(ErrorCode::MalformedInput, "\"seed\" must be a non-negative integer");
  return req["seed"].get<std::uint64_t>();
}

bool field_bool(const json& req, const char* key) {
  if (!req.contains(key) || req[key].is_null()) return false;
  if (!req[key].is_boolean()) throw Error(ErrorCode::MalformedInput, std::string("\"") + key + "\" must be a boolean");
  return req[key].get<bool>();
}

int field_int(const json& req, const char* key) {
  if (!req[key].is_number_integer()) {
    throw Error(ErrorCode::MalformedInput, std::string("\"") + key + "\" must be an integer");
  }
  return req[key].get<int>();
}

}  // namespace

json error_message(ErrorCode code, const std::string& message) {
  return json{{"type", "error"}, {"code", std::string(to_string(code))}, {"message", message}};
}

ServiceConfig config_from_environment(ServiceConfig base) {
  if (const char* port = std::getenv("PORT"); port && *port) {
    char* end = nullptr;
    const long v = std::strtol(port, &end, 10);
    if (*end != '\0' || v < 0 || v > 65535) throw Error(ErrorCode::MalformedInput, "PORT must be 0-65535");
    base.port = static_cast<unsigned short>(v);
  }
  if (const char* dir = std::getenv("LOG_DIR"); dir && *dir) base.log_dir = dir;
  return base;
}

SessionManager::SessionManager(ServiceConfig config) : config_(std::move(config)), id_salt_(entropy_seed()) {}

SessionManager::~SessionManager() { close_all(); }

json SessionManager::catalog() {
  static const json cat = [] {
    json envs = json::array();
    for (const EnvSummary& s : list_envs()) {
      envs.push_back({{"env_id", s.env_id},
                      {"kind", s.grid ? "grid" : "world3d"},
                      {"action_names", s.actions.names},
                      {"n_actions", s.actions.n()},
                      {"observation", spec_json(s.observation)},
                      {"max_steps", s.max_steps}});
    }
    return json{{"protocol_version", kProtocolVersion}, {"envs", envs}};
  }();
  return cat;
}

json SessionManager::handle(const json& request) {
  try {
    if (!request.is_object()) throw Error(ErrorCode::MalformedInput, "message must be a JSON object");
    const std::string& type = field_string(request, "type");
    if (type == "hello") return hello(request);
    if (type == "make") return make(request);
    if (type == "step") return step(request);
    if (type == "reset") return reset(request);
    if (type == "bye") return bye(request);
    throw Error(ErrorCode::MalformedInput, "unknown message type \"" + type + "\"");
  } catch (const Error& e) {
    return error_message(e.code(), e.what());
  } catch (const json::exception& e) {
    return error_message(ErrorCode::MalformedInput, e.what());
  }
}

json SessionManager::hello(const json& req) {
  if (req.contains("protocol_version") && field_int(req, "protocol_version") != kProtocolVersion) {
    throw Error(ErrorCode::MalformedInput, "unsupported protocol version");
  }
  return json{{"type", "hello"}, {"protocol_version", kProtocolVersion}, {"server", "unienv"}};
}

std::string SessionManager::new_session_id() {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(mix64(id_salt_ ^ mix64(++id_counter_))));
  return buf;
}

namespace {

json frames(const Env& env, bool study, bool grid) {
  json f{{"agent_view", png64(env.render(RenderMode::AgentView))}};
  if (grid && !study) f["topdown"] = png64(env.render(RenderMode::TopDown));
  return f;
}

}  // namespace

json SessionManager::make(const json& req) {
  const std::string& env_id = field_string(req, "env_id");
  const bool study = field_bool(req, "study_mode");
  const bool record = study || field_bool(req, "record");
  const std::optional<std::uint64_t> seed = field_seed(req);
  if (!is_registered(env_id)) throw Error(ErrorCode::UnknownEnvId, "no env registered as \"" + env_id + "\"");

  std::optional<KeyMapping> carried;
  if (req.contains("carry_mapping_from") && !req["carry_mapping_from"].is_null()) {
    const std::string& from = field_string(req, "carry_mapping_from");
    auto src = find_id(from);
    if (!src) throw Error(ErrorCode::UnknownSession, "no session \"" + from + "\"");
    std::lock_guard lk(src->mu);
    carried = src->mapping;
  }

  auto s = std::make_shared<Session>();
  s->study = study;
  EnvPtr env = make_env(env_id);
  s->grid = env->grid_world() != nullptr;
  s->env = study ? wrappers::navigation_actions(std::move(env)) : std::move(env);
  const std::uint64_t session_seed = seed ? *seed : entropy_seed();
  s->seeds = Rng(session_seed, "session");
  if (study) {
    if (carried && carried->n_actions == s->env->action_space().n()) {
      s->mapping = carried;
    } else {
      Rng key_rng(session_seed, "keys");
      s->mapping = assign_keys(key_rng, s->env->action_space().n());
    }
  }

  {
    std::lock_guard lk(mu_);
    if (sessions_.size() >= config_.capacity) {
      throw Error(ErrorCode::CapacityExceeded, "session capacity of " + std::to_string(config_.capacity) + " reached");
    }
    s->id = new_session_id();
    sessions_[s->id] = s;
  }

  std::lock_guard lk(s->mu);
  const ResetResult r = s->env->reset(session_seed);
  s->mission = r.observation.mission.value_or("");
  if (record) {
    metrics::LogHeader h;
    h.env_id = env_id;
    h.seed = session_seed;
    if (s->mapping) h.key_mapping = s->mapping->entries;
    h.action_names = s->env->action_space().names;
    h.started_at = metrics::utc_timestamp();
    s->log = std::make_unique<metrics::LogWriter>(config_.log_dir / (s->id + metrics::kLogExtension), h);
    s->log->begin_episode(session_seed, s->env->agent_pose());
  }

  json resp{{"type", "made"},
            {"session_id", s->id},
            {"env_id", env_id},
            {"study_mode", study},
            {"episode_index", 0},
            {"mission", s->mission},
            {"observation", spec_json(s->env->observation_spec())},
            {"max_steps", s->env->max_steps()},
            {"frames", frames(*s->env, study, s->grid)}};
  if (study) {
    resp["mapping_size"] = s->mapping->n_actions;
  } else {
    resp["action_names"] = s->env->action_space().names;
    resp["n_actions"] = s->env->action_space().n();
  }
  return resp;
}

std::shared_ptr<SessionManager::Session> SessionManager::find_id(const std::string& id) const {
  std::lock_guard lk(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const json& req) const {
  const std::string& id = field_string(req, "session_id");
  auto s = find_id(id);
  if (!s) throw Error(ErrorCode::UnknownSession, "no session \"" + id + "\"");
  return s;
}

json SessionManager::step(const json& req) {
  auto s = find(req);
  std::lock_guard lk(s->mu);
  s->last_active = Clock::now();
  if (!s->env) throw Error(ErrorCode::UnknownSession, "session closed");

  std::optional<int> key;
  std::optional<int> action;
  if (s->study) {
    if (!req.contains("key")) throw Error(ErrorCode::MalformedInput, "study sessions take a \"key\" digit");
    key = field_int(req, "key");
    if (*key < 0 || *key > 9) throw Error(ErrorCode::MalformedInput, "\"key\" must be a digit 0-9");
    action = s->mapping->action_for(*key);
  } else {
    if (!req.contains("action")) throw Error(ErrorCode::MalformedInput, "\"action\" is required");
    action = field_int(req, "action");
  }

  json resp{{"type", "stepped"}, {"session_id", s->id}};
  if (!action) {
    if (s->log) s->log->record_noop_key(*key, s->env->agent_pose());
    resp.update({{"reward", 0.0},
                 {"terminated", false},
                 {"truncated", false},
                 {"episode_index", s->episode_index},
                 {"mission", s->mission},
                 {"frames", frames(*s->env, s->study, s->grid)}});
    return resp;
  }

  const StepOutcome out = s->env->step(*action);
  const int executed = out.info.executed_action.value_or(*action);
  if (s->log) s->log->record_step(out, s->env->agent_pose(), executed, key);
  resp.update({{"reward", out.reward},
               {"terminated", out.terminated},
               {"truncated", out.truncated},
               {"step_count", out.info.step_count}});
  if (out.terminated || out.truncated) {
    const std::uint64_t seed = s->seeds.next_u64();
    const ResetResult r = s->env->reset(seed);
    s->mission = r.observation.mission.value_or("");
    ++s->episode_index;
    if (s->log) s->log->begin_episode(seed, s->env->agent_pose());
  }
  resp.update({{"episode_index", s->episode_index},
               {"mission", s->mission},
               {"frames", frames(*s->env, s->study, s->grid)}});
  return resp;
}

json SessionManager::reset(const json& req) {
  auto s = find(req);
  std::lock_guard lk(s->mu);
  s->last_active = Clock::now();
  if (s->study) throw Error(ErrorCode::ForbiddenInStudyMode, "study sessions reset automatically");
  const std::uint64_t seed = field_seed(req).value_or(s->seeds.next_u64());
  const ResetResult r = s->env->reset(seed);
  s->mission = r.observation.mission.value_or("");
  ++s->episode_index;
  if (s->log) s->log->begin_episode(seed, s->env->agent_pose());
  return json{{"type", "observation"},
              {"session_id", s->id},
              {"episode_index", s->episode_index},
              {"mission", s->mission},
              {"frames", frames(*s->env, s->study, s->grid)}};
}

void SessionManager::retire(const std::string& id, Session& session) {
  if (session.log) {
    session.log->close();
    std::lock_guard lk(mu_);
    archived_logs_[id] = session.log->path();
  }
}

json SessionManager::bye(const json& req) {
  auto s = find(req);
  {
    std::lock_guard lk(mu_);
    sessions_.erase(s->id);
  }
  std::lock_guard lk(s->mu);
  const int completed = s->log ? static_cast<int>(s->log->log().completed_episodes()) : s->episode_index;
  retire(s->id, *s);
  return json{{"type", "bye"}, {"session_id", s->id}, {"episodes_completed", completed}};
}

std::optional<std::string> SessionManager::completed_log(const std::string& session_id) const {
  std::optional<std::filesystem::path> path;
  if (auto s = find_id(session_id)) {
    std::lock_guard lk(s->mu);
    if (!s->log || s->log->log().completed_episodes() == 0) return std::nullopt;
    path = s->log->path();
  } else {
    std::lock_guard lk(mu_);
    auto it = archived_logs_.find(session_id);
    if (it == archived_logs_.end()) return std::nullopt;
    path = it->second;
  }
  std::ifstream in(*path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (metrics::parse_log(text).completed_episodes() == 0) return std::nullopt;
  return text;
}

std::size_t SessionManager::evict_idle(Clock::time_point now) {
  std::vector<std::shared_ptr<Session>> idle;
  {
    std::lock_guard lk(mu_);
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      if (now - it->second->last_active > config_.idle_timeout) {
        idle.push_back(it->second);
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (auto& s : idle) {
    std::lock_guard lk(s->mu);
    retire(s->id, *s);
  }
  return idle.size();
}

void SessionManager::close_all() {
  std::vector<std::shared_ptr<Session>> all;
  {
    std::lock_guard lk(mu_);
    for (auto& [id, s] : sessions_) all.push_back(s);
  }
  for (auto& s : all) {
    std::lock_guard lk(s->mu);
    if (s->log && !s->log->closed()) retire(s->id, *s);
  }
}

std::size_t SessionManager::session_count() const {
  std::lock_guard lk(mu_);
  return sessions_.size();
}

std::optional<KeyMapping> SessionManager::key_mapping(const std::string& session_id) const {
  auto s = find_id(session_id);
  if (!s) return std::nullopt;
  std::lock_guard lk(s->mu);
  return s->mapping;
}

std::optional<std::filesystem::path> SessionManager::log_path(const std::string& session_id) const {
  if (auto s = find_id(session_id)) {
    std::lock_guard lk(s->mu);
    if (s->log) return s->log->path();
    return std::nullopt;
  }
  std::lock_guard lk(mu_);
  auto it = archived_logs_.find(session_id);
  if (it == archived_logs_.end()) return std::nullopt;
  return it->second;
}

void SessionManager::with_env(const std::string& session_id, const std::function<void(const Env&)>& fn) const {
  auto s = find_id(session_id);
  if (!s) throw Error(ErrorCode::UnknownSession, "no session \"" + session_id + "\"");
  std::lock_guard lk(s->mu);
  fn(*s->env);
}

}  // namespace unienv::service
