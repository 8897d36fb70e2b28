#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "unienv/env.hpp"
#include "unienv/error.hpp"
#include "unienv/metrics/episode_log.hpp"
#include "unienv/service/keys.hpp"

namespace unienv::service {

inline constexpr int kProtocolVersion = 1;

struct ServiceConfig {
  unsigned short port = 8765;
  std::size_t capacity = 64;
  std::filesystem::path log_dir = "logs";
  std::chrono::seconds idle_timeout{30 * 60};
};

/// Reads PORT and LOG_DIR over the defaults.
ServiceConfig config_from_environment(ServiceConfig base = {});

/// Transport-independent protocol engine. Each request is one JSON object
/// with a "type" field; the reply is a single JSON object. Requests for one
/// session are serialized by that session's mutex; different sessions run
/// concurrently.
class SessionManager {
 public:
  using Clock = std::chrono::steady_clock;

  explicit SessionManager(ServiceConfig config);
  ~SessionManager();

  nlohmann::json handle(const nlohmann::json& request);

  /// Catalog served at GET /envs.
  static nlohmann::json catalog();

  /// Contents of the session's log once it has a completed episode.
  std::optional<std::string> completed_log(const std::string& session_id) const;

  /// Drops sessions idle longer than the configured timeout.
  std::size_t evict_idle(Clock::time_point now = Clock::now());

  /// Flushes and closes every open log (shutdown path).
  void close_all();

  std::size_t session_count() const;
  const ServiceConfig& config() const { return config_; }

  // Server-side introspection for tests and tooling; not reachable through
  // the protocol.
  std::optional<KeyMapping> key_mapping(const std::string& session_id) const;
  std::optional<std::filesystem::path> log_path(const std::string& session_id) const;
  /// Runs `fn` on the session's env under its lock.
  void with_env(const std::string& session_id, const std::function<void(const Env&)>& fn) const;

 private:
  struct Session;

  nlohmann::json hello(const nlohmann::json& req);
  nlohmann::json make(const nlohmann::json& req);
  nlohmann::json step(const nlohmann::json& req);
  nlohmann::json reset(const nlohmann::json& req);
  nlohmann::json bye(const nlohmann::json& req);

  std::shared_ptr<Session> find(const nlohmann::json& req) const;
  std::shared_ptr<Session> find_id(const std::string& id) const;
  std::string new_session_id();
  void retire(const std::string& id, Session& session);

  ServiceConfig config_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  /// Logs of sessions that said bye or were evicted.
  std::map<std::string, std::filesystem::path> archived_logs_;
  std::uint64_t id_counter_ = 0;
  std::uint64_t id_salt_;
};

nlohmann::json error_message(ErrorCode code, const std::string& message);

}  // namespace unienv::service
