#pragma once

#include <memory>
#include <string>

#include "unienv/service/session_manager.hpp"

namespace unienv::service {

/// WebSocket + HTTP front end on one port.
///   ws://host:port/ws  newline-delimited JSON protocol messages
///   GET /envs          env catalog
///   GET /logs/{id}     session log (.epjsonl)
///   GET /healthz       "ok"
class Server {
 public:
  /// Binds immediately; port 0 picks an ephemeral port. Throws BindFailure.
  Server(SessionManager& manager, unsigned short port, const std::string& address = "127.0.0.1");
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  unsigned short port() const;

  /// Serves on a background thread until stop().
  void start();
  void stop();

  /// Blocks until SIGINT/SIGTERM, then stops and closes all logs.
  void run_until_signal();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace unienv::service
