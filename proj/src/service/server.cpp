#include "unienv/service/server.hpp"

#include <sys/socket.h>

#include <atomic>
#include <chrono>
#include <list>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "unienv/error.hpp"

namespace unienv::service {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

constexpr const char* kLogsPrefix = "/logs/";

http::response<http::string_body> respond(const http::request<http::string_body>& req, http::status status,
                                          std::string body, const char* content_type) {
  http::response<http::string_body> res{status, req.version()};
  res.set(http::field::server, "unienv");
  res.set(http::field::content_type, content_type);
  res.set(http::field::access_control_allow_origin, "*");
  res.keep_alive(req.keep_alive());
  res.body() = std::move(body);
  res.prepare_payload();
  return res;
}

}  // namespace

struct Server::Impl {
  SessionManager& manager;
  asio::io_context io;
  tcp::acceptor acceptor;
  std::thread accept_thread;
  std::atomic<bool> running{false};

  struct Connection {
    int fd = -1;
    std::thread thread;
    std::atomic<bool> done{false};
  };
  std::mutex conn_mu;
  std::list<Connection> connections;

  Impl(SessionManager& m, unsigned short port, const std::string& address) : manager(m), acceptor(io) {
    beast::error_code ec;
    const tcp::endpoint ep(asio::ip::make_address(address, ec), port);
    if (ec) throw Error(ErrorCode::BindFailure, "bad address " + address + ": " + ec.message());
    acceptor.open(ep.protocol(), ec);
    if (!ec) acceptor.set_option(asio::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(ep, ec);
    if (!ec) acceptor.listen(asio::socket_base::max_listen_connections, ec);
    if (ec) throw Error(ErrorCode::BindFailure, "cannot listen on " + address + ":" + std::to_string(port) + ": " +
                                                    ec.message());
  }

  void accept_loop() {
    while (running) {
      tcp::socket socket(io);
      beast::error_code ec;
      acceptor.accept(socket, ec);
      if (!running) break;
      if (ec) continue;
      manager.evict_idle();
      std::lock_guard lk(conn_mu);
      reap();
      auto& c = connections.emplace_back();
      c.fd = socket.native_handle();
      c.thread = std::thread([this, &c, s = std::move(socket)]() mutable {
        serve(std::move(s));
        c.done = true;
      });
    }
  }

  /// Joins finished connection threads. Caller holds conn_mu.
  void reap() {
    for (auto it = connections.begin(); it != connections.end();) {
      if (it->done) {
        it->thread.join();
        it = connections.erase(it);
      } else {
        ++it;
      }
    }
  }

  void serve(tcp::socket socket) {
    beast::error_code ec;
    beast::flat_buffer buffer;
    for (;;) {
      http::request<http::string_body> req;
      http::read(socket, buffer, req, ec);
      if (ec) return;
      if (websocket::is_upgrade(req)) {
        if (req.target() != "/ws") {
          http::write(socket, respond(req, http::status::not_found, "not found\n", "text/plain"), ec);
          return;
        }
        websocket::stream<tcp::socket> ws(std::move(socket));
        ws.accept(req, ec);
        if (!ec) serve_ws(ws);
        return;
      }
      auto res = handle_http(req);
      http::write(socket, res, ec);
      if (ec || !res.keep_alive()) break;
    }
    socket.shutdown(tcp::socket::shutdown_send, ec);
  }

  void serve_ws(websocket::stream<tcp::socket>& ws) {
    beast::error_code ec;
    for (;;) {
      beast::flat_buffer buffer;
      ws.read(buffer, ec);
      if (ec) return;
      std::istringstream lines(beast::buffers_to_string(buffer.data()));
      std::string line, out;
      while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json reply;
        try {
          reply = manager.handle(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
          reply = error_message(ErrorCode::MalformedInput, e.what());
        }
        out += reply.dump() + "\n";
      }
      if (out.empty()) continue;
      ws.text(true);
      ws.write(asio::buffer(out), ec);
      if (ec) return;
    }
  }

  http::response<http::string_body> handle_http(const http::request<http::string_body>& req) {
    if (req.method() != http::verb::get) {
      return respond(req, http::status::method_not_allowed, "method not allowed\n", "text/plain");
    }
    const std::string target(req.target());
    if (target == "/healthz") return respond(req, http::status::ok, "ok", "text/plain");
    if (target == "/envs") return respond(req, http::status::ok, SessionManager::catalog().dump(), "application/json");
    if (target.rfind(kLogsPrefix, 0) == 0) {
      const std::string id = target.substr(std::char_traits<char>::length(kLogsPrefix));
      if (auto text = manager.completed_log(id)) {
        return respond(req, http::status::ok, std::move(*text), "application/x-ndjson");
      }
      return respond(req, http::status::not_found, "no completed log for session\n", "text/plain");
    }
    return respond(req, http::status::not_found, "not found\n", "text/plain");
  }

  void stop() {
    if (!running.exchange(false)) return;
    ::shutdown(acceptor.native_handle(), SHUT_RDWR);
    if (accept_thread.joinable()) accept_thread.join();
    beast::error_code ec;
    acceptor.close(ec);
    std::lock_guard lk(conn_mu);
    for (auto& c : connections) {
      if (!c.done) ::shutdown(c.fd, SHUT_RDWR);
    }
    for (auto& c : connections) c.thread.join();
    connections.clear();
  }
};

Server::Server(SessionManager& manager, unsigned short port, const std::string& address)
    : impl_(std::make_unique<Impl>(manager, port, address)) {}

Server::~Server() { stop(); }

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::start() {
  if (impl_->running.exchange(true)) return;
  impl_->accept_thread = std::thread([this] { impl_->accept_loop(); });
}

void Server::stop() { impl_->stop(); }

void Server::run_until_signal() {
  start();
  asio::io_context signals_io;
  asio::signal_set signals(signals_io, SIGINT, SIGTERM);
  asio::steady_timer sweep(signals_io);
  std::function<void()> arm = [&] {
    sweep.expires_after(std::chrono::minutes(1));
    sweep.async_wait([&](const beast::error_code& ec) {
      if (ec) return;
      impl_->manager.evict_idle();
      arm();
    });
  };
  arm();
  signals.async_wait([&](const beast::error_code&, int) {
    sweep.cancel();
    signals_io.stop();
  });
  signals_io.run();
  stop();
  impl_->manager.close_all();
}

}  // namespace unienv::service
