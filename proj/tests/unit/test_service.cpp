#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <thread>

#include "golden.hpp"
#include "oracles.hpp"
#include "unienv/grid/grid.hpp"
#include "unienv/metrics/episode_log.hpp"
#include "unienv/metrics/replay.hpp"
#include "unienv/registry.hpp"
#include "unienv/service/server.hpp"

using namespace unienv;
using namespace unienv::service;
using nlohmann::json;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("unienv_test_service_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

ServiceConfig config_in(const std::string& name, std::size_t capacity = 64) {
  ServiceConfig c;
  c.port = 0;
  c.capacity = capacity;
  c.log_dir = fresh_dir(name);
  return c;
}

/// Digit that the server maps to `action`, looked up server-side.
int digit_for(const KeyMapping& m, int action) {
  for (const auto& [digit, a] : m.entries) {
    if (a == action) return digit;
  }
  return -1;
}

/// Shortest turn/forward plan to the goal of the session's current grid
/// episode, as navigation action indices.
std::vector<int> grid_goal_plan(const SessionManager& mgr, const std::string& id) {
  std::optional<std::vector<int>> plan;
  mgr.with_env(id, [&](const Env& env) {
    const grid::GridWorld& w = *env.grid_world();
    plan = oracle::bfs_actions(w, [&](const grid::AgentState& a) {
      const auto& o = w.grid.get(a.pos.x, a.pos.y);
      return o && o->kind == grid::Kind::Goal;
    });
  });
  return plan.value_or(std::vector<int>{});
}

void expect_error_reply(const json& reply, ErrorCode code) {
  EXPECT_EQ(reply.value("type", ""), "error") << reply.dump();
  EXPECT_EQ(reply.value("code", ""), std::string(to_string(code))) << reply.dump();
  EXPECT_TRUE(reply.contains("message"));
}

std::string keys_of(const json& j) {
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (const auto& k : keys) out += (out.empty() ? "" : " ") + k;
  return out;
}

}  // namespace

TEST(Keys, DistinctDigitsInRange) {
  Rng rng(1, "keys");
  for (int n = 1; n <= 9; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const KeyMapping m = assign_keys(rng, n);
      ASSERT_EQ(m.n_actions, n);
      ASSERT_EQ(m.entries.size(), static_cast<std::size_t>(n));
      std::set<int> actions;
      for (const auto& [d, a] : m.entries) {
        ASSERT_GE(d, 1);
        ASSERT_LE(d, 9);
        actions.insert(a);
      }
      ASSERT_EQ(actions.size(), static_cast<std::size_t>(n));
      ASSERT_EQ(*actions.rbegin(), n - 1);
    }
  }
}

TEST(Keys, UniformOverDigits) {
  // Each (action, digit) cell should be hit with probability 1/9.
  Rng rng(2, "keys");
  const int draws = 100000;
  std::vector<std::vector<int>> counts(3, std::vector<int>(10, 0));
  for (int i = 0; i < draws; ++i) {
    const KeyMapping m = assign_keys(rng, 3);
    for (const auto& [d, a] : m.entries) ++counts[a][d];
  }
  const double p = 1.0 / 9.0;
  const double mean = draws * p, sigma = std::sqrt(draws * p * (1 - p));
  for (int a = 0; a < 3; ++a) {
    for (int d = 1; d <= 9; ++d) EXPECT_LT(std::abs(counts[a][d] - mean), 3 * sigma) << a << " " << d;
  }
}

TEST(Keys, TooManyActions) {
  Rng rng(3, "keys");
  for (int n : {0, 10, -1}) {
    try {
      assign_keys(rng, n);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::TooManyActions);
    }
  }
}

TEST(Manager, HelloAndErrors) {
  SessionManager mgr(config_in("errors"));
  const json hello = mgr.handle({{"type", "hello"}, {"protocol_version", 1}});
  EXPECT_EQ(hello["type"], "hello");
  EXPECT_EQ(hello["protocol_version"], 1);
  expect_error_reply(mgr.handle({{"type", "hello"}, {"protocol_version", 2}}), ErrorCode::MalformedInput);
  expect_error_reply(mgr.handle(json::array()), ErrorCode::MalformedInput);
  expect_error_reply(mgr.handle({{"type", "dance"}}), ErrorCode::MalformedInput);
  expect_error_reply(mgr.handle({{"kind", "make"}}), ErrorCode::MalformedInput);
  expect_error_reply(mgr.handle({{"type", "make"}, {"env_id", "Nope"}}), ErrorCode::UnknownEnvId);
  expect_error_reply(mgr.handle({{"type", "make"}, {"env_id", "Grid-Empty-8x8"}, {"seed", -4}}),
                     ErrorCode::MalformedInput);
  expect_error_reply(mgr.handle({{"type", "step"}, {"session_id", "abc"}, {"action", 0}}), ErrorCode::UnknownSession);
  expect_error_reply(mgr.handle({{"type", "bye"}, {"session_id", "abc"}}), ErrorCode::UnknownSession);

  const json made = mgr.handle({{"type", "make"}, {"env_id", "Grid-Empty-8x8"}, {"seed", 1}});
  const std::string id = made["session_id"];
  expect_error_reply(mgr.handle({{"type", "step"}, {"session_id", id}, {"action", 7}}), ErrorCode::ActionOutOfRange);
  expect_error_reply(mgr.handle({{"type", "step"}, {"session_id", id}, {"action", "left"}}),
                     ErrorCode::MalformedInput);
  expect_error_reply(mgr.handle({{"type", "step"}, {"session_id", id}}), ErrorCode::MalformedInput);
}

TEST(Manager, NonStudySession) {
  SessionManager mgr(config_in("nonstudy"));
  const json made = mgr.handle({{"type", "make"}, {"env_id", "Grid-FourRooms"}, {"seed", 5}});
  ASSERT_EQ(made["type"], "made") << made.dump();
  EXPECT_EQ(made["n_actions"], 7);
  EXPECT_EQ(made["action_names"][2], "move forward");
  EXPECT_EQ(made["observation"]["height"], 7);
  EXPECT_EQ(made["max_steps"], 100);
  EXPECT_TRUE(made["frames"].contains("topdown"));
  EXPECT_FALSE(made.contains("mapping_size"));
  const std::string id = made["session_id"];
  EXPECT_EQ(id.size(), 16u);
  EXPECT_FALSE(mgr.log_path(id));  // not recorded unless asked

  const json stepped = mgr.handle({{"type", "step"}, {"session_id", id}, {"action", 2}});
  EXPECT_EQ(stepped["type"], "stepped");
  EXPECT_EQ(stepped["step_count"], 1);
  const json obs = mgr.handle({{"type", "reset"}, {"session_id", id}, {"seed", 9}});
  EXPECT_EQ(obs["type"], "observation");
  EXPECT_EQ(obs["episode_index"], 1);
  const json bye = mgr.handle({{"type", "bye"}, {"session_id", id}});
  EXPECT_EQ(bye["type"], "bye");
  EXPECT_EQ(mgr.session_count(), 0u);
}

TEST(Manager, SameSeedSameFrames) {
  SessionManager mgr(config_in("frames"));
  for (const auto& env_id : registered_env_ids()) {
    const json a = mgr.handle({{"type", "make"}, {"env_id", env_id}, {"seed", 42}});
    const json b = mgr.handle({{"type", "make"}, {"env_id", env_id}, {"seed", 42}});
    EXPECT_EQ(a["frames"], b["frames"]) << env_id;
    EXPECT_EQ(a["mission"], b["mission"]);
    for (int i = 0; i < 5; ++i) {
      const json sa = mgr.handle({{"type", "step"}, {"session_id", a["session_id"]}, {"action", i % 3}});
      const json sb = mgr.handle({{"type", "step"}, {"session_id", b["session_id"]}, {"action", i % 3}});
      EXPECT_EQ(sa["frames"], sb["frames"]);
    }
  }
}

TEST(Manager, StudySessionTenEpisodes) {
  SessionManager mgr(config_in("study"));
  const json made = mgr.handle({{"type", "make"}, {"env_id", "Grid-FourRooms"}, {"study_mode", true}, {"seed", 3}});
  ASSERT_EQ(made["type"], "made") << made.dump();
  const std::string id = made["session_id"];
  EXPECT_EQ(made["mapping_size"], 3);
  EXPECT_FALSE(made.contains("action_names"));
  EXPECT_FALSE(made["frames"].contains("topdown"));
  const KeyMapping mapping = *mgr.key_mapping(id);

  std::vector<json> replies{made};
  int episodes = 0;
  int noops = 0;
  while (episodes < 10) {
    const std::vector<int> plan = grid_goal_plan(mgr, id);
    ASSERT_FALSE(plan.empty());
    // An unmapped digit first: a logged no-op.
    int unmapped = 0;
    while (mapping.action_for(unmapped)) ++unmapped;
    replies.push_back(mgr.handle({{"type", "step"}, {"session_id", id}, {"key", unmapped}}));
    EXPECT_EQ(replies.back()["episode_index"], episodes);
    ++noops;
    for (int a : plan) {
      replies.push_back(mgr.handle({{"type", "step"}, {"session_id", id}, {"key", digit_for(mapping, a)}}));
      ASSERT_EQ(replies.back()["type"], "stepped") << replies.back().dump();
    }
    EXPECT_TRUE(replies.back()["terminated"]);
    EXPECT_GT(replies.back()["reward"].get<double>(), 0.0);
    ++episodes;
    EXPECT_EQ(replies.back()["episode_index"], episodes);
  }
  expect_error_reply(mgr.handle({{"type", "reset"}, {"session_id", id}}), ErrorCode::ForbiddenInStudyMode);
  expect_error_reply(mgr.handle({{"type", "step"}, {"session_id", id}, {"action", 1}}), ErrorCode::MalformedInput);
  expect_error_reply(mgr.handle({{"type", "step"}, {"session_id", id}, {"key", 12}}), ErrorCode::MalformedInput);

  // No mapping data and no action names anywhere in study traffic.
  std::vector<std::string> names = make_env("Grid-FourRooms")->action_space().names;
  names.insert(names.end(), {"turn left", "turn right", "go forward", "mapping", "key_mapping", "action_names"});
  for (const json& r : replies) {
    std::vector<std::string> strings;
    oracle::collect_strings(r, strings);
    for (const auto& s : strings) {
      for (const auto& n : names) ASSERT_NE(s, n) << r.dump().substr(0, 200);
    }
  }

  const json bye = mgr.handle({{"type", "bye"}, {"session_id", id}});
  EXPECT_EQ(bye["episodes_completed"], 10);
  const auto text = mgr.completed_log(id);
  ASSERT_TRUE(text);
  const metrics::EpisodeLog log = metrics::parse_log(*text);
  EXPECT_EQ(log.completed_episodes(), 10u);
  EXPECT_EQ(log.header.key_mapping, mapping.entries);
  int logged_noops = 0;
  for (const auto& seg : log.episodes) {
    for (const auto& s : seg.steps) logged_noops += !s.action;
  }
  EXPECT_EQ(logged_noops, noops);
  const auto rep = metrics::replay(log);
  EXPECT_TRUE(rep.ok) << rep.mismatch;
}

TEST(Manager, StudyOn3D) {
  SessionManager mgr(config_in("study3d"));
  const json made =
      mgr.handle({{"type", "make"}, {"env_id", "World3D-FourRooms"}, {"study_mode", true}, {"seed", 8}});
  const std::string id = made["session_id"];
  EXPECT_EQ(made["observation"]["width"], 80);
  for (int k = 0; k < 30; ++k) mgr.handle({{"type", "step"}, {"session_id", id}, {"key", k % 10}});
  mgr.handle({{"type", "bye"}, {"session_id", id}});
  const auto log = metrics::read_log(*mgr.log_path(id));
  EXPECT_TRUE(metrics::replay_verify(log));
  EXPECT_FALSE(mgr.completed_log(id));  // no episode finished
}

TEST(Manager, MappingCarriesAcrossEnvsWithSameActionCount) {
  SessionManager mgr(config_in("carry"));
  const json a = mgr.handle({{"type", "make"}, {"env_id", "Grid-FourRooms"}, {"study_mode", true}, {"seed", 1}});
  const json b = mgr.handle({{"type", "make"},
                             {"env_id", "World3D-FourRooms"},
                             {"study_mode", true},
                             {"seed", 2},
                             {"carry_mapping_from", a["session_id"]}});
  EXPECT_EQ(mgr.key_mapping(a["session_id"])->entries, mgr.key_mapping(b["session_id"])->entries);
  const json c = mgr.handle({{"type", "make"}, {"env_id", "World3D-FourRooms"}, {"study_mode", true}, {"seed", 2}});
  Rng keys(2, "keys");
  EXPECT_EQ(mgr.key_mapping(c["session_id"])->entries, assign_keys(keys, 3).entries);
  expect_error_reply(mgr.handle({{"type", "make"},
                                 {"env_id", "Grid-FourRooms"},
                                 {"study_mode", true},
                                 {"carry_mapping_from", "0000000000000000"}}),
                     ErrorCode::UnknownSession);
}

TEST(Manager, Capacity) {
  SessionManager mgr(config_in("capacity", 2));
  const json a = mgr.handle({{"type", "make"}, {"env_id", "Grid-Empty-8x8"}});
  mgr.handle({{"type", "make"}, {"env_id", "Grid-Empty-8x8"}});
  expect_error_reply(mgr.handle({{"type", "make"}, {"env_id", "Grid-Empty-8x8"}}), ErrorCode::CapacityExceeded);
  mgr.handle({{"type", "bye"}, {"session_id", a["session_id"]}});
  EXPECT_EQ(mgr.handle({{"type", "make"}, {"env_id", "Grid-Empty-8x8"}})["type"], "made");
}

TEST(Manager, IdleEviction) {
  ServiceConfig cfg = config_in("evict");
  cfg.idle_timeout = std::chrono::seconds(10);
  SessionManager mgr(cfg);
  const json a = mgr.handle({{"type", "make"}, {"env_id", "Grid-Empty-8x8"}, {"record", true}});
  EXPECT_EQ(mgr.evict_idle(), 0u);
  EXPECT_EQ(mgr.evict_idle(SessionManager::Clock::now() + std::chrono::seconds(11)), 1u);
  EXPECT_EQ(mgr.session_count(), 0u);
  EXPECT_TRUE(mgr.log_path(a["session_id"]));
  expect_error_reply(mgr.handle({{"type", "step"}, {"session_id", a["session_id"]}, {"action", 0}}),
                     ErrorCode::UnknownSession);
}

TEST(Manager, CloseAllFlushesLogs) {
  SessionManager mgr(config_in("closeall"));
  const json a = mgr.handle({{"type", "make"}, {"env_id", "Grid-Empty-8x8"}, {"record", true}, {"seed", 4}});
  for (int i = 0; i < 12; ++i) mgr.handle({{"type", "step"}, {"session_id", a["session_id"]}, {"action", i % 3}});
  mgr.close_all();
  const auto log = metrics::read_log(*mgr.log_path(a["session_id"]));
  std::size_t steps = 0;
  for (const auto& seg : log.episodes) steps += seg.steps.size();
  EXPECT_EQ(steps, 12u);
  EXPECT_TRUE(metrics::replay_verify(log));
}

TEST(Manager, Catalog) {
  const json cat = SessionManager::catalog();
  EXPECT_EQ(cat["protocol_version"], 1);
  ASSERT_EQ(cat["envs"].size(), registered_env_ids().size());
  for (const json& e : cat["envs"]) {
    EXPECT_TRUE(is_registered(e["env_id"]));
    EXPECT_EQ(e["n_actions"], e["action_names"].size());
  }
}

TEST(Manager, ConfigFromEnvironment) {
  ::setenv("PORT", "9123", 1);
  ::setenv("LOG_DIR", "/tmp/x", 1);
  const ServiceConfig c = config_from_environment();
  EXPECT_EQ(c.port, 9123);
  EXPECT_EQ(c.log_dir, "/tmp/x");
  ::setenv("PORT", "notaport", 1);
  EXPECT_THROW(config_from_environment(), Error);
  ::unsetenv("PORT");
  ::unsetenv("LOG_DIR");
  EXPECT_EQ(config_from_environment().port, 8765);
}

TEST(Protocol, SchemaGolden) {
  SessionManager mgr(config_in("schema"));
  std::string out;
  auto line = [&](const std::string& label, const json& j) {
    out += label + ": " + keys_of(j) + "\n";
    if (j.contains("frames")) out += label + ".frames: " + keys_of(j["frames"]) + "\n";
    if (j.contains("observation")) out += label + ".observation: " + keys_of(j["observation"]) + "\n";
  };
  line("hello", mgr.handle({{"type", "hello"}}));
  const json made = mgr.handle({{"type", "make"}, {"env_id", "Grid-GoToObj-8x8"}, {"seed", 1}});
  line("made", made);
  line("stepped", mgr.handle({{"type", "step"}, {"session_id", made["session_id"]}, {"action", 0}}));
  line("observation", mgr.handle({{"type", "reset"}, {"session_id", made["session_id"]}}));
  const json study = mgr.handle({{"type", "make"}, {"env_id", "World3D-GoToObj"}, {"study_mode", true}, {"seed", 1}});
  line("made.study", study);
  line("stepped.study", mgr.handle({{"type", "step"}, {"session_id", study["session_id"]}, {"key", 0}}));
  line("bye", mgr.handle({{"type", "bye"}, {"session_id", made["session_id"]}}));
  line("error", mgr.handle({{"type", "nope"}}));
  line("catalog", SessionManager::catalog());
  line("catalog.envs[]", SessionManager::catalog()["envs"][0]);
  if (golden::updating()) golden::write("protocol_schema.txt", out);
  EXPECT_EQ(out, golden::read("protocol_schema.txt"));
}

TEST(Protocol, FramesArePng) {
  SessionManager mgr(config_in("png"));
  const json made = mgr.handle({{"type", "make"}, {"env_id", "World3D-GoToObj"}, {"seed", 1}});
  const std::string b64 = made["frames"]["agent_view"];
  EXPECT_EQ(b64.substr(0, 8), "iVBORw0K");  // base64 of the PNG signature
}

TEST(Server, WebSocketAndHttp) {
  SessionManager mgr(config_in("server"));
  Server server(mgr, 0);
  server.start();
  ASSERT_GT(server.port(), 0);

  {
    oracle::WsClient ws("127.0.0.1", server.port());
    EXPECT_EQ(ws.request({{"type", "hello"}})["type"], "hello");
    const json made = ws.request({{"type", "make"}, {"env_id", "Grid-Empty-8x8"}, {"seed", 2}, {"record", true}});
    ASSERT_EQ(made["type"], "made");
    const std::string id = made["session_id"];

    const std::string two = ws.raw(json{{"type", "hello"}}.dump() + "\n" +
                                   json{{"type", "step"}, {"session_id", id}, {"action", 1}}.dump() + "\n");
    std::istringstream lines(two);
    std::string l1, l2;
    std::getline(lines, l1);
    std::getline(lines, l2);
    EXPECT_EQ(json::parse(l1)["type"], "hello");
    EXPECT_EQ(json::parse(l2)["type"], "stepped");
    expect_error_reply(json::parse(ws.raw("{broken")), ErrorCode::MalformedInput);

    EXPECT_EQ(oracle::http_get("127.0.0.1", server.port(), "/logs/" + id).first, 404);
    // Drive to the goal with the BFS planner.
    for (int a : grid_goal_plan(mgr, id)) ws.request({{"type", "step"}, {"session_id", id}, {"action", a}});
    const auto [status, body] = oracle::http_get("127.0.0.1", server.port(), "/logs/" + id);
    EXPECT_EQ(status, 200);
    EXPECT_TRUE(metrics::replay_verify(metrics::parse_log(body)));
    EXPECT_EQ(ws.request({{"type", "bye"}, {"session_id", id}})["type"], "bye");
  }

  EXPECT_EQ(oracle::http_get("127.0.0.1", server.port(), "/healthz"), std::make_pair(200, std::string("ok")));
  const auto envs = oracle::http_get("127.0.0.1", server.port(), "/envs");
  EXPECT_EQ(envs.first, 200);
  EXPECT_EQ(json::parse(envs.second), SessionManager::catalog());
  EXPECT_EQ(oracle::http_get("127.0.0.1", server.port(), "/nope").first, 404);
  server.stop();
  server.stop();
}

TEST(Server, ConcurrentClients) {
  SessionManager mgr(config_in("concurrent"));
  Server server(mgr, 0);
  server.start();
  std::vector<std::thread> threads;
  std::vector<json> finals(4);
  for (int c = 0; c < 4; ++c) {
    threads.emplace_back([&, c] {
      oracle::WsClient ws("127.0.0.1", server.port());
      const json made = ws.request({{"type", "make"}, {"env_id", "World3D-GoToObj"}, {"seed", 7}});
      for (int i = 0; i < 20; ++i) {
        finals[c] = ws.request({{"type", "step"}, {"session_id", made["session_id"]}, {"action", (i * 7) % 3}});
      }
    });
  }
  for (auto& t : threads) t.join();
  for (int c = 1; c < 4; ++c) EXPECT_EQ(finals[c]["frames"], finals[0]["frames"]);
  EXPECT_EQ(mgr.session_count(), 4u);
  server.stop();
}

TEST(Server, BindFailure) {
  SessionManager mgr(config_in("bind"));
  Server first(mgr, 0);
  try {
    Server second(mgr, first.port());
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BindFailure);
  }
}
