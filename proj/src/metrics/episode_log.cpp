#include "unienv/metrics/episode_log.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include <json.hpp>

#include "unienv/error.hpp"

namespace unienv::metrics {

using json = nlohmann::ordered_json;

namespace {

json pose_json(const AgentPoseRecord& pose) {
  if (const auto* c = std::get_if<CellPose>(&pose)) return json{{"x", c->x}, {"y", c->y}, {"dir", c->dir}};
  const auto& p = std::get<PlanePose>(pose);
  return json{{"x", p.x}, {"z", p.z}, {"yaw", p.yaw}};
}

AgentPoseRecord pose_from(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedLog, "pose must be an object");
  if (j.contains("dir")) return CellPose{j.at("x").get<int>(), j.at("y").get<int>(), j.at("dir").get<int>()};
  return PlanePose{j.at("x").get<double>(), j.at("z").get<double>(), j.at("yaw").get<double>()};
}

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

EpisodeSegment& open_segment(EpisodeLog& log) {
  if (log.episodes.empty() || log.episodes.back().ended()) {
    throw Error(ErrorCode::LogClosed, "no open episode to record into");
  }
  return log.episodes.back();
}

int last_t(const EpisodeSegment& seg) { return seg.steps.empty() ? 0 : seg.steps.back().t; }

}  // namespace

std::size_t EpisodeLog::completed_episodes() const {
  std::size_t n = 0;
  for (const auto& e : episodes) n += e.ended() ? 1 : 0;
  return n;
}

void begin_episode(EpisodeLog& log, std::uint64_t seed, const AgentPoseRecord& start_pose) {
  EpisodeSegment seg;
  seg.index = static_cast<int>(log.episodes.size());
  seg.seed = seed;
  seg.start_pose = start_pose;
  log.episodes.push_back(std::move(seg));
}

const StepRecord& record_step(EpisodeLog& log, const StepOutcome& outcome, const AgentPoseRecord& pose,
                              std::optional<int> action, std::optional<int> key, double wall_clock_ms) {
  EpisodeSegment& seg = open_segment(log);
  StepRecord r;
  r.episode = seg.index;
  r.t = outcome.info.step_count;
  r.action = action;
  r.key_pressed = key;
  r.reward = outcome.reward;
  r.terminated = outcome.terminated;
  r.truncated = outcome.truncated;
  r.pose = pose;
  r.wall_clock_ms = wall_clock_ms;
  seg.steps.push_back(r);
  return seg.steps.back();
}

const StepRecord& record_noop_key(EpisodeLog& log, int key, const AgentPoseRecord& pose, double wall_clock_ms) {
  EpisodeSegment& seg = open_segment(log);
  StepRecord r;
  r.episode = seg.index;
  r.t = last_t(seg);
  r.key_pressed = key;
  r.pose = pose;
  r.wall_clock_ms = wall_clock_ms;
  seg.steps.push_back(r);
  return seg.steps.back();
}

std::string header_line(const LogHeader& h) {
  json j;
  j["kind"] = "header";
  j["format_version"] = h.format_version;
  j["env_id"] = h.env_id;
  j["seed"] = h.seed;
  if (h.key_mapping) {
    json m = json::object();
    for (const auto& [digit, action] : *h.key_mapping) m[std::to_string(digit)] = action;
    j["key_mapping"] = m;
  } else {
    j["key_mapping"] = nullptr;
  }
  j["action_names"] = h.action_names;
  j["started_at"] = h.started_at;
  return j.dump();
}

std::string episode_line(const EpisodeSegment& seg) {
  json j;
  j["kind"] = "episode";
  j["episode"] = seg.index;
  j["seed"] = seg.seed;
  j["start_pose"] = pose_json(seg.start_pose);
  return j.dump();
}

std::string step_line(const StepRecord& rec) {
  json j;
  j["kind"] = "step";
  j["episode"] = rec.episode;
  j["t"] = rec.t;
  j["action"] = opt(rec.action);
  j["key_pressed"] = opt(rec.key_pressed);
  j["reward"] = rec.reward;
  j["terminated"] = rec.terminated;
  j["truncated"] = rec.truncated;
  j["pose"] = pose_json(rec.pose);
  j["wall_clock_ms"] = rec.wall_clock_ms;
  return j.dump();
}

std::string serialize(const EpisodeLog& log) {
  std::string out = header_line(log.header) + "\n";
  for (const auto& seg : log.episodes) {
    out += episode_line(seg) + "\n";
    for (const auto& s : seg.steps) out += step_line(s) + "\n";
  }
  return out;
}

EpisodeLog parse_log(const std::string& text) {
  EpisodeLog log;
  bool have_header = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    try {
      const json j = json::parse(line);
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "header") {
        if (have_header) throw Error(ErrorCode::MalformedLog, where + "duplicate header");
        LogHeader& h = log.header;
        h.format_version = j.at("format_version").get<int>();
        h.env_id = j.at("env_id").get<std::string>();
        h.seed = j.at("seed").get<std::uint64_t>();
        const json& m = j.at("key_mapping");
        if (!m.is_null()) {
          std::map<int, int> mapping;
          for (const auto& [digit, action] : m.items()) mapping[std::stoi(digit)] = action.get<int>();
          h.key_mapping = mapping;
        }
        h.action_names = j.at("action_names").get<std::vector<std::string>>();
        h.started_at = j.at("started_at").get<std::string>();
        have_header = true;
      } else if (kind == "episode") {
        if (!have_header) throw Error(ErrorCode::MalformedLog, where + "episode before header");
        EpisodeSegment seg;
        seg.index = j.at("episode").get<int>();
        seg.seed = j.at("seed").get<std::uint64_t>();
        seg.start_pose = pose_from(j.at("start_pose"));
        if (seg.index != static_cast<int>(log.episodes.size())) {
          throw Error(ErrorCode::MalformedLog, where + "episode index out of sequence");
        }
        log.episodes.push_back(std::move(seg));
      } else if (kind == "step") {
        if (log.episodes.empty()) throw Error(ErrorCode::MalformedLog, where + "step before episode");
        StepRecord r;
        r.episode = j.at("episode").get<int>();
        r.t = j.at("t").get<int>();
        r.action = opt_from<int>(j.at("action"));
        r.key_pressed = opt_from<int>(j.at("key_pressed"));
        r.reward = j.at("reward").get<double>();
        r.terminated = j.at("terminated").get<bool>();
        r.truncated = j.at("truncated").get<bool>();
        r.pose = pose_from(j.at("pose"));
        r.wall_clock_ms = j.at("wall_clock_ms").get<double>();
        if (r.episode != log.episodes.back().index) {
          throw Error(ErrorCode::MalformedLog, where + "step belongs to another episode");
        }
        log.episodes.back().steps.push_back(r);
      } else {
        throw Error(ErrorCode::MalformedLog, where + "unknown record kind \"" + kind + "\"");
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedLog, where + e.what());
    }
  }
  if (!have_header) throw Error(ErrorCode::MalformedLog, "missing header");
  return log;
}

EpisodeLog read_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedLog, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_log(ss.str());
}

std::string log_schema_listing() {
  return "format_version 1\n"
         "extension .epjsonl\n"
         "header: kind format_version env_id seed key_mapping action_names started_at\n"
         "episode: kind episode seed start_pose\n"
         "step: kind episode t action key_pressed reward terminated truncated pose wall_clock_ms\n"
         "pose.grid: x y dir\n"
         "pose.world3d: x z yaw\n";
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// --- LogWriter --------------------------------------------------------------

namespace {
std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}
}  // namespace

LogWriter::LogWriter(std::filesystem::path path, LogHeader header) : path_(std::move(path)), start_ns_(now_ns()) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  out_.open(path_, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error(ErrorCode::LogClosed, "cannot open log file " + path_.string());
  log_.header = std::move(header);
  write(header_line(log_.header));
}

LogWriter::~LogWriter() {
  if (!closed_) close();
}

double LogWriter::elapsed_ms() const { return static_cast<double>(now_ns() - start_ns_) / 1e6; }

void LogWriter::write(const std::string& line) {
  if (closed_) throw Error(ErrorCode::LogClosed, "log already closed");
  out_ << line << '\n';
  out_.flush();
}

void LogWriter::begin_episode(std::uint64_t seed, const AgentPoseRecord& start_pose) {
  if (closed_) throw Error(ErrorCode::LogClosed, "log already closed");
  metrics::begin_episode(log_, seed, start_pose);
  write(episode_line(log_.episodes.back()));
}

void LogWriter::record_step(const StepOutcome& outcome, const AgentPoseRecord& pose, std::optional<int> action,
                            std::optional<int> key) {
  if (closed_) throw Error(ErrorCode::LogClosed, "log already closed");
  write(step_line(metrics::record_step(log_, outcome, pose, action, key, elapsed_ms())));
}

void LogWriter::record_noop_key(int key, const AgentPoseRecord& pose) {
  if (closed_) throw Error(ErrorCode::LogClosed, "log already closed");
  write(step_line(metrics::record_noop_key(log_, key, pose, elapsed_ms())));
}

void LogWriter::close() {
  if (closed_) return;
  out_.flush();
  out_.close();
  closed_ = true;
}

}  // namespace unienv::metrics
