#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unienv/env.hpp"

namespace unienv::metrics {

inline constexpr int kLogFormatVersion = 1;
inline constexpr const char* kLogExtension = ".epjsonl";

struct LogHeader {
  int format_version = kLogFormatVersion;
  std::string env_id;
  std::uint64_t seed = 0;
  /// digit -> action index, present for study sessions only.
  std::optional<std::map<int, int>> key_mapping;
  std::vector<std::string> action_names;
  std::string started_at;
};

struct StepRecord {
  int episode = 0;
  int t = 0;
  /// Action applied to the env; empty for an unmapped key press (no-op).
  std::optional<int> action;
  std::optional<int> key_pressed;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
  AgentPoseRecord pose;
  double wall_clock_ms = 0.0;
};

struct EpisodeSegment {
  int index = 0;
  std::uint64_t seed = 0;
  AgentPoseRecord start_pose;
  std::vector<StepRecord> steps;

  bool ended() const { return !steps.empty() && (steps.back().terminated || steps.back().truncated); }
};

struct EpisodeLog {
  LogHeader header;
  std::vector<EpisodeSegment> episodes;

  std::size_t completed_episodes() const;
};

/// Opens a new segment. The previous one need not have ended (an explicit
/// reset abandons it).
void begin_episode(EpisodeLog& log, std::uint64_t seed, const AgentPoseRecord& start_pose);

/// Appends one step to the open segment. Throws LogClosed when there is no
/// open segment or it already ended.
const StepRecord& record_step(EpisodeLog& log, const StepOutcome& outcome, const AgentPoseRecord& pose,
                              std::optional<int> action, std::optional<int> key = std::nullopt,
                              double wall_clock_ms = 0.0);

/// Records a key press that maps to no action. The world is unchanged so
/// the pose repeats and t does not advance.
const StepRecord& record_noop_key(EpisodeLog& log, int key, const AgentPoseRecord& pose,
                                  double wall_clock_ms = 0.0);

// JSON-lines serialization. Line kinds: "header", "episode", "step".
std::string header_line(const LogHeader& h);
std::string episode_line(const EpisodeSegment& seg);
std::string step_line(const StepRecord& rec);
std::string serialize(const EpisodeLog& log);
EpisodeLog parse_log(const std::string& text);
EpisodeLog read_log(const std::filesystem::path& path);

/// Field names of each record kind, in emission order. Frozen by a golden
/// schema file.
std::string log_schema_listing();

/// Streams a log to disk as it grows, flushing every line.
class LogWriter {
 public:
  LogWriter(std::filesystem::path path, LogHeader header);
  ~LogWriter();
  LogWriter(const LogWriter&) = delete;
  LogWriter& operator=(const LogWriter&) = delete;

  void begin_episode(std::uint64_t seed, const AgentPoseRecord& start_pose);
  void record_step(const StepOutcome& outcome, const AgentPoseRecord& pose, std::optional<int> action,
                   std::optional<int> key = std::nullopt);
  void record_noop_key(int key, const AgentPoseRecord& pose);
  void close();

  bool closed() const { return closed_; }
  const EpisodeLog& log() const { return log_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  double elapsed_ms() const;
  void write(const std::string& line);

  std::filesystem::path path_;
  std::ofstream out_;
  EpisodeLog log_;
  bool closed_ = false;
  std::int64_t start_ns_ = 0;
};

std::string utc_timestamp();

}  // namespace unienv::metrics
