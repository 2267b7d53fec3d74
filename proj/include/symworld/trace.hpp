#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symworld/types.hpp"

namespace symworld {

struct TraceStep {
  int step = 0;              // 1-based turn number
  std::string observation;   // what the agent saw before acting
  std::string action;
  Origin origin = Origin::environment;
  int reward = 0;
  int raw_score = 0;         // running total after the action
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct EpisodeTrace {
  TaskKind task = TaskKind::arithmetic;
  Seed seed;
  std::optional<Split> split;
  std::vector<TraceStep> steps;
  double final_score = 0.0;
  int step_count = 0;
  DoneReason done_reason = DoneReason::none;

  std::vector<std::string> actions() const;
  friend bool operator==(const EpisodeTrace&, const EpisodeTrace&) = default;
};

/// Header line {task, seed, split}, one line per step
/// {step, observation, action, origin, reward, raw_score}, trailer line
/// {final_score, steps, done_reason}. `split` is null outside every range.
std::string to_jsonl(const EpisodeTrace& trace);
/// Throws ConfigError on malformed input.
EpisodeTrace trace_from_jsonl(std::string_view jsonl);

void write_trace(const EpisodeTrace& trace, const std::filesystem::path& path);
EpisodeTrace read_trace(const std::filesystem::path& path);

}  // namespace symworld
