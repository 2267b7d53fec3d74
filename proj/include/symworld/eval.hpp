#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symworld/agents.hpp"
#include "symworld/llm_client.hpp"

namespace symworld {

enum class AgentKind { oracle, random, llm, mock };

struct AgentSpec {
  AgentKind kind = AgentKind::oracle;
  std::filesystem::path mock_script;  // AgentKind::mock
  std::uint64_t random_seed = 0;      // mixed with each episode seed
  LlmConfig llm;
  LlmPolicyOptions history;

  /// "oracle", "random", "llm", "mock" or "mock:<path>".
  static AgentSpec parse(std::string_view text);
  std::string name() const;
};

using PolicyFactory = std::function<std::unique_ptr<Policy>(TaskKind, Seed)>;

/// For llm agents, `client` overrides the HTTP client built from the spec.
/// Throws ConfigError when the agent cannot be constructed.
PolicyFactory make_policy_factory(const AgentSpec& spec,
                                  std::shared_ptr<ChatClient> client = nullptr);

struct RunConfig {
  std::vector<TaskKind> tasks{kAllTasks.begin(), kAllTasks.end()};
  Split split = Split::test;
  int episodes = 100;
  std::string agent = "oracle";
  int step_limit = kDefaultStepLimit;
  std::uint64_t seed_offset = 0;
  int jobs = 1;
  bool count_module_steps = true;

  /// split base + offset + i for i in [0, episodes).
  std::vector<Seed> seeds() const;
  /// Everything except `jobs`, which must not change the report.
  nlohmann::json to_json() const;
};

struct EpisodeRow {
  TaskKind task = TaskKind::arithmetic;
  Seed seed;
  double score = 0.0;
  int raw_score = 0;
  int max_raw_score = 0;
  int steps = 0;
  DoneReason done_reason = DoneReason::none;
  friend bool operator==(const EpisodeRow&, const EpisodeRow&) = default;
};

struct TaskSummary {
  TaskKind task = TaskKind::arithmetic;
  int episodes = 0;
  double score_sum = 0.0;
  long long total_steps = 0;
  int aborted = 0;

  double mean_score() const { return score_sum / episodes; }
  double mean_steps() const { return static_cast<double>(total_steps) / episodes; }
};

/// Scores are kept exact; rounding (2 decimals, integer steps) happens only
/// when rendering.
class EvalReport {
 public:
  /// Rows are ordered by (task, seed). Throws ConfigError when empty.
  EvalReport(nlohmann::json config, std::vector<EpisodeRow> rows);

  const nlohmann::json& config() const noexcept { return config_; }
  const std::vector<EpisodeRow>& rows() const noexcept { return rows_; }
  const std::vector<TaskSummary>& per_task() const noexcept { return summaries_; }
  /// Unweighted mean across tasks.
  double overall_score() const;
  double overall_steps() const;
  int aborted() const;

  /// {config, rows:[...], summary:{per_task, overall}}
  nlohmann::json to_json() const;
  static EvalReport from_json(const nlohmann::json& json);

 private:
  nlohmann::json config_;
  std::vector<EpisodeRow> rows_;
  std::vector<TaskSummary> summaries_;
};

/// Runs every (task, seed) pair on up to `jobs` threads; results are ordered
/// before aggregation so the thread count never changes the report.
EvalReport run_benchmark(const RunConfig& config, const PolicyFactory& factory);

struct ScoreSteps {
  double score = 0.0;
  int steps = 0;
};

struct ReferenceColumn {
  std::string label;
  std::map<TaskKind, ScoreSteps> rows;
  ScoreSteps average;  // as published, not recomputed
};

/// Published reference results: "drrn", "drrn+module", "bc", "bc+module",
/// "llm" (test split), "llm-train", "llm-dev", "llm-unconstrained", "gpt4".
const std::map<std::string, ReferenceColumn>& reference_columns();
std::vector<ReferenceColumn> select_reference_columns(std::span<const std::string> keys);

/// Score/Steps columns for the report followed by the reference columns, one
/// row per task and an Average row.
std::string render_table(const EvalReport& report, std::span<const ReferenceColumn> references = {},
                         std::string_view label = "This run");

/// "1.00"
std::string format_score(double score);
int round_steps(double steps);

}  // namespace symworld
