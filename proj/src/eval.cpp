#include "symworld/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "symworld/errors.hpp"

namespace symworld {

using nlohmann::json;

// --- Agents -----------------------------------------------------------------

AgentSpec AgentSpec::parse(std::string_view text) {
  AgentSpec spec;
  constexpr std::string_view kMockPrefix = "mock:";
  if (text == "oracle") {
    spec.kind = AgentKind::oracle;
  } else if (text == "random") {
    spec.kind = AgentKind::random;
  } else if (text == "llm") {
    spec.kind = AgentKind::llm;
  } else if (text == "mock") {
    spec.kind = AgentKind::mock;
  } else if (text.starts_with(kMockPrefix) && text.size() > kMockPrefix.size()) {
    spec.kind = AgentKind::mock;
    spec.mock_script = std::string(text.substr(kMockPrefix.size()));
  } else {
    throw ConfigError("unknown agent '" + std::string(text) +
                      "' (expected oracle, random, llm or mock:<path>)");
  }
  return spec;
}

std::string AgentSpec::name() const {
  switch (kind) {
    case AgentKind::oracle: return "oracle";
    case AgentKind::random: return "random";
    case AgentKind::llm: return "llm";
    case AgentKind::mock:
      return mock_script.empty() ? "mock" : "mock:" + mock_script.generic_string();
  }
  return "unknown";
}

PolicyFactory make_policy_factory(const AgentSpec& spec, std::shared_ptr<ChatClient> client) {
  switch (spec.kind) {
    case AgentKind::oracle:
      return [](TaskKind, Seed) { return std::make_unique<OraclePolicy>(); };
    case AgentKind::random:
      return [base = spec.random_seed](TaskKind task, Seed seed) {
        const auto mixed = Rng::mix(base ^ Rng::mix(seed.value) ^ static_cast<std::uint64_t>(task));
        return std::make_unique<RandomPolicy>(mixed);
      };
    case AgentKind::mock: {
      if (spec.mock_script.empty()) throw ConfigError("mock agent needs a script path");
      auto script = std::make_shared<const MockScript>(MockScript::load(spec.mock_script));
      return [script, history = spec.history](TaskKind task, Seed seed) -> std::unique_ptr<Policy> {
        auto mock = std::make_shared<ScriptedMock>(script->replies_for(task, seed), Exhaustion::error);
        return std::make_unique<LlmPolicy>(std::move(mock), history);
      };
    }
    case AgentKind::llm: {
      if (!client) {
        if (spec.llm.api_key.empty() && !spec.llm.endpoint_configured) {
          throw ConfigError(std::string("llm agent needs ") + std::string(kApiKeyEnv) +
                            " or a configured endpoint");
        }
        client = std::make_shared<HttpChatClient>(spec.llm);
      }
      return [client, history = spec.history](TaskKind, Seed) -> std::unique_ptr<Policy> {
        return std::make_unique<LlmPolicy>(client, history);
      };
    }
  }
  throw ConfigError("unknown agent kind");
}

// --- Run configuration ------------------------------------------------------

std::vector<Seed> RunConfig::seeds() const {
  if (episodes < 1) throw ConfigError("episode count must be at least 1");
  std::vector<Seed> out;
  const auto base = split_base(split).value + seed_offset;
  for (int i = 0; i < episodes; ++i) out.push_back(Seed{base + static_cast<std::uint64_t>(i)});
  return out;
}

json RunConfig::to_json() const {
  json task_names = json::array();
  for (auto t : tasks) task_names.push_back(task_name(t));
  return {{"tasks", task_names},
          {"split", split_name(split)},
          {"episodes", episodes},
          {"agent", agent},
          {"step_limit", step_limit},
          {"seed_offset", seed_offset},
          {"count_module_steps", count_module_steps}};
}

// --- Report -----------------------------------------------------------------

EvalReport::EvalReport(json config, std::vector<EpisodeRow> rows)
    : config_(std::move(config)), rows_(std::move(rows)) {
  if (rows_.empty()) throw ConfigError("an evaluation report needs at least one episode");
  std::sort(rows_.begin(), rows_.end(), [](const EpisodeRow& a, const EpisodeRow& b) {
    return std::pair(a.task, a.seed) < std::pair(b.task, b.seed);
  });
  for (const auto& r : rows_) {
    if (summaries_.empty() || summaries_.back().task != r.task) summaries_.push_back({r.task});
    auto& s = summaries_.back();
    ++s.episodes;
    s.score_sum += r.score;
    s.total_steps += r.steps;
    if (r.done_reason == DoneReason::aborted) ++s.aborted;
  }
}

double EvalReport::overall_score() const {
  double sum = 0.0;
  for (const auto& s : summaries_) sum += s.mean_score();
  return sum / static_cast<double>(summaries_.size());
}

double EvalReport::overall_steps() const {
  double sum = 0.0;
  for (const auto& s : summaries_) sum += s.mean_steps();
  return sum / static_cast<double>(summaries_.size());
}

int EvalReport::aborted() const {
  int n = 0;
  for (const auto& s : summaries_) n += s.aborted;
  return n;
}

json EvalReport::to_json() const {
  json rows = json::array();
  for (const auto& r : rows_) {
    rows.push_back({{"task", task_name(r.task)},
                    {"seed", r.seed.value},
                    {"score", r.score},
                    {"raw_score", r.raw_score},
                    {"max_raw_score", r.max_raw_score},
                    {"steps", r.steps},
                    {"done_reason", done_reason_name(r.done_reason)}});
  }
  json per_task = json::array();
  for (const auto& s : summaries_) {
    per_task.push_back({{"task", task_name(s.task)},
                        {"episodes", s.episodes},
                        {"mean_score", s.mean_score()},
                        {"mean_steps", s.mean_steps()},
                        {"total_steps", s.total_steps},
                        {"aborted", s.aborted}});
  }
  return {{"config", config_},
          {"rows", rows},
          {"summary",
           {{"per_task", per_task},
            {"overall", {{"score", overall_score()}, {"steps", overall_steps()}}},
            {"aborted", aborted()}}}};
}

EvalReport EvalReport::from_json(const json& doc) {
  try {
    std::vector<EpisodeRow> rows;
    for (const auto& r : doc.at("rows")) {
      EpisodeRow row;
      row.task = parse_task(r.at("task").get<std::string>());
      row.seed = Seed{r.at("seed").get<std::uint64_t>()};
      row.score = r.at("score").get<double>();
      row.raw_score = r.value("raw_score", 0);
      row.max_raw_score = r.value("max_raw_score", 0);
      row.steps = r.at("steps").get<int>();
      row.done_reason = parse_done_reason(r.at("done_reason").get<std::string>());
      rows.push_back(row);
    }
    return EvalReport(doc.value("config", json::object()), std::move(rows));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

// --- Benchmark --------------------------------------------------------------

EvalReport run_benchmark(const RunConfig& config, const PolicyFactory& factory) {
  if (config.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (config.tasks.empty()) throw ConfigError("no tasks selected");
  const auto seeds = config.seeds();

  std::vector<std::pair<TaskKind, Seed>> work;
  for (auto task : config.tasks) {
    for (auto seed : seeds) work.emplace_back(task, seed);
  }

  EpisodeOptions options;
  options.step_limit = config.step_limit;
  options.count_module_steps = config.count_module_steps;

  std::vector<EpisodeRow> rows(work.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      try {
        const auto [task, seed] = work[i];
        auto policy = factory(task, seed);
        Episode episode = Episode::reset(task, seed, options);
        const auto trace = run_episode(episode, *policy);
        rows[i] = {task,
                   seed,
                   trace.final_score,
                   episode.raw_score(),
                   episode.max_raw_score(),
                   trace.step_count,
                   trace.done_reason};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = work.size();
      }
    }
  };

  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), work.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return EvalReport(config.to_json(), std::move(rows));
}

// --- Reference numbers ------------------------------------------------------

namespace {

ReferenceColumn column(std::string label, ScoreSteps arithmetic, ScoreSteps mapreader,
                       ScoreSteps sorting, ScoreSteps twc, ScoreSteps average) {
  return {std::move(label),
          {{TaskKind::arithmetic, arithmetic},
           {TaskKind::mapreader, mapreader},
           {TaskKind::sorting, sorting},
           {TaskKind::twc, twc}},
          average};
}

}  // namespace

const std::map<std::string, ReferenceColumn>& reference_columns() {
  static const std::map<std::string, ReferenceColumn> columns = {
      {"drrn", column("DRRN", {0.17, 10}, {0.02, 50}, {0.03, 21}, {0.57, 27}, {0.20, 27})},
      {"drrn+module",
       column("DRRN+module", {0.14, 7}, {0.02, 50}, {0.03, 18}, {0.37, 34}, {0.14, 27})},
      {"bc", column("BC", {0.56, 5}, {0.71, 27}, {0.72, 7}, {0.90, 6}, {0.72, 11})},
      {"bc+module", column("BC+module", {1.00, 5}, {1.00, 10}, {0.98, 8}, {0.97, 3}, {0.99, 7})},
      {"llm", column("LLM (test)", {1.00, 4}, {0.86, 15}, {0.71, 7}, {0.94, 4}, {0.88, 7})},
      {"llm-train", column("LLM (train)", {1.00, 3}, {0.84, 15}, {0.70, 7}, {0.93, 4}, {0.87, 7})},
      {"llm-dev", column("LLM (dev)", {0.95, 4}, {0.84, 14}, {0.63, 6}, {0.835, 5}, {0.81, 7})},
      {"llm-unconstrained",
       column("LLM no rules", {0.96, 3}, {0.64, 12}, {0.35, 10}, {0.73, 7}, {0.67, 8})},
      {"gpt4", column("GPT-4", {1.00, 4}, {0.99, 7}, {0.93, 8}, {0.71, 16}, {0.91, 8})},
  };
  return columns;
}

std::vector<ReferenceColumn> select_reference_columns(std::span<const std::string> keys) {
  std::vector<ReferenceColumn> out;
  const auto& all = reference_columns();
  for (const auto& key : keys) {
    const auto it = all.find(key);
    if (it == all.end()) throw ConfigError("unknown reference column '" + key + "'");
    out.push_back(it->second);
  }
  return out;
}

// --- Rendering --------------------------------------------------------------

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", score);
  return buf;
}

int round_steps(double steps) { return static_cast<int>(std::lround(steps)); }

namespace {

// Published values keep their own precision (one of them has three decimals).
std::string format_reference(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", score);
  std::string s = buf;
  if (s.back() == '0') s.pop_back();
  return s;
}

std::string pad(std::string_view text, std::size_t width, bool right) {
  std::string cell(text);
  if (cell.size() >= width) return cell;
  const std::string fill(width - cell.size(), ' ');
  return right ? fill + cell : cell + fill;
}

}  // namespace

std::string render_table(const EvalReport& report, std::span<const ReferenceColumn> references,
                         std::string_view label) {
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{"Task", std::string(label) + " Score", "Steps"};
  for (const auto& ref : references) {
    header.push_back(ref.label + " Score");
    header.push_back("Steps");
  }
  grid.push_back(header);

  for (const auto& s : report.per_task()) {
    std::vector<std::string> row{std::string(task_display_name(s.task)), format_score(s.mean_score()),
                                 std::to_string(round_steps(s.mean_steps()))};
    for (const auto& ref : references) {
      const auto it = ref.rows.find(s.task);
      row.push_back(it == ref.rows.end() ? "-" : format_reference(it->second.score));
      row.push_back(it == ref.rows.end() ? "-" : std::to_string(it->second.steps));
    }
    grid.push_back(row);
  }

  std::vector<std::string> avg{"Average", format_score(report.overall_score()),
                               std::to_string(round_steps(report.overall_steps()))};
  for (const auto& ref : references) {
    avg.push_back(format_reference(ref.average.score));
    avg.push_back(std::to_string(ref.average.steps));
  }

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto* row : {&header, &avg}) {
    for (std::size_t c = 0; c < row->size(); ++c) widths[c] = std::max(widths[c], (*row)[c].size());
  }
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }

  auto line = [&](const std::vector<std::string>& row) {
    std::string out;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += "  ";
      out += pad(row[c], widths[c], c != 0);
    }
    return out + "\n";
  };
  std::size_t total = 0;
  for (auto w : widths) total += w;
  total += 2 * (widths.size() - 1);
  const std::string rule(total, '-');

  std::string out = line(grid.front()) + rule + "\n";
  for (std::size_t r = 1; r < grid.size(); ++r) out += line(grid[r]);
  out += rule + "\n" + line(avg);
  return out;
}

}  // namespace symworld
