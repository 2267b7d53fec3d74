// symworld: play, run and evaluate the symbolic text games from the command line.
//
// Exit codes: 0 success, 1 configuration error, 2 agent or transport failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "symworld/agents.hpp"
#include "symworld/config.hpp"
#include "symworld/engine.hpp"
#include "symworld/errors.hpp"
#include "symworld/eval.hpp"
#include "symworld/prompts.hpp"
#include "symworld/text.hpp"

namespace sw = symworld;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAgent = 2;

struct CommonOptions {
  std::string config_path;
  bool verbose = false;
  int step_limit = sw::kDefaultStepLimit;
  bool exclude_module_steps = false;
};

struct AgentOptions {
  std::string agent = "oracle";
  std::string mock_script;
  std::string endpoint;
  std::string model;
  std::optional<double> temperature;
  std::size_t history = 0;
  std::uint64_t random_seed = 0;
};

sw::EpisodeOptions episode_options(const CommonOptions& common) {
  sw::EpisodeOptions options;
  options.step_limit = common.step_limit;
  options.count_module_steps = !common.exclude_module_steps;
  return options;
}

sw::AgentSpec agent_spec(const AgentOptions& opts, const CommonOptions& common) {
  auto spec = sw::AgentSpec::parse(opts.agent);
  if (spec.kind == sw::AgentKind::mock && spec.mock_script.empty()) {
    if (opts.mock_script.empty()) throw sw::ConfigError("--agent mock needs --mock-script");
    spec.mock_script = opts.mock_script;
  }
  spec.random_seed = opts.random_seed;
  spec.history.max_history_turns = opts.history;
  if (spec.kind == sw::AgentKind::llm) {
    if (!common.config_path.empty()) sw::ConfigFile::load(common.config_path).apply_to(spec.llm);
    if (!opts.endpoint.empty()) {
      spec.llm.endpoint = opts.endpoint;
      spec.llm.endpoint_configured = true;
    }
    if (!opts.model.empty()) spec.llm.model = opts.model;
    if (opts.temperature) spec.llm.temperature = *opts.temperature;
    spec.llm.load_credential_from_environment();
  }
  return spec;
}

void add_agent_flags(CLI::App& cmd, AgentOptions& opts) {
  cmd.add_option("--agent", opts.agent, "oracle, random, llm, mock or mock:<script>")
      ->capture_default_str();
  cmd.add_option("--mock-script", opts.mock_script, "JSONL reply script for --agent mock");
  cmd.add_option("--endpoint", opts.endpoint, "Chat-completions base URL (overrides config)");
  cmd.add_option("--model", opts.model, "Model name (overrides config)");
  cmd.add_option("--temperature", opts.temperature, "Sampling temperature (overrides config)");
  cmd.add_option("--history", opts.history, "Past turns sent to the model (0 = all)")
      ->capture_default_str();
  cmd.add_option("--agent-seed", opts.random_seed, "Seed mixed into the random agent")
      ->capture_default_str();
}

std::vector<sw::TaskKind> parse_tasks(const std::string& text) {
  if (text == "all") return {sw::kAllTasks.begin(), sw::kAllTasks.end()};
  std::vector<sw::TaskKind> out;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) {
    if (!part.empty()) out.push_back(sw::parse_task(part));
  }
  if (out.empty()) throw sw::ConfigError("no tasks given");
  return out;
}

void print_state(const sw::Episode& ep) {
  std::cout << "\n" << ep.observation().text << "\n" << ep.inventory_text() << "\n"
            << "Score: " << ep.raw_score() << "\n";
  const auto& actions = ep.valid_actions();
  for (std::size_t i = 0; i < actions.size(); ++i) {
    std::cout << "  " << (i + 1) << ") " << actions[i].text
              << (actions[i].origin == sw::Origin::module ? "  [module]" : "") << "\n";
  }
}

// --- play -------------------------------------------------------------------

int cmd_play(const std::string& task, std::uint64_t seed, const CommonOptions& common) {
  auto ep = sw::Episode::reset(sw::parse_task(task), sw::Seed{seed}, episode_options(common));
  std::cout << ep.task_description() << "\n";
  print_state(ep);
  std::string line;
  while (!ep.done()) {
    std::cout << "> " << std::flush;
    if (!std::getline(std::cin, line)) {
      std::cout << "\n";
      break;
    }
    std::string choice = line;
    try {
      std::size_t used = 0;
      const auto n = std::stoul(line, &used);
      if (used == line.size() && n >= 1 && n <= ep.valid_actions().size()) {
        choice = ep.valid_actions()[n - 1].text;
      }
    } catch (const std::exception&) {
    }
    try {
      const auto result = ep.step(sw::canonicalize(choice));
      if (result.reward) std::cout << "Reward: +" << result.reward << "\n";
      if (!ep.done()) {
        print_state(ep);
      } else {
        std::cout << "\n" << result.observation.text << "\n";
      }
    } catch (const sw::InvalidAction&) {
      std::cout << "Not a valid action.\n";
      print_state(ep);
    }
  }
  std::cout << "Final score: " << sw::format_score(ep.normalized_score()) << " (" << ep.raw_score()
            << "/" << ep.max_raw_score() << ") in " << ep.steps() << " steps, "
            << sw::done_reason_name(ep.done_reason()) << "\n";
  return kExitOk;
}

// --- run --------------------------------------------------------------------

int cmd_run(const std::string& task_text, std::uint64_t seed, const AgentOptions& agent,
            const CommonOptions& common, const std::string& trace_path,
            const std::string& script_out) {
  const auto task = sw::parse_task(task_text);
  const auto factory = sw::make_policy_factory(agent_spec(agent, common));
  auto policy = factory(task, sw::Seed{seed});
  auto ep = sw::Episode::reset(task, sw::Seed{seed}, episode_options(common));

  if (common.verbose) std::cout << ep.task_description() << "\n";
  sw::StepObserver observer;
  if (common.verbose) {
    observer = [](const sw::TraceStep& step, const sw::PolicyDecision& decision,
                  const sw::StepResult& result) {
      std::cout << "--- step " << step.step << "\n";
      if (decision.prompt) std::cout << "[prompt]\n" << *decision.prompt << "\n";
      if (decision.raw_reply) std::cout << "[reply] " << *decision.raw_reply << "\n";
      std::cout << "[action] " << step.action
                << (decision.repair_applied ? " (repaired)" : "") << "\n"
                << "[observation] " << result.observation.text << "\n"
                << "[reward] " << step.reward << "  [score] " << step.raw_score << "\n";
    };
  }
  const auto trace = sw::run_episode(ep, *policy, observer);

  if (!trace_path.empty()) sw::write_trace(trace, trace_path);
  if (!script_out.empty()) {
    std::ofstream out(script_out, std::ios::binary);
    if (!out) throw sw::ConfigError("cannot write " + script_out);
    out << sw::mock_script_from_trace(trace).to_jsonl();
  }
  std::cout << sw::task_name(task) << " seed " << seed << ": score "
            << sw::format_score(trace.final_score) << ", steps " << trace.step_count << ", "
            << sw::done_reason_name(trace.done_reason) << "\n";
  return trace.done_reason == sw::DoneReason::aborted ? kExitAgent : kExitOk;
}

// --- eval -------------------------------------------------------------------

int cmd_eval(sw::RunConfig config, const std::string& tasks, const AgentOptions& agent,
             const CommonOptions& common, const std::string& report_path,
             const std::vector<std::string>& compare) {
  config.tasks = parse_tasks(tasks);
  config.step_limit = common.step_limit;
  config.count_module_steps = !common.exclude_module_steps;
  const auto spec = agent_spec(agent, common);
  config.agent = spec.name();
  const auto refs = sw::select_reference_columns(compare);
  const auto factory = sw::make_policy_factory(spec);

  const auto report = sw::run_benchmark(config, factory);
  const std::string table = sw::render_table(report, refs, spec.name());
  std::cout << table;
  if (report.aborted() > 0) std::cout << report.aborted() << " episode(s) aborted\n";

  if (!report_path.empty()) {
    std::ofstream json_out(report_path, std::ios::binary);
    if (!json_out) throw sw::ConfigError("cannot write " + report_path);
    json_out << report.to_json().dump(2) << "\n";
    std::ofstream table_out(report_path + ".txt", std::ios::binary);
    table_out << table;
  }
  return report.aborted() > 0 ? kExitAgent : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text games with symbolic modules: play, run agents, evaluate."};
  app.require_subcommand(1);
  CommonOptions common;
  app.add_option("--config", common.config_path, "Config file with an [llm] section")
      ->check(CLI::ExistingFile);
  app.add_flag("-v,--verbose", common.verbose, "Print prompts, replies and observations");

  auto add_episode_flags = [&](CLI::App& cmd) {
    cmd.add_option("--step-limit", common.step_limit, "Maximum turns per episode")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd.add_flag("--exclude-module-steps", common.exclude_module_steps,
                 "Leave module queries out of the reported step count");
  };

  std::string task;
  std::uint64_t seed = sw::split_base(sw::Split::test).value;

  auto* play = app.add_subcommand("play", "Play an episode interactively");
  play->add_option("--task", task, "arithmetic, mapreader, sorting or twc")->required();
  play->add_option("--seed", seed, "World seed")->capture_default_str();
  add_episode_flags(*play);

  AgentOptions agent;
  std::string trace_path;
  std::string script_out;
  auto* run = app.add_subcommand("run", "Run one agent episode");
  run->add_option("--task", task, "arithmetic, mapreader, sorting or twc")->required();
  run->add_option("--seed", seed, "World seed")->capture_default_str();
  run->add_option("--trace", trace_path, "Write the episode trace as JSONL");
  run->add_option("--script-out", script_out, "Write the actions as a mock reply script");
  add_agent_flags(*run, agent);
  add_episode_flags(*run);

  sw::RunConfig config;
  std::string tasks = "all";
  std::string split = "test";
  std::string report_path;
  std::vector<std::string> compare{"llm"};
  auto* eval = app.add_subcommand("eval", "Evaluate an agent over a split");
  eval->add_option("--tasks,--task", tasks, "Comma-separated task names or 'all'")
      ->capture_default_str();
  eval->add_option("--split", split, "train, dev or test")->capture_default_str();
  eval->add_option("--episodes", config.episodes, "Episodes per task")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  eval->add_option("--seed-offset", config.seed_offset, "Offset into the split's seed range")
      ->capture_default_str();
  eval->add_option("--jobs", config.jobs, "Parallel episodes")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  eval->add_option("--report", report_path, "Write the JSON report here (table to <path>.txt)");
  eval->add_option("--compare", compare, "Reference columns to print alongside, or none")
      ->capture_default_str();
  add_agent_flags(*eval, agent);
  add_episode_flags(*eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*play) return cmd_play(task, seed, common);
    if (*run) return cmd_run(task, seed, agent, common, trace_path, script_out);
    config.split = sw::parse_split(split);
    if (compare == std::vector<std::string>{"none"}) compare.clear();
    return cmd_eval(config, tasks, agent, common, report_path, compare);
  } catch (const sw::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const sw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAgent;
  }
}
