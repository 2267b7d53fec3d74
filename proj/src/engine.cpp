#include "symworld/engine.hpp"

#include <algorithm>
#include <iostream>

#include "symworld/errors.hpp"

namespace symworld {
namespace {

GameState generate(TaskKind kind, Seed seed, const GameOptions& options) {
  switch (kind) {
    case TaskKind::arithmetic: return ArithmeticGame::generate(seed, options);
    case TaskKind::mapreader: return MapReaderGame::generate(seed, options);
    case TaskKind::sorting: return SortingGame::generate(seed, options);
    case TaskKind::twc: return TwcGame::generate(seed, options);
  }
  throw ConfigError("unknown task kind");
}

TaskKind kind_of(const GameState& state) {
  return static_cast<TaskKind>(state.index());
}

}  // namespace

double normalize_score(int raw, int max_raw) {
  if (max_raw <= 0 || raw <= 0) return 0.0;
  return std::min(1.0, static_cast<double>(raw) / static_cast<double>(max_raw));
}

Episode::Episode(GameState state, TaskKind kind, Seed seed, const EpisodeOptions& options)
    : state_(std::move(state)), kind_(kind), seed_(seed), options_(options) {
  if (options_.step_limit <= 0) throw ConfigError("step limit must be positive");
  std::visit(
      [this](const auto& game) {
        description_ = game.task_description();
        observation_ = game.look();
      },
      state_);
  refresh_actions();
}

Episode Episode::reset(TaskKind kind, Seed seed, const EpisodeOptions& options) {
  if (!split_of(seed)) {
    std::cerr << "warning: seed " << seed.value << " is outside the train/dev/test ranges\n";
  }
  return Episode(generate(kind, seed, options.game), kind, seed, options);
}

Episode Episode::from_state(GameState state, Seed seed, const EpisodeOptions& options) {
  const TaskKind kind = kind_of(state);
  return Episode(std::move(state), kind, seed, options);
}

void Episode::refresh_actions() {
  if (done()) {
    actions_ = ActionSet{};
    return;
  }
  std::visit(
      [this](const auto& game) {
        const auto env = game.env_actions();
        const auto mod = game.module_actions();
        actions_ = ActionSet(env, mod);
      },
      state_);
}

StepResult Episode::step(std::string_view action) {
  if (done()) throw EpisodeFinished();
  const Action* chosen = actions_.find(action);
  if (!chosen) throw InvalidAction(std::string(action));
  const Origin origin = chosen->origin;

  StepResult result;
  result.origin = origin;
  if (origin == Origin::module) {
    result.observation.text =
        std::visit([&](const auto& game) { return game.respond(action); }, state_);
    ++module_turns_;
  } else {
    EnvOutcome outcome = std::visit([&](auto& game) { return game.apply(action); }, state_);
    result.observation = std::move(outcome.observation);
    result.reward = std::max(0, outcome.reward);
    raw_score_ += result.reward;
    done_reason_ = outcome.terminal;
  }
  ++turns_;
  if (!done() && turns_ >= options_.step_limit) done_reason_ = DoneReason::step_limit;

  observation_ = result.observation;
  refresh_actions();
  result.done = done();
  result.valid_actions = actions_;
  result.raw_score = raw_score_;
  return result;
}

std::string Episode::inventory_text() const {
  return std::visit([](const auto& game) { return game.inventory_text(); }, state_);
}

int Episode::max_raw_score() const {
  return std::visit([](const auto& game) { return game.max_raw(); }, state_);
}

int Episode::steps() const noexcept {
  return options_.count_module_steps ? turns_ : turns_ - module_turns_;
}

void Episode::abort() {
  if (done()) return;
  done_reason_ = DoneReason::aborted;
  actions_ = ActionSet{};
}

std::string Episode::world_digest() const {
  return std::visit([](const auto& game) { return game.digest(); }, state_);
}

ResetResult reset(TaskKind kind, Seed seed, const EpisodeOptions& options) {
  Episode episode = Episode::reset(kind, seed, options);
  Observation obs = episode.observation();
  std::string description = episode.task_description();
  ActionSet actions = episode.valid_actions();
  return {std::move(episode), std::move(obs), std::move(description), std::move(actions)};
}

}  // namespace symworld
