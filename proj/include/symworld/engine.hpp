#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "symworld/arithmetic.hpp"
#include "symworld/game.hpp"
#include "symworld/mapreader.hpp"
#include "symworld/sorting.hpp"
#include "symworld/twc.hpp"
#include "symworld/types.hpp"

namespace symworld {

static_assert(GameWorld<ArithmeticGame>);
static_assert(GameWorld<MapReaderGame>);
static_assert(GameWorld<SortingGame>);
static_assert(GameWorld<TwcGame>);

using GameState = std::variant<ArithmeticGame, MapReaderGame, SortingGame, TwcGame>;

inline constexpr int kDefaultStepLimit = 50;

struct EpisodeOptions {
  int step_limit = kDefaultStepLimit;
  /// Whether module-origin turns are included in the reported step count.
  /// They always count toward the step limit.
  bool count_module_steps = true;
  GameOptions game;
};

/// raw / max_raw clamped to [0, 1]; 0 when max_raw is 0.
double normalize_score(int raw, int max_raw);

/// One seeded game instance plus its bookkeeping. A plain value: copy it to
/// branch, never share it between threads.
class Episode {
 public:
  /// Throws ConfigError for a non-positive step limit. Seeds outside every
  /// split are accepted with a warning on stderr.
  static Episode reset(TaskKind kind, Seed seed, const EpisodeOptions& options = {});
  /// Wraps an explicitly built world (fixtures, tests).
  static Episode from_state(GameState state, Seed seed, const EpisodeOptions& options = {});

  /// Throws InvalidAction if the text is not in valid_actions() and
  /// EpisodeFinished once done().
  StepResult step(std::string_view action);

  TaskKind task() const noexcept { return kind_; }
  Seed seed() const noexcept { return seed_; }
  const std::string& task_description() const noexcept { return description_; }
  const Observation& observation() const noexcept { return observation_; }
  const ActionSet& valid_actions() const noexcept { return actions_; }
  std::string inventory_text() const;

  int raw_score() const noexcept { return raw_score_; }
  int max_raw_score() const;
  double normalized_score() const { return normalize_score(raw_score_, max_raw_score()); }

  /// Every accepted action; bounded by the step limit.
  int turns() const noexcept { return turns_; }
  int module_turns() const noexcept { return module_turns_; }
  /// The reported "steps" metric.
  int steps() const noexcept;
  bool done() const noexcept { return done_reason_ != DoneReason::none; }
  DoneReason done_reason() const noexcept { return done_reason_; }
  /// Ends the episode early (agent failure). No-op if already done.
  void abort();

  const EpisodeOptions& options() const noexcept { return options_; }
  const GameState& state() const noexcept { return state_; }
  /// Serialization of the world excluding module-side context; equal digests
  /// mean equal world state.
  std::string world_digest() const;

 private:
  Episode(GameState state, TaskKind kind, Seed seed, const EpisodeOptions& options);
  void refresh_actions();

  GameState state_;
  TaskKind kind_;
  Seed seed_;
  EpisodeOptions options_;
  std::string description_;
  Observation observation_;
  ActionSet actions_;
  int raw_score_ = 0;
  int turns_ = 0;
  int module_turns_ = 0;
  DoneReason done_reason_ = DoneReason::none;
};

struct ResetResult {
  Episode episode;
  Observation observation;
  std::string task_description;
  ActionSet actions;
};

ResetResult reset(TaskKind kind, Seed seed, const EpisodeOptions& options = {});

}  // namespace symworld
