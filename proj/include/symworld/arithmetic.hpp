#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symworld/game.hpp"
#include "symworld/modules.hpp"

namespace symworld {

struct MathProblem {
  modules::CalcOp op = modules::CalcOp::add;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t answer = 0;
  friend bool operator==(const MathProblem&, const MathProblem&) = default;
};

struct ObjectBundle {
  std::string name;  // plural noun, e.g. "apples"
  int quantity = 0;

  /// "56 apples"
  std::string display() const;
  friend bool operator==(const ObjectBundle&, const ObjectBundle&) = default;
};

/// Read a math problem, solve it, take the bundle whose quantity equals the
/// answer and put it in the box. Placing any bundle ends the episode.
class ArithmeticGame {
 public:
  static constexpr int kOperandMin = 2;
  static constexpr int kOperandMax = 12;
  static constexpr int kAnswerMax = 100;
  static constexpr int kBundleCount = 4;

  static ArithmeticGame generate(Seed seed, const GameOptions& options = {});
  /// Builds the world around a given problem; distractors and nouns come from
  /// `seed`. Throws ConfigError if the problem violates its invariants.
  static ArithmeticGame from_problem(const MathProblem& problem, Seed seed);

  std::string task_description() const;
  Observation look() const;
  std::vector<std::string> env_actions() const;
  std::vector<std::string> module_actions() const;
  EnvOutcome apply(std::string_view action);
  std::string respond(std::string_view action) const;
  std::string inventory_text() const;
  int max_raw() const { return 1; }
  std::string digest() const;

  const MathProblem& problem() const noexcept { return problem_; }
  /// All bundles in generation order (shuffled); held status below.
  const std::vector<ObjectBundle>& bundles() const noexcept { return bundles_; }
  const ObjectBundle& correct_bundle() const;
  bool bundle_held(std::size_t i) const { return held_.at(i); }
  bool problem_held() const noexcept { return problem_held_; }
  bool problem_read() const noexcept { return problem_read_; }

  /// Calculator actions over the read problem's operands; division only when
  /// it is exact.
  static std::vector<std::string> calc_actions(std::int64_t a, std::int64_t b);

 private:
  ArithmeticGame() = default;
  std::string room_text() const;

  MathProblem problem_;
  std::vector<ObjectBundle> bundles_;
  std::vector<bool> held_;
  bool problem_held_ = false;
  bool problem_read_ = false;
};

}  // namespace symworld
