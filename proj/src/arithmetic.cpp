#include "symworld/arithmetic.hpp"

#include <algorithm>
#include <array>

#include "symworld/errors.hpp"
#include "symworld/rng.hpp"
#include "symworld/text.hpp"

namespace symworld {
namespace {

using modules::CalcOp;

constexpr std::uint64_t kStreamTag = 0x61726974686d6574ULL;  // "arithmet"

constexpr std::array<CalcOp, 4> kOps = {CalcOp::add, CalcOp::sub, CalcOp::mul, CalcOp::div};

const std::array<std::string, 16> kNouns = {
    "apples",  "avocados", "bananas", "oranges", "pears",   "peaches", "plums",    "kiwis",
    "lemons",  "limes",    "mangoes", "cherries", "grapes", "apricots", "coconuts", "onions"};

std::string_view op_phrase(CalcOp op) {
  switch (op) {
    case CalcOp::add: return "plus";
    case CalcOp::sub: return "minus";
    case CalcOp::mul: return "multiplied by";
    case CalcOp::div: return "divided by";
  }
  return "";
}

bool problem_valid(const MathProblem& p) {
  if (p.a < 1 || p.b < 1) return false;
  if (p.op == CalcOp::sub && p.a <= p.b) return false;
  auto v = modules::calc_value(p.op, p.a, p.b);
  return v && *v == p.answer && p.answer >= 1 && p.answer <= ArithmeticGame::kAnswerMax;
}

}  // namespace

std::string ObjectBundle::display() const { return std::to_string(quantity) + " " + name; }

ArithmeticGame ArithmeticGame::generate(Seed seed, const GameOptions&) {
  Rng rng(seed.value ^ kStreamTag);
  MathProblem p;
  do {
    p.op = kOps[rng.below(kOps.size())];
    p.a = rng.between(kOperandMin, kOperandMax);
    p.b = rng.between(kOperandMin, kOperandMax);
    p.answer = modules::calc_value(p.op, p.a, p.b).value_or(0);
  } while (!problem_valid(p));
  return from_problem(p, Seed{rng.next()});
}

ArithmeticGame ArithmeticGame::from_problem(const MathProblem& problem, Seed seed) {
  if (!problem_valid(problem)) throw ConfigError("math problem violates its invariants");
  Rng rng(seed.value ^ kStreamTag);

  // Distractors: the other three operations when they give a fresh value in
  // range, otherwise a random unused value.
  std::vector<int> quantities{static_cast<int>(problem.answer)};
  auto unused = [&](std::int64_t v) {
    return v >= 1 && v <= kAnswerMax &&
           std::find(quantities.begin(), quantities.end(), v) == quantities.end();
  };
  for (CalcOp op : kOps) {
    if (op == problem.op) continue;
    if (op == CalcOp::sub && problem.a <= problem.b) continue;
    auto v = modules::calc_value(op, problem.a, problem.b);
    if (v && unused(*v)) quantities.push_back(static_cast<int>(*v));
  }
  while (quantities.size() < kBundleCount) {
    const auto v = rng.between(1, kAnswerMax);
    if (unused(v)) quantities.push_back(static_cast<int>(v));
  }

  std::array<std::string, 16> nouns = kNouns;
  rng.shuffle(std::span<std::string>(nouns));

  ArithmeticGame game;
  game.problem_ = problem;
  for (std::size_t i = 0; i < kBundleCount; ++i) {
    game.bundles_.push_back({nouns[i], quantities[i]});
  }
  rng.shuffle(std::span<ObjectBundle>(game.bundles_));
  game.held_.assign(game.bundles_.size(), false);
  return game;
}

const ObjectBundle& ArithmeticGame::correct_bundle() const {
  for (const auto& b : bundles_) {
    if (b.quantity == problem_.answer) return b;
  }
  throw Error("arithmetic world has no answer bundle");
}

std::string ArithmeticGame::task_description() const {
  return "Your first task is to solve the math problem. Then, pick up the item with the same "
         "quantity as the math problem answer, and place it in the box.";
}

std::string ArithmeticGame::room_text() const {
  std::string text = "You are in the kitchen. In one part of the room you see a box, that is empty.";
  if (!problem_held_) text += " There is also a math problem.";
  std::vector<std::string> visible;
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    if (!held_[i]) visible.push_back(bundles_[i].display());
  }
  if (!visible.empty()) text += " You also see " + join(visible, ", ") + ".";
  return text;
}

Observation ArithmeticGame::look() const {
  ObservationPayload payload;
  payload.room = "kitchen";
  if (!problem_held_) payload.items.push_back({"math problem", std::nullopt, std::nullopt});
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    if (!held_[i]) payload.items.push_back({bundles_[i].name, bundles_[i].quantity, std::nullopt});
  }
  return {room_text(), std::move(payload)};
}

std::vector<std::string> ArithmeticGame::env_actions() const {
  std::vector<std::string> out{"look around"};
  out.push_back(problem_held_ ? "read math problem" : "take math problem");
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    if (!held_[i]) out.push_back("take " + bundles_[i].display());
  }
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    if (held_[i]) out.push_back("put " + bundles_[i].display() + " in box");
  }
  return out;
}

std::vector<std::string> ArithmeticGame::calc_actions(std::int64_t a, std::int64_t b) {
  std::vector<std::string> out;
  for (CalcOp op : kOps) {
    if (modules::calc_value(op, a, b)) out.push_back(modules::render_query(modules::CalcQuery{op, a, b}));
  }
  return out;
}

std::vector<std::string> ArithmeticGame::module_actions() const {
  if (!problem_read_) return {};
  return calc_actions(problem_.a, problem_.b);
}

EnvOutcome ArithmeticGame::apply(std::string_view action) {
  if (action == "look around") return {look(), 0, DoneReason::none};
  if (action == "take math problem" && !problem_held_) {
    problem_held_ = true;
    return {{"You take the math problem.", std::nullopt}, 0, DoneReason::none};
  }
  if (action == "read math problem" && problem_held_) {
    problem_read_ = true;
    return {{"The math problem reads: What is " + std::to_string(problem_.a) + " " +
                 std::string(op_phrase(problem_.op)) + " " + std::to_string(problem_.b) + "?",
             std::nullopt},
            0,
            DoneReason::none};
  }
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    const std::string shown = bundles_[i].display();
    if (!held_[i] && action == "take " + shown) {
      held_[i] = true;
      return {{"You take the " + shown + ".", std::nullopt}, 0, DoneReason::none};
    }
    if (held_[i] && action == "put " + shown + " in box") {
      held_[i] = false;
      if (bundles_[i].quantity == problem_.answer) {
        return {{"You put the " + shown + " in the box. That is the right quantity.", std::nullopt},
                1,
                DoneReason::completed};
      }
      return {{"You put the " + shown + " in the box. That is not the right quantity.",
               std::nullopt},
              0,
              DoneReason::failed};
    }
  }
  throw InvalidAction(std::string(action));
}

std::string ArithmeticGame::respond(std::string_view action) const {
  const auto query = modules::parse_query(action);
  if (query && std::holds_alternative<modules::CalcQuery>(*query)) {
    const auto& q = std::get<modules::CalcQuery>(*query);
    return modules::calc(q.op, q.a, q.b);
  }
  return std::string(modules::kInvalidCalc);
}

std::string ArithmeticGame::inventory_text() const {
  std::vector<std::string> items;
  if (problem_held_) items.emplace_back("math problem");
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    if (held_[i]) items.push_back(bundles_[i].display());
  }
  return render_inventory(items);
}

std::string ArithmeticGame::digest() const {
  std::string d = "arithmetic|" + std::string(modules::calc_verb(problem_.op)) + " " +
                  std::to_string(problem_.a) + " " + std::to_string(problem_.b) + "|";
  for (std::size_t i = 0; i < bundles_.size(); ++i) {
    d += bundles_[i].display() + (held_[i] ? "+held;" : ";");
  }
  d += problem_held_ ? "P" : "p";
  d += problem_read_ ? "R" : "r";
  return d;
}

}  // namespace symworld
