#include "symworld/prompts.hpp"

#include "symworld/errors.hpp"
#include "symworld/text.hpp"

namespace symworld {
namespace {

constexpr std::string_view kArithmeticRules =
    "There are some rules for choosing action:\n"
    "1) If you do not see the items that meet your requirements, please choose 'look around'.\n"
    "2) If you want to put something in the box, please first take it and then put it in box.\n"
    "3) For example, if you want to put 20 apples in the box, you should first choose 'take 20 "
    "apples' and then choose 'put 20 apples in box'.\n"
    "4) The next action of 'take math problem' is 'read math problem'.\n"
    "5) However, please never choose 'put math problem in box' as action.\n";

constexpr std::string_view kMapReaderRules =
    "1) At the beginning choose 'read map' to get the unknown surrounding layout.\n"
    "2) After that, if you do not know how to get to SOMEPLACE, you can choose 'next step to "
    "SOMEPLACE' to get the path to SOMEPLACE.\n"
    "3) To choose the action, 'task', you can recall your task.\n"
    "4) Do NOT go to anywhere that is unnecessary for finishing the task.\n";

constexpr std::string_view kSortingRules =
    "To sort the items one by one, please follow the instruction:\n"
    "1) choose 'sort ascending' or 'sort descending' to know which one should be sort next.\n"
    "2) take the items.\n"
    "3) put the items in box.\n";

constexpr std::string_view kTwcRules =
    "1) When you take the item, you will get positive score.\n"
    "2) When you put the item in the right place, you will get higher positive score. Otherwise "
    "you get 0.\n"
    "3) You are supposed to get as much score as possible.\n";

std::string substitute(std::string text, std::string_view key, std::string_view value) {
  const auto pos = text.find(key);
  if (pos != std::string::npos) text.replace(pos, key.size(), value);
  return text;
}

}  // namespace

std::string_view constraint_block(TaskKind kind) {
  switch (kind) {
    case TaskKind::arithmetic: return kArithmeticRules;
    case TaskKind::mapreader: return kMapReaderRules;
    case TaskKind::sorting: return kSortingRules;
    case TaskKind::twc: return kTwcRules;
  }
  return {};
}

PromptBundle prompt_bundle(TaskKind kind, std::string_view task_description) {
  return {substitute(std::string(kRoleInitTemplate), "{TASK DESC}", task_description),
          std::string(kActionQueryTemplate), std::string(constraint_block(kind))};
}

std::string build_role_init(TaskKind kind, std::string_view task_description) {
  auto bundle = prompt_bundle(kind, task_description);
  return bundle.role_init + bundle.constraint_block;
}

std::string build_action_query(std::string_view observation, std::string_view inventory,
                               int score, const ActionSet& actions) {
  if (actions.empty()) throw ConfigError("action query needs a non-empty action set");
  std::string out(kActionQueryTemplate);
  out = substitute(std::move(out), "{OBS}", observation);
  out = substitute(std::move(out), "{INV STATE}", inventory);
  out = substitute(std::move(out), "{SCORE}", std::to_string(score));
  return substitute(std::move(out), "{VALID ACT SET}", join(actions.texts(), ", "));
}

}  // namespace symworld
