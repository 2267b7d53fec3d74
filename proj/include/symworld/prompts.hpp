#pragma once

#include <string>
#include <string_view>

#include "symworld/types.hpp"

namespace symworld {

/// Role initialization template; {TASK DESC} is substituted.
inline constexpr std::string_view kRoleInitTemplate =
    "You are a robot. {TASK DESC}\n"
    "You are required to choose action from the valid action set to complete the task step by "
    "step.\n"
    "To take action, respond with an action in the valid action set.\n";

/// Per-turn template; {OBS}, {INV STATE}, {SCORE} and {VALID ACT SET} are substituted.
inline constexpr std::string_view kActionQueryTemplate =
    "{OBS}\n"
    "{INV STATE}\n"
    "Your current score is: {SCORE}\n"
    "The valid action set contains: {VALID ACT SET}.\n"
    "Please choose one action from the valid action set to finish the task step by step.\n"
    "Do NOT respond with any other text, and you cannot decline to take an action.";

/// Per-task rules appended to the role initialization.
std::string_view constraint_block(TaskKind kind);

struct PromptBundle {
  std::string role_init;
  std::string action_query_template;
  std::string constraint_block;
};

PromptBundle prompt_bundle(TaskKind kind, std::string_view task_description);

/// Role initialization with the task's constraint block appended.
std::string build_role_init(TaskKind kind, std::string_view task_description);

/// Actions are comma-joined in set order. Throws ConfigError for an empty set.
std::string build_action_query(std::string_view observation, std::string_view inventory,
                               int score, const ActionSet& actions);

}  // namespace symworld
