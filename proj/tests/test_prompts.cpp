#include <doctest.h>

#include <fstream>
#include <sstream>

#include "symworld/arithmetic.hpp"
#include "symworld/engine.hpp"
#include "symworld/errors.hpp"
#include "symworld/mapreader.hpp"
#include "symworld/prompts.hpp"

using namespace symworld;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(SYMWORLD_GOLDEN_DIR) + "/" + name, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string description_for(TaskKind kind) {
  if (kind == TaskKind::mapreader) {
    RoomGraph graph{{"chamber", "canteen", "pantry", "lounge"}, {{0, 1}, {1, 2}, {1, 3}}};
    return MapReaderGame::from_graph(graph, "pantry", "chamber", "chamber").task_description();
  }
  return Episode::reset(kind, Seed{2000}).task_description();
}

}  // namespace

TEST_CASE("role initialization matches the golden files byte for byte") {
  for (auto kind : kAllTasks) {
    CAPTURE(task_name(kind));
    const auto want = golden("role_init_" + std::string(task_name(kind)) + ".txt");
    CHECK(build_role_init(kind, description_for(kind)) == want);
  }
}

TEST_CASE("action query matches the golden file") {
  std::vector<std::string> env{"look around", "take math problem"};
  const ActionSet actions(env, {});
  const auto q = build_action_query(
      "You are in the kitchen. In one part of the room you see a box, that is empty. There is "
      "also a math problem.",
      "Your inventory is empty.", 0, actions);
  CHECK(q == golden("action_query_start.txt"));
}

TEST_CASE("action query carries every field") {
  std::vector<std::string> env{"look around", "take 56 apples"};
  std::vector<std::string> mod{"mul 8 7"};
  const auto q = build_action_query("OBS-TEXT", "Your inventory contains: math problem.", 3,
                                    ActionSet(env, mod));
  CHECK(q.starts_with("OBS-TEXT\nYour inventory contains: math problem.\n"));
  CHECK(q.find("Your current score is: 3\n") != std::string::npos);
  CHECK(q.find("The valid action set contains: look around, take 56 apples, mul 8 7.\n") !=
        std::string::npos);
  CHECK(q.ends_with("you cannot decline to take an action."));
  CHECK_THROWS_AS(build_action_query("x", "y", 0, ActionSet{}), ConfigError);
}

TEST_CASE("prompt bundle pieces") {
  const auto b = prompt_bundle(TaskKind::twc, "DESC");
  CHECK(b.role_init.starts_with("You are a robot. DESC\n"));
  CHECK(b.role_init.find("{TASK DESC}") == std::string::npos);
  CHECK(b.action_query_template == kActionQueryTemplate);
  CHECK(b.constraint_block == constraint_block(TaskKind::twc));
  for (auto kind : kAllTasks) {
    const auto block = constraint_block(kind);
    CHECK(block.ends_with("\n"));
    CHECK(block.find("  ") == std::string_view::npos);
    CHECK(block.find('`') == std::string_view::npos);
  }
}
