#include <doctest.h>

#include "support/garbage_client.hpp"
#include "symworld/agents.hpp"
#include "symworld/errors.hpp"
#include "symworld/prompts.hpp"

using namespace symworld;

namespace {

ActionSet set_of(std::vector<std::string> env, std::vector<std::string> mod = {}) {
  return ActionSet(env, mod);
}

}  // namespace

TEST_CASE("reply parsing") {
  const auto acts = set_of({"look around", "read map", "task", "go to canteen"}, {"next step to pantry"});
  CHECK(parse_reply("read map", acts).chosen().text == "read map");
  CHECK_FALSE(parse_reply("read map", acts).repair_applied);
  CHECK(parse_reply("  Read Map. ", acts).chosen().text == "read map");

  const auto wrapped = parse_reply("I will choose `read map`.", acts);
  CHECK(wrapped.chosen().text == "read map");
  CHECK(wrapped.repair_applied);
  CHECK(wrapped.raw_reply == "I will choose `read map`.");

  CHECK_THROWS_AS(parse_reply("do everything", acts), ReplyUnparseable);
  CHECK_THROWS_AS(parse_reply("", acts), ReplyUnparseable);
  CHECK_THROWS_AS(parse_reply("read map or look around", acts), ReplyUnparseable);
  CHECK_THROWS_AS(parse_reply("unread mapping", acts), ReplyUnparseable);
}

TEST_CASE("a shorter action inside a longer one does not make a reply ambiguous") {
  const auto acts = set_of({"take 5 apples", "take 5 apples and pears"});
  CHECK(parse_reply("I choose take 5 apples and pears now", acts).chosen().text ==
        "take 5 apples and pears");
  CHECK(parse_reply("take 5 apples, please", acts).chosen().text == "take 5 apples");
}

TEST_CASE("decisions can only name valid actions") {
  const auto acts = set_of({"look around"});
  CHECK(PolicyDecision::select(acts, "look around").chosen().origin == Origin::environment);
  CHECK_THROWS_AS(PolicyDecision::select(acts, "dance"), InvalidAction);
}

TEST_CASE("oracle solves every task") {
  for (auto kind : kAllTasks) {
    for (std::uint64_t s = 2000; s < 2100; ++s) {
      OraclePolicy oracle;
      const auto trace = run_episode(kind, Seed{s}, oracle);
      CHECK(trace.final_score == 1.0);
      CHECK(trace.done_reason == DoneReason::completed);
    }
  }
}

TEST_CASE("random policy is reproducible") {
  RandomPolicy a(42);
  RandomPolicy b(42);
  CHECK(run_episode(TaskKind::twc, Seed{2001}, a) == run_episode(TaskKind::twc, Seed{2001}, b));
}

TEST_CASE("transcript window") {
  ChatTranscript t("ROLE");
  for (int i = 0; i < 5; ++i) {
    t.add_query("q" + std::to_string(i));
    t.add_reply("r" + std::to_string(i));
  }
  t.add_query("pending");

  const auto all = t.window(0, 0);
  CHECK(all.size() == 12);
  CHECK(all.front().role == ChatRole::system);
  for (std::size_t i = 1; i < all.size(); ++i)
    CHECK(all[i].role == (i % 2 == 1 ? ChatRole::user : ChatRole::assistant));

  const auto two = t.window(2, 0);
  REQUIRE(two.size() == 6);
  CHECK(two[0].content == "ROLE");
  CHECK(two[1].content == "q3");
  CHECK(two[4].content == "r4");
  CHECK(two[5].content == "pending");

  const auto tight = t.window(0, 1);
  REQUIRE(tight.size() == 2);
  CHECK(tight[1].content == "pending");

  const auto budget = t.window(0, std::string("ROLE").size() + 7 + 4);
  REQUIRE(budget.size() == 4);
  CHECK(budget[1].content == "q4");
}

TEST_CASE("llm step with a clean reply") {
  auto ep = Episode::reset(TaskKind::arithmetic, Seed{2000});
  ScriptedMock mock({"take math problem"});
  ChatTranscript t(build_role_init(ep.task(), ep.task_description()));
  auto [d, after] = llm_policy_step(t, ep.observation(), ep.inventory_text(), 0, ep.valid_actions(), mock);
  CHECK(d.chosen().text == "take math problem");
  CHECK_FALSE(d.repair_applied);
  REQUIRE(mock.calls() == 1);
  const auto sent = mock.received()[0];
  REQUIRE(sent.size() == 2);
  CHECK(sent[0].role == ChatRole::system);
  CHECK(sent[1].content == build_action_query(ep.observation().text, ep.inventory_text(), 0, ep.valid_actions()));
  CHECK(after.messages().size() == 3);
  CHECK(after.messages().back().content == "take math problem");
}

TEST_CASE("llm step re-prompts once after garbage") {
  const auto acts = set_of({"look around", "take math problem"});
  ScriptedMock mock({"do everything", "take math problem"});
  auto [d, after] = llm_policy_step(ChatTranscript("R"), Observation{"obs", {}}, "inv", 0, acts, mock);
  CHECK(d.chosen().text == "take math problem");
  CHECK(d.repair_applied);
  REQUIRE(mock.calls() == 2);
  const auto second = mock.received()[1];
  CHECK(second.back().content.find("The valid action set contains: look around, take math problem.") !=
        std::string::npos);
  CHECK(after.messages().size() == 5);
}

TEST_CASE("llm step falls back after two bad replies") {
  ScriptedMock mock({"???", "no idea"});
  auto [d, _] = llm_policy_step(ChatTranscript("R"), Observation{"obs", {}}, "inv", 0,
                                set_of({"read map", "look around"}), mock);
  CHECK(d.chosen().text == "look around");
  CHECK(d.repair_applied);

  ScriptedMock mock2({"???", "no idea"});
  auto [d2, _2] = llm_policy_step(ChatTranscript("R"), Observation{"obs", {}}, "inv", 0,
                                  set_of({"read map", "task"}), mock2);
  CHECK(d2.chosen().text == "read map");
}

TEST_CASE("client failures abort the episode") {
  auto mock = std::make_shared<ScriptedMock>(std::vector<std::string>{"take math problem"});
  LlmPolicy policy(mock);
  auto ep = Episode::reset(TaskKind::arithmetic, Seed{2000});
  const auto trace = run_episode(ep, policy);
  CHECK(trace.done_reason == DoneReason::aborted);
  CHECK(trace.steps.size() == 1);
  CHECK(ep.done_reason() == DoneReason::aborted);
  CHECK_THROWS_AS(LlmPolicy(nullptr), ConfigError);
}

TEST_CASE("replaying an oracle trace through the llm policy reproduces it") {
  for (auto kind : kAllTasks) {
    for (std::uint64_t s = 2000; s < 2020; ++s) {
      OraclePolicy oracle;
      const auto gold = run_episode(kind, Seed{s}, oracle);
      const auto script = mock_script_from_trace(gold);
      LlmPolicy llm(std::make_shared<ScriptedMock>(script.replies_for(kind, Seed{s})));
      const auto replay = run_episode(kind, Seed{s}, llm);
      CHECK(replay == gold);
    }
  }
}

namespace {

// Junk on every third call, so a junk reply is always followed by a real one.
class EveryThirdJunk : public ChatClient {
 public:
  explicit EveryThirdJunk(std::shared_ptr<ChatClient> inner) : inner_(std::move(inner)) {}
  std::string complete(std::span<const ChatMessage> messages) override {
    if (++calls_ % 3 == 0) return "I would rather not say.";
    return inner_->complete(messages);
  }

 private:
  std::shared_ptr<ChatClient> inner_;
  int calls_ = 0;
};

}  // namespace

TEST_CASE("isolated junk replies are repaired by the re-prompt") {
  for (auto kind : kAllTasks) {
    for (std::uint64_t s = 2000; s < 2020; ++s) {
      OraclePolicy oracle;
      const auto gold = run_episode(kind, Seed{s}, oracle);
      auto inner = std::make_shared<ScriptedMock>(mock_script_from_trace(gold).replies_for(kind, Seed{s}));
      LlmPolicy llm(std::make_shared<EveryThirdJunk>(inner));
      const auto replay = run_episode(kind, Seed{s}, llm);
      CHECK(replay.actions() == gold.actions());
      CHECK(replay.final_score == 1.0);
    }
  }
}

TEST_CASE("garbage injection wrapper") {
  auto inner = std::make_shared<ScriptedMock>(std::vector<std::string>{"ok"}, Exhaustion::repeat_last);
  testing_support::GarbageInjectingClient always(inner, 1.0, 1);
  for (int i = 0; i < 5; ++i) always.complete({});
  CHECK(always.injected() == 5);
  CHECK(inner->calls() == 0);
  testing_support::GarbageInjectingClient never(inner, 0.0, 1);
  CHECK(never.complete({}) == "ok");
  CHECK(inner->calls() == 1);
}
