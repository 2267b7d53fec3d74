#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symworld/engine.hpp"
#include "symworld/llm_client.hpp"
#include "symworld/rng.hpp"
#include "symworld/trace.hpp"

namespace symworld {

/// A chosen action; only constructible from a member of an ActionSet.
class PolicyDecision {
 public:
  /// Throws InvalidAction if `text` is not in `actions`.
  static PolicyDecision select(const ActionSet& actions, std::string_view text);

  const Action& chosen() const noexcept { return chosen_; }
  std::optional<std::string> raw_reply;
  bool repair_applied = false;
  /// Last action query sent for this decision, when an LLM was involved.
  std::optional<std::string> prompt;

 private:
  explicit PolicyDecision(Action chosen) : chosen_(std::move(chosen)) {}
  Action chosen_;
};

/// Exact canonical match, otherwise the single action found verbatim (word
/// bounded) inside the reply, with matches that sit inside a longer matching
/// action discarded. Throws ReplyUnparseable when neither applies.
PolicyDecision parse_reply(std::string_view raw, const ActionSet& actions);

class Policy {
 public:
  virtual ~Policy() = default;
  virtual void begin_episode(const Episode& /*episode*/) {}
  virtual PolicyDecision decide(const Episode& episode) = 0;
};

/// Uniform over the valid action set.
class RandomPolicy : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
  PolicyDecision decide(const Episode& episode) override;

 private:
  Rng rng_;
};

/// Scripted optimal play with full view of the world.
///  arithmetic: take/read the problem, one calculator call, take and put the answer bundle
///  mapreader:  read map, one navigator call, walk to the coin, take it, walk back, put it
///  sorting:    one "sort ascending", then take/put in ascending order
///  twc:        per object, query the knowledge base, take it, put it at its location
class OraclePolicy : public Policy {
 public:
  void begin_episode(const Episode& episode) override;
  PolicyDecision decide(const Episode& episode) override;

 private:
  std::string next_action(const Episode& episode);
  std::set<std::string, std::less<>> used_modules_;
};

class ChatTranscript {
 public:
  ChatTranscript() = default;
  explicit ChatTranscript(std::string role_init);

  const std::vector<ChatMessage>& messages() const noexcept { return messages_; }
  void add_query(std::string text);
  void add_reply(std::string text);

  /// Role init plus the most recent query/reply turns. Turns are dropped
  /// oldest first while more than `max_turns` (0 = no limit) remain or the
  /// character total exceeds `char_budget` (0 = no limit). The final pending
  /// query is always kept.
  std::vector<ChatMessage> window(std::size_t max_turns, std::size_t char_budget) const;

 private:
  std::vector<ChatMessage> messages_;
};

struct LlmPolicyOptions {
  std::size_t max_history_turns = 0;
  std::size_t context_char_budget = 0;
};

/// One action query -> completion -> parse cycle. An unparseable reply is
/// re-prompted once; after that the policy falls back to "look around" when
/// offered, else the first action. Client failures become AgentAborted.
std::pair<PolicyDecision, ChatTranscript> llm_policy_step(ChatTranscript transcript,
                                                          const Observation& observation,
                                                          std::string_view inventory, int score,
                                                          const ActionSet& actions,
                                                          ChatClient& llm,
                                                          const LlmPolicyOptions& options = {});

class LlmPolicy : public Policy {
 public:
  LlmPolicy(std::shared_ptr<ChatClient> client, LlmPolicyOptions options = {});
  void begin_episode(const Episode& episode) override;
  PolicyDecision decide(const Episode& episode) override;
  const ChatTranscript& transcript() const noexcept { return transcript_; }

 private:
  std::shared_ptr<ChatClient> client_;
  LlmPolicyOptions options_;
  ChatTranscript transcript_;
};

/// Called after every accepted action.
using StepObserver =
    std::function<void(const TraceStep&, const PolicyDecision&, const StepResult&)>;

/// Runs to completion. An AgentAborted from the policy ends the episode with
/// done_reason aborted and the score so far.
EpisodeTrace run_episode(Episode& episode, Policy& policy, const StepObserver& observer = {});
EpisodeTrace run_episode(TaskKind task, Seed seed, Policy& policy,
                         const EpisodeOptions& options = {}, const StepObserver& observer = {});

}  // namespace symworld
