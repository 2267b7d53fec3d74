#include "symworld/agents.hpp"

#include <algorithm>

#include "symworld/errors.hpp"
#include "symworld/modules.hpp"
#include "symworld/prompts.hpp"
#include "symworld/text.hpp"

namespace symworld {

PolicyDecision PolicyDecision::select(const ActionSet& actions, std::string_view text) {
  const Action* a = actions.find(text);
  if (!a) throw InvalidAction(std::string(text));
  return PolicyDecision(*a);
}

PolicyDecision parse_reply(std::string_view raw, const ActionSet& actions) {
  const std::string reply = canonicalize(raw);
  if (actions.contains(reply)) {
    auto d = PolicyDecision::select(actions, reply);
    d.raw_reply = std::string(raw);
    return d;
  }

  std::vector<const Action*> hits;
  for (const auto& a : actions) {
    if (contains_bounded(reply, a.text)) hits.push_back(&a);
  }
  // A hit that only occurs as part of a longer hit does not count.
  std::erase_if(hits, [&](const Action* a) {
    return std::any_of(hits.begin(), hits.end(), [&](const Action* b) {
      return b != a && b->text.size() > a->text.size() && contains_bounded(b->text, a->text);
    });
  });
  if (hits.size() != 1) throw ReplyUnparseable(std::string(raw));

  auto d = PolicyDecision::select(actions, hits.front()->text);
  d.raw_reply = std::string(raw);
  d.repair_applied = true;
  return d;
}

// --- Random -----------------------------------------------------------------

PolicyDecision RandomPolicy::decide(const Episode& episode) {
  const auto& actions = episode.valid_actions();
  if (actions.empty()) throw AgentAborted("no valid actions");
  return PolicyDecision::select(actions, actions[rng_.below(actions.size())].text);
}

// --- Oracle -----------------------------------------------------------------

namespace {

std::string step_towards(const MapReaderGame& g, const std::string& destination) {
  const auto path = modules::shortest_path(g.graph().adjacency(), g.agent_room(), destination);
  if (!path || path->empty()) throw AgentAborted("oracle found no route to " + destination);
  return "go to " + path->front();
}

}  // namespace

void OraclePolicy::begin_episode(const Episode& /*episode*/) { used_modules_.clear(); }

PolicyDecision OraclePolicy::decide(const Episode& episode) {
  return PolicyDecision::select(episode.valid_actions(), next_action(episode));
}

std::string OraclePolicy::next_action(const Episode& episode) {
  // Each module query is asked once per episode.
  auto once = [this](std::string query) -> std::optional<std::string> {
    if (used_modules_.contains(query)) return std::nullopt;
    used_modules_.insert(query);
    return query;
  };

  const GameState& state = episode.state();
  if (const auto* g = std::get_if<ArithmeticGame>(&state)) {
    if (!g->problem_held()) return "take math problem";
    if (!g->problem_read()) return "read math problem";
    const auto& p = g->problem();
    if (auto q = once(modules::render_query(modules::CalcQuery{p.op, p.a, p.b}))) return *q;
    const auto& answer = g->correct_bundle();
    for (std::size_t i = 0; i < g->bundles().size(); ++i) {
      if (g->bundles()[i] != answer) continue;
      return g->bundle_held(i) ? "put " + answer.display() + " in box" : "take " + answer.display();
    }
  } else if (const auto* g = std::get_if<MapReaderGame>(&state)) {
    if (!g->map_read()) return "read map";
    if (auto q = once(modules::render_query(modules::NavigateQuery{g->coin_room()}))) return *q;
    if (!g->coin_held()) {
      return g->agent_room() == g->coin_room() ? "take coin" : step_towards(*g, g->coin_room());
    }
    return g->agent_room() == g->box_room() ? "put coin in box" : step_towards(*g, g->box_room());
  } else if (const auto* g = std::get_if<SortingGame>(&state)) {
    if (auto q = once(modules::render_query(modules::SortQuery{}))) return *q;
    if (const auto i = g->smallest_remaining()) {
      const auto display = g->items()[*i].display();
      return g->held(*i) ? "put " + display + " in box" : "take " + display;
    }
  } else if (const auto* g = std::get_if<TwcGame>(&state)) {
    for (const auto& o : g->objects()) {
      if (o.status == TwcGame::Status::placed) continue;
      if (auto q = once(modules::render_query(modules::KbQuery{o.name}))) return *q;
      if (o.status == TwcGame::Status::misplaced) return "take " + o.name;
      return "put " + o.name + " in " + o.home;
    }
  }
  throw AgentAborted("oracle has no move");
}

// --- Transcript -------------------------------------------------------------

ChatTranscript::ChatTranscript(std::string role_init) {
  messages_.push_back({ChatRole::system, std::move(role_init)});
}

void ChatTranscript::add_query(std::string text) {
  messages_.push_back({ChatRole::user, std::move(text)});
}

void ChatTranscript::add_reply(std::string text) {
  messages_.push_back({ChatRole::assistant, std::move(text)});
}

std::vector<ChatMessage> ChatTranscript::window(std::size_t max_turns,
                                                std::size_t char_budget) const {
  std::size_t first = 0;
  std::vector<ChatMessage> head;
  if (!messages_.empty() && messages_.front().role == ChatRole::system) {
    head.push_back(messages_.front());
    first = 1;
  }
  std::size_t end = messages_.size();
  std::optional<ChatMessage> pending;
  if (end > first && messages_[end - 1].role == ChatRole::user) {
    pending = messages_[end - 1];
    --end;
  }

  // Completed turns as [begin, end) ranges, oldest first.
  std::vector<std::pair<std::size_t, std::size_t>> turns;
  for (std::size_t i = first; i < end;) {
    std::size_t j = i + 1;
    while (j < end && messages_[j].role != ChatRole::user) ++j;
    turns.emplace_back(i, j);
    i = j;
  }

  auto chars = [&](std::size_t from_turn) {
    std::size_t total = pending ? pending->content.size() : 0;
    for (const auto& m : head) total += m.content.size();
    for (std::size_t t = from_turn; t < turns.size(); ++t) {
      for (std::size_t k = turns[t].first; k < turns[t].second; ++k) total += messages_[k].content.size();
    }
    return total;
  };

  std::size_t keep_from = 0;
  while (keep_from < turns.size() &&
         ((max_turns != 0 && turns.size() - keep_from > max_turns) ||
          (char_budget != 0 && chars(keep_from) > char_budget))) {
    ++keep_from;
  }

  std::vector<ChatMessage> out = std::move(head);
  for (std::size_t t = keep_from; t < turns.size(); ++t) {
    out.insert(out.end(), messages_.begin() + static_cast<std::ptrdiff_t>(turns[t].first),
               messages_.begin() + static_cast<std::ptrdiff_t>(turns[t].second));
  }
  if (pending) out.push_back(*pending);
  return out;
}

// --- LLM policy -------------------------------------------------------------

namespace {

std::string ask(ChatTranscript& transcript, ChatClient& llm, const LlmPolicyOptions& options) {
  const auto messages = transcript.window(options.max_history_turns, options.context_char_budget);
  std::string reply;
  try {
    reply = llm.complete(messages);
  } catch (const TransportError& e) {
    throw AgentAborted(e.what());
  } catch (const ApiError& e) {
    throw AgentAborted(e.what());
  } catch (const MockExhausted& e) {
    throw AgentAborted(e.what());
  }
  transcript.add_reply(reply);
  return reply;
}

}  // namespace

std::pair<PolicyDecision, ChatTranscript> llm_policy_step(ChatTranscript transcript,
                                                          const Observation& observation,
                                                          std::string_view inventory, int score,
                                                          const ActionSet& actions,
                                                          ChatClient& llm,
                                                          const LlmPolicyOptions& options) {
  if (actions.empty()) throw AgentAborted("no valid actions");
  const std::string query = build_action_query(observation.text, inventory, score, actions);
  transcript.add_query(query);
  std::string reply = ask(transcript, llm, options);
  try {
    auto d = parse_reply(reply, actions);
    d.prompt = query;
    return {std::move(d), std::move(transcript)};
  } catch (const ReplyUnparseable&) {
  }

  const std::string retry = "Your answer is not in the valid action set. The valid action set "
                            "contains: " + join(actions.texts(), ", ") +
                            ".\nRespond with exactly one of these actions.";
  transcript.add_query(retry);
  reply = ask(transcript, llm, options);
  try {
    auto d = parse_reply(reply, actions);
    d.prompt = retry;
    d.repair_applied = true;
    return {std::move(d), std::move(transcript)};
  } catch (const ReplyUnparseable&) {
  }

  const std::string fallback = actions.contains("look around") ? "look around" : actions[0].text;
  auto d = PolicyDecision::select(actions, fallback);
  d.raw_reply = reply;
  d.repair_applied = true;
  d.prompt = retry;
  return {std::move(d), std::move(transcript)};
}

LlmPolicy::LlmPolicy(std::shared_ptr<ChatClient> client, LlmPolicyOptions options)
    : client_(std::move(client)), options_(options) {
  if (!client_) throw ConfigError("LLM policy needs a chat client");
}

void LlmPolicy::begin_episode(const Episode& episode) {
  transcript_ = ChatTranscript(build_role_init(episode.task(), episode.task_description()));
}

PolicyDecision LlmPolicy::decide(const Episode& episode) {
  auto [decision, transcript] =
      llm_policy_step(std::move(transcript_), episode.observation(), episode.inventory_text(),
                      episode.raw_score(), episode.valid_actions(), *client_, options_);
  transcript_ = std::move(transcript);
  return std::move(decision);
}

// --- Episode loop -----------------------------------------------------------

EpisodeTrace run_episode(Episode& episode, Policy& policy, const StepObserver& observer) {
  EpisodeTrace trace;
  trace.task = episode.task();
  trace.seed = episode.seed();
  trace.split = split_of(episode.seed());

  policy.begin_episode(episode);
  while (!episode.done()) {
    std::optional<PolicyDecision> decision;
    try {
      decision = policy.decide(episode);
    } catch (const AgentAborted&) {
      episode.abort();
      break;
    }
    TraceStep step;
    step.observation = episode.observation().text;
    const StepResult result = episode.step(decision->chosen().text);
    step.step = episode.turns();
    step.action = decision->chosen().text;
    step.origin = result.origin;
    step.reward = result.reward;
    step.raw_score = result.raw_score;
    if (observer) observer(step, *decision, result);
    trace.steps.push_back(std::move(step));
  }

  trace.final_score = episode.normalized_score();
  trace.step_count = episode.steps();
  trace.done_reason = episode.done_reason();
  return trace;
}

EpisodeTrace run_episode(TaskKind task, Seed seed, Policy& policy, const EpisodeOptions& options,
                         const StepObserver& observer) {
  Episode episode = Episode::reset(task, seed, options);
  return run_episode(episode, policy, observer);
}

}  // namespace symworld
