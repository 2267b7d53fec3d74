#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "symworld/trace.hpp"
#include "symworld/types.hpp"

namespace symworld {

enum class ChatRole { system, user, assistant };
std::string_view role_name(ChatRole role);

struct ChatMessage {
  ChatRole role = ChatRole::user;
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

inline constexpr std::string_view kApiKeyEnv = "SYMWORLD_API_KEY";

struct LlmConfig {
  std::string endpoint = "https://api.openai.com/v1";
  std::string model = "gpt-3.5-turbo";
  double temperature = 0.0;
  int max_tokens = 32;
  std::chrono::milliseconds timeout{60'000};
  int retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{8'000};
  std::string api_key;
  /// True when the endpoint was set explicitly (config file or flag).
  bool endpoint_configured = false;

  /// Reads the credential from SYMWORLD_API_KEY; nothing else comes from the
  /// environment.
  void load_credential_from_environment();
};

/// Anything that can turn a conversation into one reply.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string complete(std::span<const ChatMessage> messages) = 0;
};

/// {model, messages:[{role, content}...], temperature, max_tokens}
nlohmann::json build_request_body(const LlmConfig& config, std::span<const ChatMessage> messages);
/// Content of the first choice's message. Throws ApiError if absent.
std::string parse_completion(std::string_view body);

/// Retry delay before attempt `attempt` (1-based): initial * 2^(attempt-1),
/// capped at max_backoff.
std::chrono::milliseconds backoff_delay(const LlmConfig& config, int attempt);

/// POSTs to <endpoint>/chat/completions with a bearer token. Retries
/// connection failures, 408, 429 and 5xx with exponential backoff. Each call is
/// independent, so one client can serve concurrent episodes.
class HttpChatClient : public ChatClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit HttpChatClient(LlmConfig config, Sleeper sleeper = {});
  std::string complete(std::span<const ChatMessage> messages) override;
  const LlmConfig& config() const noexcept { return config_; }

 private:
  LlmConfig config_;
  Sleeper sleep_;
  std::string origin_;     // scheme://host[:port]
  std::string base_path_;  // path prefix of the endpoint, no trailing slash
};

enum class Exhaustion { repeat_last, error };

/// Returns scripted replies in order.
class ScriptedMock : public ChatClient {
 public:
  explicit ScriptedMock(std::vector<std::string> replies, Exhaustion mode = Exhaustion::error);
  std::string complete(std::span<const ChatMessage> messages) override;

  std::size_t calls() const;
  /// Conversations received, in call order.
  std::vector<std::vector<ChatMessage>> received() const;

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> replies_;
  Exhaustion mode_;
  std::size_t next_ = 0;
  std::vector<std::vector<ChatMessage>> received_;
};

/// JSONL mock script. Each line is either a JSON string (a reply for any
/// episode) or an object {"reply": ..., "task"?: ..., "seed"?: ...} scoped
/// to one episode.
struct MockScriptLine {
  std::optional<TaskKind> task;
  std::optional<Seed> seed;
  std::string reply;
  friend bool operator==(const MockScriptLine&, const MockScriptLine&) = default;
};

class MockScript {
 public:
  MockScript() = default;
  explicit MockScript(std::vector<MockScriptLine> lines) : lines_(std::move(lines)) {}

  static MockScript parse(std::string_view jsonl);
  static MockScript load(const std::filesystem::path& path);
  std::string to_jsonl() const;

  /// Unscoped lines plus lines matching (task, seed), in file order.
  std::vector<std::string> replies_for(TaskKind task, Seed seed) const;
  const std::vector<MockScriptLine>& lines() const noexcept { return lines_; }
  void append(const MockScript& other);

 private:
  std::vector<MockScriptLine> lines_;
};

/// One scoped reply per recorded action, so replaying it through the LLM
/// policy reproduces the trace.
MockScript mock_script_from_trace(const EpisodeTrace& trace);

}  // namespace symworld
