#include "symworld/llm_client.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "symworld/errors.hpp"
#include "symworld/text.hpp"

namespace symworld {

using nlohmann::json;

std::string_view role_name(ChatRole role) {
  switch (role) {
    case ChatRole::system: return "system";
    case ChatRole::user: return "user";
    case ChatRole::assistant: return "assistant";
  }
  return "user";
}

void LlmConfig::load_credential_from_environment() {
  if (const char* key = std::getenv(std::string(kApiKeyEnv).c_str()); key && *key) api_key = key;
}

json build_request_body(const LlmConfig& config, std::span<const ChatMessage> messages) {
  json msgs = json::array();
  for (const auto& m : messages) msgs.push_back({{"role", role_name(m.role)}, {"content", m.content}});
  return {{"model", config.model},
          {"messages", std::move(msgs)},
          {"temperature", config.temperature},
          {"max_tokens", config.max_tokens}};
}

std::string parse_completion(std::string_view body) {
  const json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded()) throw ApiError(200, "response is not JSON");
  try {
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception&) {
    throw ApiError(200, "response has no choices[0].message.content");
  }
}

std::chrono::milliseconds backoff_delay(const LlmConfig& config, int attempt) {
  auto delay = config.initial_backoff;
  for (int i = 1; i < attempt && delay < config.max_backoff; ++i) delay *= 2;
  return std::min(delay, config.max_backoff);
}

// --- HTTP -------------------------------------------------------------------

namespace {

bool transient_status(int status) { return status == 408 || status == 429 || status >= 500; }

std::string excerpt(const std::string& body) {
  constexpr std::size_t kMax = 200;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

}  // namespace

HttpChatClient::HttpChatClient(LlmConfig config, Sleeper sleeper)
    : config_(std::move(config)), sleep_(std::move(sleeper)) {
  if (!sleep_) sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.endpoint, m, kUrl)) {
    throw ConfigError("endpoint must be an http(s) URL: " + config_.endpoint);
  }
  origin_ = m[1].str();
  base_path_ = m[2].str();
  while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
  if (config_.retries < 0) throw ConfigError("retries must be non-negative");
}

std::string HttpChatClient::complete(std::span<const ChatMessage> messages) {
  const std::string body = build_request_body(config_, messages).dump();
  const std::string path = base_path_ + "/chat/completions";
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  std::string last_error;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    if (attempt > 0) sleep_(backoff_delay(config_, attempt));

    httplib::Client client(origin_);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return parse_completion(res->body);
    if (!transient_status(res->status)) throw ApiError(res->status, excerpt(res->body));
    last_error = "status " + std::to_string(res->status);
  }
  throw TransportError("giving up after " + std::to_string(config_.retries + 1) +
                       " attempts: " + last_error);
}

// --- Scripted mock ----------------------------------------------------------

ScriptedMock::ScriptedMock(std::vector<std::string> replies, Exhaustion mode)
    : replies_(std::move(replies)), mode_(mode) {}

std::string ScriptedMock::complete(std::span<const ChatMessage> messages) {
  std::lock_guard lock(mutex_);
  received_.emplace_back(messages.begin(), messages.end());
  if (next_ < replies_.size()) return replies_[next_++];
  if (mode_ == Exhaustion::repeat_last && !replies_.empty()) return replies_.back();
  throw MockExhausted();
}

std::size_t ScriptedMock::calls() const {
  std::lock_guard lock(mutex_);
  return received_.size();
}

std::vector<std::vector<ChatMessage>> ScriptedMock::received() const {
  std::lock_guard lock(mutex_);
  return received_;
}

// --- Mock script ------------------------------------------------------------

MockScript MockScript::parse(std::string_view jsonl) {
  std::vector<MockScriptLine> lines;
  int line_no = 0;
  for (const auto& raw : split_lines(jsonl)) {
    ++line_no;
    if (raw.find_first_not_of(" \t") == std::string::npos) continue;
    const json doc = json::parse(raw, nullptr, false);
    const std::string where = "mock script line " + std::to_string(line_no);
    if (doc.is_discarded()) throw ConfigError(where + ": not JSON");
    MockScriptLine line;
    if (doc.is_string()) {
      line.reply = doc.get<std::string>();
    } else if (doc.is_object() && doc.contains("reply") && doc["reply"].is_string()) {
      line.reply = doc["reply"].get<std::string>();
      if (doc.contains("task")) line.task = parse_task(doc["task"].get<std::string>());
      if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) throw ConfigError(where + ": seed must be unsigned");
        line.seed = Seed{doc["seed"].get<std::uint64_t>()};
      }
    } else {
      throw ConfigError(where + ": expected a string or an object with \"reply\"");
    }
    lines.push_back(std::move(line));
  }
  return MockScript(std::move(lines));
}

MockScript MockScript::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open mock script " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string MockScript::to_jsonl() const {
  std::string out;
  for (const auto& l : lines_) {
    if (!l.task && !l.seed) {
      out += json(l.reply).dump() + "\n";
      continue;
    }
    json obj;
    if (l.task) obj["task"] = task_name(*l.task);
    if (l.seed) obj["seed"] = l.seed->value;
    obj["reply"] = l.reply;
    out += obj.dump() + "\n";
  }
  return out;
}

std::vector<std::string> MockScript::replies_for(TaskKind task, Seed seed) const {
  std::vector<std::string> out;
  for (const auto& l : lines_) {
    if (l.task && *l.task != task) continue;
    if (l.seed && *l.seed != seed) continue;
    out.push_back(l.reply);
  }
  return out;
}

void MockScript::append(const MockScript& other) {
  lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end());
}

MockScript mock_script_from_trace(const EpisodeTrace& trace) {
  std::vector<MockScriptLine> lines;
  for (const auto& s : trace.steps) lines.push_back({trace.task, trace.seed, s.action});
  return MockScript(std::move(lines));
}

}  // namespace symworld
