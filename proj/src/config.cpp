#include "symworld/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "symworld/errors.hpp"
#include "symworld/text.hpp"

namespace symworld {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    v = v.substr(1, v.size() - 2);
  }
  return std::string(v);
}

// '#' outside quotes starts a comment.
std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

template <typename T>
T to_number(const std::string& key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ConfigError("bad number for " + key + ": '" + text + "'");
  return value;
}

}  // namespace

ConfigFile ConfigFile::parse(std::string_view text) {
  ConfigFile file;
  std::string section;
  int line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": bad section");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
    file.values_[full] = unquote(trim(line.substr(eq + 1)));
  }
  return file;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::optional<std::string> ConfigFile::get(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void ConfigFile::apply_to(LlmConfig& config) const {
  if (get("llm.api_key")) throw ConfigError("credentials are read from the environment only");
  if (auto v = get("llm.endpoint")) {
    config.endpoint = *v;
    config.endpoint_configured = true;
  }
  if (auto v = get("llm.model")) config.model = *v;
  if (auto v = get("llm.temperature")) {
    try {
      std::size_t used = 0;
      config.temperature = std::stod(*v, &used);
      if (used != v->size()) throw std::invalid_argument(*v);
    } catch (const std::exception&) {
      throw ConfigError("bad number for llm.temperature: '" + *v + "'");
    }
  }
  if (auto v = get("llm.max_tokens")) config.max_tokens = to_number<int>("llm.max_tokens", *v);
  if (auto v = get("llm.timeout_ms")) {
    config.timeout = std::chrono::milliseconds(to_number<long long>("llm.timeout_ms", *v));
  }
  if (auto v = get("llm.retries")) config.retries = to_number<int>("llm.retries", *v);
}

}  // namespace symworld
