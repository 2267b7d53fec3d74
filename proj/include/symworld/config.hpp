#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "symworld/llm_client.hpp"

namespace symworld {

/// Flat view of a key = value file with [section] headers. Keys are stored as
/// "section.key"; values have surrounding quotes removed. '#' starts a comment.
class ConfigFile {
 public:
  static ConfigFile parse(std::string_view text);
  static ConfigFile load(const std::filesystem::path& path);

  std::optional<std::string> get(std::string_view key) const;
  const std::map<std::string, std::string, std::less<>>& values() const noexcept {
    return values_;
  }

  /// Applies [llm] endpoint, model, temperature, max_tokens, timeout_ms,
  /// retries. Throws ConfigError on unparsable numbers.
  void apply_to(LlmConfig& config) const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace symworld
