#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symworld {

struct KbEntry {
  std::string object;
  std::string location;
};

/// Object -> canonical household location. Keys are canonical phrases.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(std::vector<KbEntry> entries);

  /// Parses `object<TAB>location` lines. Blank lines and lines starting with
  /// '#' are skipped. Throws ConfigError on malformed or duplicate records.
  static KnowledgeBase parse(std::string_view tsv);
  static KnowledgeBase load(const std::filesystem::path& path);
  /// The household dataset compiled into the library.
  static const KnowledgeBase& embedded();

  std::optional<std::string> location_of(std::string_view object) const;
  const std::vector<KbEntry>& entries() const noexcept { return entries_; }
  std::vector<std::string> locations() const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<KbEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace symworld
