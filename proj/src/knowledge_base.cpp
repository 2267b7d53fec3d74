#include "symworld/knowledge_base.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "symworld/errors.hpp"
#include "symworld/text.hpp"

namespace symworld {

// Generated from data/twc_kb.tsv at build time.
extern const char* const kEmbeddedKnowledgeBase;

KnowledgeBase::KnowledgeBase(std::vector<KbEntry> entries) {
  for (auto& e : entries) {
    KbEntry entry{canonicalize(e.object), canonicalize(e.location)};
    if (entry.object.empty() || entry.location.empty()) {
      throw ConfigError("knowledge base entry with empty field");
    }
    if (!index_.emplace(entry.object, entries_.size()).second) {
      throw ConfigError("duplicate knowledge base object '" + entry.object + "'");
    }
    entries_.push_back(std::move(entry));
  }
}

KnowledgeBase KnowledgeBase::parse(std::string_view tsv) {
  std::vector<KbEntry> entries;
  int line_no = 0;
  for (const auto& line : split_lines(tsv)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ConfigError("knowledge base line " + std::to_string(line_no) +
                        ": expected object<TAB>location");
    }
    entries.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return KnowledgeBase(std::move(entries));
}

KnowledgeBase KnowledgeBase::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open knowledge base " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const KnowledgeBase& KnowledgeBase::embedded() {
  static const KnowledgeBase kb = parse(kEmbeddedKnowledgeBase);
  return kb;
}

std::optional<std::string> KnowledgeBase::location_of(std::string_view object) const {
  auto it = index_.find(object);
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].location;
}

std::vector<std::string> KnowledgeBase::locations() const {
  std::set<std::string> unique;
  for (const auto& e : entries_) unique.insert(e.location);
  return {unique.begin(), unique.end()};
}

}  // namespace symworld
