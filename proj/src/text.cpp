#include "symworld/text.hpp"

#include <array>
#include <cctype>

namespace symworld {
namespace {

// Typographic quotes that LLM replies like to wrap actions in.
constexpr std::array<std::string_view, 6> kFancyQuotes = {"‘", "’", "“",
                                                          "”", "«", "»"};

bool is_trim_char(char c) {
  switch (c) {
    case '\'': case '"': case '`': case '.': case ',': case ';': case ':':
    case '!': case '?': case '(': case ')': case '[': case ']': case '{':
    case '}': case '*': case '_': case '<': case '>':
      return true;
    default:
      return std::isspace(static_cast<unsigned char>(c)) != 0;
  }
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string canonicalize(std::string_view text) {
  std::string collapsed;
  collapsed.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) collapsed.push_back(' ');
    pending_space = false;
    collapsed.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }

  std::string_view view = collapsed;
  bool changed = true;
  while (changed && !view.empty()) {
    changed = false;
    while (!view.empty() && is_trim_char(view.front())) {
      view.remove_prefix(1);
      changed = true;
    }
    while (!view.empty() && is_trim_char(view.back())) {
      view.remove_suffix(1);
      changed = true;
    }
    for (std::string_view q : kFancyQuotes) {
      if (view.starts_with(q)) {
        view.remove_prefix(q.size());
        changed = true;
      }
      if (view.ends_with(q)) {
        view.remove_suffix(q.size());
        changed = true;
      }
    }
  }
  return std::string(view);
}

bool is_canonical(std::string_view text) { return canonicalize(text) == text; }

std::string join(std::span<const std::string> parts, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += separator;
    out += parts[i];
  }
  return out;
}

std::string capitalize_first(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
    }
  }
  return out;
}

bool contains_bounded(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return false;
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + 1)) {
    const bool left_ok = pos == 0 || !is_word_char(haystack[pos - 1]);
    const std::size_t end = pos + needle.size();
    const bool right_ok = end == haystack.size() || !is_word_char(haystack[end]);
    if (left_ok && right_ok) return true;
  }
  return false;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

}  // namespace symworld
