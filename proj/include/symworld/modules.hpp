#pragma once

// Symbolic modules: calculator, navigator, sorter and knowledge-base lookup.
// Each maps a module-action string plus context to a response text, and all
// of them are pure functions of their inputs.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "symworld/knowledge_base.hpp"
#include "symworld/types.hpp"

namespace symworld::modules {

// ---------------------------------------------------------------------------
// Query grammar
//   add|sub|mul|div <int> <int>
//   next step to <room>
//   sort ascending|descending
//   query <object phrase>

enum class CalcOp { add, sub, mul, div };
enum class SortDirection { ascending, descending };

std::string_view calc_verb(CalcOp op);

struct CalcQuery {
  CalcOp op = CalcOp::add;
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const CalcQuery&, const CalcQuery&) = default;
};

struct NavigateQuery {
  std::string destination;
  friend bool operator==(const NavigateQuery&, const NavigateQuery&) = default;
};

struct SortQuery {
  SortDirection direction = SortDirection::ascending;
  friend bool operator==(const SortQuery&, const SortQuery&) = default;
};

struct KbQuery {
  std::string object;
  friend bool operator==(const KbQuery&, const KbQuery&) = default;
};

using ModuleQuery = std::variant<CalcQuery, NavigateQuery, SortQuery, KbQuery>;

std::optional<ModuleQuery> parse_query(std::string_view action);
std::string render_query(const ModuleQuery& query);

// ---------------------------------------------------------------------------
// Calculator

/// Exact integer arithmetic. Division must be exact and by a non-zero value,
/// otherwise the invalid-operation response is returned.
std::string calc(CalcOp op, std::int64_t a, std::int64_t b);
std::optional<std::int64_t> calc_value(CalcOp op, std::int64_t a, std::int64_t b);

inline constexpr std::string_view kInvalidCalc = "That operation is not valid here.";

// ---------------------------------------------------------------------------
// Navigator

using Adjacency = std::map<std::string, std::vector<std::string>, std::less<>>;

/// Parses "The <room> connects to <a>, <b>." lines. Adjacency lists come back
/// sorted and symmetric.
Adjacency parse_map(std::string_view map_text);
std::string render_map(const Adjacency& adjacency);

/// Extracts "<room>" from the first "You are in the <room>." in the text.
std::optional<std::string> parse_current_room(std::string_view observation);

struct NavigatorContext {
  std::string previous_observation;
  std::optional<std::string> current_room;
  std::optional<Adjacency> map;

  /// Records an environment observation; the current room is refreshed when
  /// it can be parsed from the text.
  void observe(std::string_view observation);
  void read_map(std::string_view map_text);
};

/// Shortest path from `from` to `to` (excluding `from`); among equal-length
/// paths the lexicographically smallest room sequence. nullopt if unreachable.
std::optional<std::vector<std::string>> shortest_path(const Adjacency& adjacency,
                                                      std::string_view from, std::string_view to);

std::string next_step(std::string_view destination, const NavigatorContext& ctx);

inline constexpr std::string_view kReadMapFirst = "You should read the map first.";

// ---------------------------------------------------------------------------
// Sorter

/// Sorts the quantified items of the observation's structured payload by
/// base value.
std::string sort_items(SortDirection direction, const Observation& last_look);

inline constexpr std::string_view kNothingToSort = "There is nothing to sort.";

// ---------------------------------------------------------------------------
// Knowledge base

std::string kb_query(std::string_view object_phrase, const KnowledgeBase& kb);

}  // namespace symworld::modules
