#include "symworld/modules.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <regex>
#include <set>

#include "symworld/text.hpp"

namespace symworld::modules {
namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  if (s.empty() || s.front() == '+') return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string_view gerund(CalcOp op) {
  switch (op) {
    case CalcOp::add: return "Adding";
    case CalcOp::sub: return "Subtracting";
    case CalcOp::mul: return "Multiplying";
    case CalcOp::div: return "Dividing";
  }
  return "";
}

}  // namespace

std::string_view calc_verb(CalcOp op) {
  switch (op) {
    case CalcOp::add: return "add";
    case CalcOp::sub: return "sub";
    case CalcOp::mul: return "mul";
    case CalcOp::div: return "div";
  }
  return "";
}

std::optional<ModuleQuery> parse_query(std::string_view action) {
  const std::string text = canonicalize(action);
  std::string_view v = text;

  constexpr std::string_view kNext = "next step to ";
  constexpr std::string_view kQuery = "query ";
  if (v.starts_with(kNext) && v.size() > kNext.size()) {
    return NavigateQuery{std::string(v.substr(kNext.size()))};
  }
  if (v.starts_with(kQuery) && v.size() > kQuery.size()) {
    return KbQuery{std::string(v.substr(kQuery.size()))};
  }
  if (v == "sort ascending") return SortQuery{SortDirection::ascending};
  if (v == "sort descending") return SortQuery{SortDirection::descending};

  for (CalcOp op : {CalcOp::add, CalcOp::sub, CalcOp::mul, CalcOp::div}) {
    const std::string prefix = std::string(calc_verb(op)) + " ";
    if (!v.starts_with(prefix)) continue;
    std::string_view rest = v.substr(prefix.size());
    const auto space = rest.find(' ');
    if (space == std::string_view::npos) return std::nullopt;
    auto a = parse_int(rest.substr(0, space));
    auto b = parse_int(rest.substr(space + 1));
    if (!a || !b) return std::nullopt;
    return CalcQuery{op, *a, *b};
  }
  return std::nullopt;
}

std::string render_query(const ModuleQuery& query) {
  struct Renderer {
    std::string operator()(const CalcQuery& q) const {
      return std::string(calc_verb(q.op)) + " " + std::to_string(q.a) + " " + std::to_string(q.b);
    }
    std::string operator()(const NavigateQuery& q) const { return "next step to " + q.destination; }
    std::string operator()(const SortQuery& q) const {
      return q.direction == SortDirection::ascending ? "sort ascending" : "sort descending";
    }
    std::string operator()(const KbQuery& q) const { return "query " + q.object; }
  };
  return std::visit(Renderer{}, query);
}

// --- Calculator -------------------------------------------------------------

std::optional<std::int64_t> calc_value(CalcOp op, std::int64_t a, std::int64_t b) {
  switch (op) {
    case CalcOp::add: return a + b;
    case CalcOp::sub: return a - b;
    case CalcOp::mul: return a * b;
    case CalcOp::div:
      if (b == 0 || a % b != 0) return std::nullopt;
      return a / b;
  }
  return std::nullopt;
}

std::string calc(CalcOp op, std::int64_t a, std::int64_t b) {
  const auto r = calc_value(op, a, b);
  if (!r) return std::string(kInvalidCalc);
  return std::string(gerund(op)) + " " + std::to_string(a) + " and " + std::to_string(b) +
         " results in " + std::to_string(*r) + ".";
}

// --- Navigator --------------------------------------------------------------

Adjacency parse_map(std::string_view map_text) {
  static const std::regex line_re(R"(^The (.+) connects to (.+)\.$)");
  std::map<std::string, std::set<std::string>, std::less<>> sets;
  for (const auto& raw : split_lines(map_text)) {
    std::smatch m;
    if (!std::regex_match(raw, m, line_re)) continue;
    const std::string room = m[1].str();
    std::string_view rest = raw;
    rest = rest.substr(static_cast<std::size_t>(m.position(2)), static_cast<std::size_t>(m.length(2)));
    auto& mine = sets[room];
    while (!rest.empty()) {
      const auto comma = rest.find(", ");
      const std::string n(rest.substr(0, comma));
      mine.insert(n);
      sets[n].insert(room);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 2);
    }
  }
  Adjacency adj;
  for (auto& [room, ns] : sets) adj[room] = {ns.begin(), ns.end()};
  return adj;
}

std::string render_map(const Adjacency& adjacency) {
  std::string out;
  for (const auto& [room, ns] : adjacency) {
    if (ns.empty()) continue;
    if (!out.empty()) out += '\n';
    out += "The " + room + " connects to " + join(ns, ", ") + ".";
  }
  return out;
}

std::optional<std::string> parse_current_room(std::string_view observation) {
  static const std::regex room_re(R"(You are in the ([a-z][a-z ]*)\.)");
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_search(observation.begin(), observation.end(), m, room_re)) return m[1].str();
  return std::nullopt;
}

void NavigatorContext::observe(std::string_view observation) {
  previous_observation = std::string(observation);
  if (auto room = parse_current_room(observation)) current_room = std::move(room);
}

void NavigatorContext::read_map(std::string_view map_text) { map = parse_map(map_text); }

std::optional<std::vector<std::string>> shortest_path(const Adjacency& adjacency,
                                                      std::string_view from, std::string_view to) {
  if (!adjacency.contains(from) || !adjacency.contains(to)) return std::nullopt;
  if (from == to) return std::vector<std::string>{};

  // Distances to the destination, then greedy smallest-name descent from the
  // source yields the lexicographically smallest shortest path.
  std::map<std::string_view, int> dist;
  std::deque<std::string_view> queue{to};
  dist[to] = 0;
  while (!queue.empty()) {
    const auto room = queue.front();
    queue.pop_front();
    for (const auto& n : adjacency.find(room)->second) {
      if (!adjacency.contains(n)) continue;
      if (dist.try_emplace(n, dist[room] + 1).second) queue.push_back(n);
    }
  }
  if (!dist.contains(from)) return std::nullopt;

  std::vector<std::string> path;
  std::string_view at = from;
  while (at != to) {
    const int want = dist[at] - 1;
    std::string_view best;
    for (const auto& n : adjacency.find(at)->second) {
      auto it = dist.find(n);
      if (it != dist.end() && it->second == want && (best.empty() || n < best)) best = n;
    }
    path.emplace_back(best);
    at = path.back();
  }
  return path;
}

std::string next_step(std::string_view destination, const NavigatorContext& ctx) {
  if (!ctx.map) return std::string(kReadMapFirst);
  const std::string dest(destination);
  if (!ctx.current_room) return "I do not know where you are.";
  const std::string& here = *ctx.current_room;
  if (here == dest) return "You are already at " + dest + ".";
  const auto path = shortest_path(*ctx.map, here, dest);
  if (!path) return "There is no known route from " + here + " to " + dest + ".";
  return "The next location to go to is " + path->front() + ". If you want to go to " + dest +
         " from " + here + ", you need go through " + join(*path, ", ") + ".";
}

// --- Sorter -----------------------------------------------------------------

std::string sort_items(SortDirection direction, const Observation& last_look) {
  std::vector<const VisibleItem*> items;
  if (last_look.structured) {
    for (const auto& item : last_look.structured->items) {
      if (item.quantity) items.push_back(&item);
    }
  }
  if (items.empty()) return std::string(kNothingToSort);

  std::stable_sort(items.begin(), items.end(), [](const VisibleItem* x, const VisibleItem* y) {
    return x->quantity->base_value() < y->quantity->base_value();
  });
  if (direction == SortDirection::descending) std::reverse(items.begin(), items.end());

  std::vector<std::string> names;
  names.reserve(items.size());
  for (const auto* item : items) names.push_back(item->display());
  const std::string_view order =
      direction == SortDirection::ascending ? "increasing" : "decreasing";
  return "The observed items, sorted in order of " + std::string(order) +
         " quantity, are: " + join(names, ", ") + ".";
}

// --- Knowledge base ---------------------------------------------------------

std::string kb_query(std::string_view object_phrase, const KnowledgeBase& kb) {
  const std::string object = canonicalize(object_phrase);
  if (auto location = kb.location_of(object)) {
    return capitalize_first(object) + " is expected to be located at " + *location + ".";
  }
  return "I do not know where " + object + " belongs.";
}

}  // namespace symworld::modules
