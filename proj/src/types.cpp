#include "symworld/types.hpp"

#include <cassert>

#include "symworld/errors.hpp"
#include "symworld/text.hpp"

namespace symworld {

std::string_view task_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::arithmetic: return "arithmetic";
    case TaskKind::mapreader: return "mapreader";
    case TaskKind::sorting: return "sorting";
    case TaskKind::twc: return "twc";
  }
  return "unknown";
}

std::string_view task_display_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::arithmetic: return "Arithmetic";
    case TaskKind::mapreader: return "MapReader";
    case TaskKind::sorting: return "Sorting";
    case TaskKind::twc: return "TWC";
  }
  return "Unknown";
}

TaskKind parse_task(std::string_view name) {
  const std::string key = canonicalize(name);
  for (TaskKind kind : kAllTasks) {
    if (key == task_name(kind)) return kind;
  }
  throw ConfigError("unknown task kind '" + std::string(name) + "'");
}

std::string_view split_name(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "unknown";
}

Split parse_split(std::string_view name) {
  const std::string key = canonicalize(name);
  for (Split s : {Split::train, Split::dev, Split::test}) {
    if (key == split_name(s)) return s;
  }
  throw ConfigError("unknown split '" + std::string(name) + "'");
}

Seed split_base(Split split) {
  switch (split) {
    case Split::train: return Seed{0};
    case Split::dev: return Seed{1000};
    case Split::test: return Seed{2000};
  }
  return Seed{0};
}

std::optional<Split> split_of(Seed seed) {
  for (Split s : {Split::train, Split::dev, Split::test}) {
    const std::uint64_t base = split_base(s).value;
    if (seed.value >= base && seed.value < base + kSplitSize) return s;
  }
  return std::nullopt;
}

std::string_view origin_name(Origin origin) {
  return origin == Origin::module ? "module" : "environment";
}

ActionSet::ActionSet(std::span<const std::string> env_actions,
                     std::span<const std::string> module_actions) {
  actions_.reserve(env_actions.size() + module_actions.size());
  auto add = [this](const std::string& text, Origin origin) {
    assert(is_canonical(text) && "action text must be canonical");
    if (!text.empty() && !contains(text)) actions_.push_back(Action{text, origin});
  };
  for (const auto& t : env_actions) add(t, Origin::environment);
  for (const auto& t : module_actions) add(t, Origin::module);
}

const Action* ActionSet::find(std::string_view text) const noexcept {
  for (const auto& a : actions_) {
    if (a.text == text) return &a;
  }
  return nullptr;
}

std::vector<std::string> ActionSet::texts() const {
  std::vector<std::string> out;
  out.reserve(actions_.size());
  for (const auto& a : actions_) out.push_back(a.text);
  return out;
}

std::string_view unit_symbol(Unit unit) {
  switch (unit) {
    case Unit::mg: return "mg";
    case Unit::g: return "g";
    case Unit::kg: return "kg";
    case Unit::ml: return "ml";
    case Unit::l: return "l";
    case Unit::mm: return "mm";
    case Unit::cm: return "cm";
    case Unit::m: return "m";
  }
  return "?";
}

std::optional<Unit> parse_unit(std::string_view symbol) {
  for (Unit u : {Unit::mg, Unit::g, Unit::kg, Unit::ml, Unit::l, Unit::mm, Unit::cm, Unit::m}) {
    if (symbol == unit_symbol(u)) return u;
  }
  return std::nullopt;
}

Dimension unit_dimension(Unit unit) {
  switch (unit) {
    case Unit::mg:
    case Unit::g:
    case Unit::kg: return Dimension::mass;
    case Unit::ml:
    case Unit::l: return Dimension::volume;
    case Unit::mm:
    case Unit::cm:
    case Unit::m: return Dimension::length;
  }
  return Dimension::mass;
}

std::int64_t unit_factor(Unit unit) {
  switch (unit) {
    case Unit::mg: return 1;
    case Unit::g: return 1'000;
    case Unit::kg: return 1'000'000;
    case Unit::ml: return 1;
    case Unit::l: return 1'000;
    case Unit::mm: return 1;
    case Unit::cm: return 10;
    case Unit::m: return 1'000;
  }
  return 1;
}

std::string VisibleItem::display() const {
  if (quantity) {
    return std::to_string(quantity->magnitude) + " " + std::string(unit_symbol(quantity->unit)) +
           " of " + name;
  }
  if (count) return std::to_string(*count) + " " + name;
  return name;
}

std::string_view done_reason_name(DoneReason reason) {
  switch (reason) {
    case DoneReason::none: return "none";
    case DoneReason::completed: return "completed";
    case DoneReason::failed: return "failed";
    case DoneReason::step_limit: return "step_limit";
    case DoneReason::aborted: return "aborted";
  }
  return "none";
}

DoneReason parse_done_reason(std::string_view name) {
  for (DoneReason r : {DoneReason::none, DoneReason::completed, DoneReason::failed,
                       DoneReason::step_limit, DoneReason::aborted}) {
    if (name == done_reason_name(r)) return r;
  }
  throw ConfigError("unknown done reason '" + std::string(name) + "'");
}

}  // namespace symworld
