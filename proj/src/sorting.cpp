#include "symworld/sorting.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "symworld/errors.hpp"
#include "symworld/modules.hpp"
#include "symworld/rng.hpp"
#include "symworld/text.hpp"

namespace symworld {
namespace {

constexpr std::uint64_t kStreamTag = 0x736f7274696e6721ULL;  // "sorting!"

// Item count weights 7:2:1 for 3, 4, 5 items.
std::size_t draw_item_count(Rng& rng) {
  const auto r = rng.below(10);
  if (r < 7) return 3;
  if (r < 9) return 4;
  return 5;
}

const std::array<std::string, 24> kMaterials = {
    "oak",    "brick", "cedar",  "marble", "pine",   "granite", "copper", "iron",
    "clay",   "sand",  "glass",  "silver", "tin",    "walnut",  "maple",  "slate",
    "cotton", "wool",  "rubber", "wax",    "gravel", "bronze",  "chalk",  "cork"};

constexpr std::array<Unit, 3> kMassUnits = {Unit::mg, Unit::g, Unit::kg};
constexpr std::array<Unit, 2> kVolumeUnits = {Unit::ml, Unit::l};
constexpr std::array<Unit, 3> kLengthUnits = {Unit::mm, Unit::cm, Unit::m};
constexpr std::array<Unit, 8> kAllUnits = {Unit::mg, Unit::g,  Unit::kg, Unit::ml,
                                           Unit::l,  Unit::mm, Unit::cm, Unit::m};

}  // namespace

std::string SortItem::display() const {
  return std::to_string(quantity.magnitude) + " " + std::string(unit_symbol(quantity.unit)) +
         " of " + name;
}

SortingGame SortingGame::generate(Seed seed, const GameOptions& options) {
  Rng rng(seed.value ^ kStreamTag);
  const std::size_t n = draw_item_count(rng);

  std::span<const Unit> units;
  if (options.sorting_allow_mixed_dimensions) {
    units = kAllUnits;
  } else {
    switch (rng.below(3)) {
      case 0: units = kMassUnits; break;
      case 1: units = kVolumeUnits; break;
      default: units = kLengthUnits; break;
    }
  }

  std::array<std::string, 24> names = kMaterials;
  rng.shuffle(std::span<std::string>(names));

  std::vector<SortItem> items;
  std::set<std::int64_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    Quantity q;
    do {
      q.unit = units[rng.below(units.size())];
      q.magnitude = rng.between(1, kMaxMagnitude);
    } while (seen.contains(q.base_value()));
    seen.insert(q.base_value());
    items.push_back({names[i], q});
  }
  return from_items(std::move(items));
}

SortingGame SortingGame::from_items(std::vector<SortItem> items) {
  if (items.empty()) throw ConfigError("sorting world needs at least one item");
  std::set<std::string> names;
  std::set<std::int64_t> values;
  for (const auto& it : items) {
    if (it.quantity.magnitude <= 0) throw ConfigError("sorting quantities must be positive");
    if (!names.insert(it.name).second) throw ConfigError("duplicate item name '" + it.name + "'");
    if (!values.insert(it.quantity.base_value()).second) {
      throw ConfigError("sorting base values must be distinct");
    }
  }
  SortingGame game;
  game.items_ = std::move(items);
  game.held_.assign(game.items_.size(), false);
  game.last_look_ = game.look();
  return game;
}

std::vector<std::string> SortingGame::expected_order() const {
  std::vector<const SortItem*> sorted;
  for (const auto& it : items_) sorted.push_back(&it);
  std::sort(sorted.begin(), sorted.end(), [](const SortItem* a, const SortItem* b) {
    return a->quantity.base_value() < b->quantity.base_value();
  });
  std::vector<std::string> out;
  for (const auto* it : sorted) out.push_back(it->name);
  return out;
}

bool SortingGame::is_placed(std::size_t i) const {
  return std::find(placed_.begin(), placed_.end(), items_.at(i).name) != placed_.end();
}

std::optional<std::size_t> SortingGame::smallest_remaining() const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (is_placed(i)) continue;
    if (!best || items_[i].quantity.base_value() < items_[*best].quantity.base_value()) best = i;
  }
  return best;
}

std::optional<std::size_t> SortingGame::index_of(std::string_view display) const {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].display() == display) return i;
  }
  return std::nullopt;
}

std::string SortingGame::task_description() const {
  return "Your task is to sort objects by quantity. First, place the object with the smallest "
         "quantity in the box. Then, place the objects with the next smallest quantity in the "
         "box, and repeat until all objects have been placed in the box.";
}

Observation SortingGame::look() const {
  ObservationPayload payload;
  payload.room = "workshop";
  std::vector<std::string> in_box;
  for (const auto& name : placed_) {
    for (const auto& it : items_) {
      if (it.name == name) in_box.push_back(it.display());
    }
  }
  std::string text = "You are in the workshop. In one part of the room you see a box, that ";
  text += in_box.empty() ? "is empty." : "contains " + join(in_box, ", ") + ".";
  payload.box_contents = in_box;

  std::vector<std::string> loose;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (held_[i] || is_placed(i)) continue;
    loose.push_back(items_[i].display());
    payload.items.push_back({items_[i].name, std::nullopt, items_[i].quantity});
  }
  if (!loose.empty()) text += " You also see " + join(loose, ", ") + ".";
  return {std::move(text), std::move(payload)};
}

std::vector<std::string> SortingGame::env_actions() const {
  std::vector<std::string> out{"look around"};
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (!held_[i] && !is_placed(i)) out.push_back("take " + items_[i].display());
  }
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (held_[i]) out.push_back("put " + items_[i].display() + " in box");
  }
  return out;
}

std::vector<std::string> SortingGame::module_actions() const {
  return {"sort ascending", "sort descending"};
}

EnvOutcome SortingGame::apply(std::string_view action) {
  EnvOutcome out;
  constexpr std::string_view kTake = "take ";
  constexpr std::string_view kPut = "put ";
  constexpr std::string_view kInBox = " in box";
  std::string prefix;

  if (action == "look around") {
    // nothing changes
  } else if (action.starts_with(kTake)) {
    const auto i = index_of(action.substr(kTake.size()));
    if (!i || held_[*i] || is_placed(*i)) throw InvalidAction(std::string(action));
    held_[*i] = true;
    prefix = "You take the " + items_[*i].display() + ". ";
  } else if (action.starts_with(kPut) && action.ends_with(kInBox)) {
    const auto i =
        index_of(action.substr(kPut.size(), action.size() - kPut.size() - kInBox.size()));
    if (!i || !held_[*i]) throw InvalidAction(std::string(action));
    const bool in_order = smallest_remaining() == i;
    held_[*i] = false;
    placed_.push_back(items_[*i].name);
    prefix = "You put the " + items_[*i].display() + " in the box. ";
    if (!in_order) {
      out.terminal = DoneReason::failed;
    } else {
      out.reward = 1;
      if (placed_.size() == items_.size()) out.terminal = DoneReason::completed;
    }
  } else {
    throw InvalidAction(std::string(action));
  }

  out.observation = look();
  out.observation.text = prefix + out.observation.text;
  last_look_ = out.observation;
  return out;
}

std::string SortingGame::respond(std::string_view action) const {
  const auto query = modules::parse_query(action);
  if (query && std::holds_alternative<modules::SortQuery>(*query)) {
    return modules::sort_items(std::get<modules::SortQuery>(*query).direction, last_look_);
  }
  return "That is not a valid query.";
}

std::string SortingGame::inventory_text() const {
  std::vector<std::string> items;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (held_[i]) items.push_back(items_[i].display());
  }
  return render_inventory(items);
}

std::string SortingGame::digest() const {
  std::string d = "sorting|";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    d += items_[i].display() + (held_[i] ? "+held;" : ";");
  }
  d += "|placed:";
  for (const auto& p : placed_) d += p + ",";
  return d;
}

}  // namespace symworld
