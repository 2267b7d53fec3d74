#include "symworld/twc.hpp"

#include <algorithm>
#include <numeric>

#include "symworld/errors.hpp"
#include "symworld/modules.hpp"
#include "symworld/rng.hpp"
#include "symworld/text.hpp"

namespace symworld {
namespace {

constexpr std::uint64_t kStreamTag = 0x7477636f6d6d6f6eULL;  // "twcommon"
constexpr int kExtraLocations = 2;

std::shared_ptr<const KnowledgeBase> embedded_kb() {
  static const std::shared_ptr<const KnowledgeBase> kb(&KnowledgeBase::embedded(),
                                                       [](const KnowledgeBase*) {});
  return kb;
}

// Object count weights 7:2:1 for 1, 2, 3 objects.
std::size_t draw_object_count(Rng& rng) {
  const auto r = rng.below(10);
  if (r < 7) return 1;
  if (r < 9) return 2;
  return 3;
}

}  // namespace

TwcGame TwcGame::generate(Seed seed, const GameOptions& options) {
  auto kb = options.knowledge_base ? options.knowledge_base : embedded_kb();
  if (kb->size() < static_cast<std::size_t>(kMaxObjects)) {
    throw ConfigError("knowledge base too small for TWC generation");
  }
  Rng rng(seed.value ^ kStreamTag);
  const std::size_t count = draw_object_count(rng);

  std::vector<std::size_t> order(kb->size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<std::string> objects;
  for (std::size_t i = 0; i < count; ++i) objects.push_back(kb->entries()[order[i]].object);

  std::vector<std::string> spare;
  for (const auto& loc : kb->locations()) {
    const bool used = std::any_of(objects.begin(), objects.end(), [&](const std::string& o) {
      return kb->location_of(o) == loc;
    });
    if (!used) spare.push_back(loc);
  }
  rng.shuffle(std::span<std::string>(spare));
  spare.resize(std::min<std::size_t>(spare.size(), kExtraLocations));

  TwcGame game = from_objects(objects, std::move(spare), std::move(kb));
  rng.shuffle(std::span<std::string>(game.locations_));
  return game;
}

TwcGame TwcGame::from_objects(const std::vector<std::string>& objects,
                              std::vector<std::string> extra_locations,
                              std::shared_ptr<const KnowledgeBase> kb) {
  if (!kb) kb = embedded_kb();
  if (objects.empty()) throw ConfigError("TWC world needs at least one object");
  TwcGame game;
  for (const auto& name : objects) {
    const auto home = kb->location_of(canonicalize(name));
    if (!home) throw ConfigError("no knowledge base entry for '" + name + "'");
    game.objects_.push_back({canonicalize(name), *home, Status::misplaced, std::nullopt, false});
    if (std::find(game.locations_.begin(), game.locations_.end(), *home) == game.locations_.end()) {
      game.locations_.push_back(*home);
    }
  }
  for (auto& loc : extra_locations) {
    if (std::find(game.locations_.begin(), game.locations_.end(), loc) == game.locations_.end()) {
      game.locations_.push_back(std::move(loc));
    }
  }
  game.kb_ = std::move(kb);
  return game;
}

std::string TwcGame::task_description() const {
  return "Your task is to pick up objects, then place them in their usual locations in the "
         "environment.";
}

Observation TwcGame::look() const {
  ObservationPayload payload;
  payload.room = "house";
  std::string text = "You are in the house. In the room you see: " + join(locations_, ", ") + ".";
  for (const auto& loc : locations_) {
    payload.items.push_back({loc, std::nullopt, std::nullopt});
    std::vector<std::string> inside;
    for (const auto& o : objects_) {
      const bool here = (o.status == Status::placed && o.home == loc) ||
                        (o.status == Status::misplaced && o.at == loc);
      if (here) inside.push_back(o.name);
    }
    if (!inside.empty()) text += " The " + loc + " contains " + join(inside, ", ") + ".";
  }
  std::vector<std::string> floor;
  for (const auto& o : objects_) {
    if (o.status == Status::misplaced && !o.at) floor.push_back(o.name);
    if (o.status == Status::misplaced) payload.items.push_back({o.name, std::nullopt, std::nullopt});
  }
  if (!floor.empty()) text += " On the floor you see " + join(floor, ", ") + ".";
  return {std::move(text), std::move(payload)};
}

std::vector<std::string> TwcGame::env_actions() const {
  std::vector<std::string> out{"look around"};
  for (const auto& o : objects_) {
    if (o.status == Status::misplaced) out.push_back("take " + o.name);
  }
  for (const auto& o : objects_) {
    if (o.status != Status::held) continue;
    for (const auto& loc : locations_) out.push_back("put " + o.name + " in " + loc);
  }
  return out;
}

std::vector<std::string> TwcGame::module_actions() const {
  std::vector<std::string> out;
  for (const auto& o : objects_) {
    if (o.status != Status::placed) out.push_back(modules::render_query(modules::KbQuery{o.name}));
  }
  return out;
}

EnvOutcome TwcGame::apply(std::string_view action) {
  if (action == "look around") return {look(), 0, DoneReason::none};
  for (auto& o : objects_) {
    if (o.status == Status::misplaced && action == "take " + o.name) {
      o.status = Status::held;
      o.at.reset();
      const int reward = o.rewarded_take ? 0 : kTakeReward;
      o.rewarded_take = true;
      return {{"You take the " + o.name + ".", std::nullopt}, reward, DoneReason::none};
    }
    if (o.status != Status::held) continue;
    for (const auto& loc : locations_) {
      if (action != "put " + o.name + " in " + loc) continue;
      Observation obs{"You put the " + o.name + " in the " + loc + ".", std::nullopt};
      if (loc != o.home) {
        o.status = Status::misplaced;
        o.at = loc;
        return {std::move(obs), 0, DoneReason::none};
      }
      o.status = Status::placed;
      const bool all = std::all_of(objects_.begin(), objects_.end(),
                                   [](const Object& x) { return x.status == Status::placed; });
      return {std::move(obs), kPlaceReward, all ? DoneReason::completed : DoneReason::none};
    }
  }
  throw InvalidAction(std::string(action));
}

std::string TwcGame::respond(std::string_view action) const {
  const auto query = modules::parse_query(action);
  if (query && std::holds_alternative<modules::KbQuery>(*query)) {
    return modules::kb_query(std::get<modules::KbQuery>(*query).object, *kb_);
  }
  return "That is not a valid query.";
}

std::string TwcGame::inventory_text() const {
  std::vector<std::string> items;
  for (const auto& o : objects_) {
    if (o.status == Status::held) items.push_back(o.name);
  }
  return render_inventory(items);
}

std::string TwcGame::digest() const {
  std::string d = "twc|";
  for (const auto& loc : locations_) d += loc + ",";
  d += "|";
  for (const auto& o : objects_) {
    d += o.name + ":" + std::to_string(static_cast<int>(o.status)) + ":" + o.at.value_or("-") +
         (o.rewarded_take ? ":T;" : ":t;");
  }
  return d;
}

}  // namespace symworld
