#pragma once

#include <concepts>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "symworld/knowledge_base.hpp"
#include "symworld/types.hpp"

namespace symworld {

/// Generation switches for the spots where the benchmark leaves a choice open.
struct GameOptions {
  /// MapReader: agent starts in the room holding the box (otherwise a random
  /// room other than the coin room).
  bool mapreader_start_in_box_room = true;
  /// Sorting: draw each item's unit from any dimension and order by base value.
  bool sorting_allow_mixed_dimensions = false;
  /// TWC: null means KnowledgeBase::embedded().
  std::shared_ptr<const KnowledgeBase> knowledge_base;
};

/// Result of one environment-origin action applied to a world.
struct EnvOutcome {
  Observation observation;
  int reward = 0;
  DoneReason terminal = DoneReason::none;
};

/// What the engine needs from each of the four worlds.
template <typename G>
concept GameWorld = std::copyable<G> && requires(G game, const G& cg, std::string_view text) {
  { cg.task_description() } -> std::convertible_to<std::string>;
  { cg.look() } -> std::same_as<Observation>;
  { cg.env_actions() } -> std::same_as<std::vector<std::string>>;
  { cg.module_actions() } -> std::same_as<std::vector<std::string>>;
  { game.apply(text) } -> std::same_as<EnvOutcome>;
  { cg.respond(text) } -> std::same_as<std::string>;
  { cg.inventory_text() } -> std::same_as<std::string>;
  { cg.max_raw() } -> std::same_as<int>;
  { cg.digest() } -> std::same_as<std::string>;
};

/// "Your inventory contains: a, b." or "Your inventory is empty."
std::string render_inventory(const std::vector<std::string>& items);

}  // namespace symworld
