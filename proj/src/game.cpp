#include "symworld/game.hpp"

#include "symworld/text.hpp"

namespace symworld {

std::string render_inventory(const std::vector<std::string>& items) {
  if (items.empty()) return "Your inventory is empty.";
  return "Your inventory contains: " + join(items, ", ") + ".";
}

}  // namespace symworld
