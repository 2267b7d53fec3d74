#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symworld/game.hpp"
#include "symworld/knowledge_base.hpp"

namespace symworld {

/// Put misplaced household objects back where they belong. Wrong placements
/// score nothing and leave the object retakeable.
class TwcGame {
 public:
  static constexpr int kMinObjects = 1;
  static constexpr int kMaxObjects = 3;
  static constexpr int kTakeReward = 1;
  static constexpr int kPlaceReward = 2;

  enum class Status { misplaced, held, placed };

  struct Object {
    std::string name;
    std::string home;                // canonical location from the KB
    Status status = Status::misplaced;
    std::optional<std::string> at;   // wrong location it was put in; nullopt = floor
    bool rewarded_take = false;
    friend bool operator==(const Object&, const Object&) = default;
  };

  static TwcGame generate(Seed seed, const GameOptions& options = {});
  /// Throws ConfigError if an object has no KB entry.
  static TwcGame from_objects(const std::vector<std::string>& objects,
                              std::vector<std::string> extra_locations,
                              std::shared_ptr<const KnowledgeBase> kb);

  std::string task_description() const;
  Observation look() const;
  std::vector<std::string> env_actions() const;
  std::vector<std::string> module_actions() const;
  EnvOutcome apply(std::string_view action);
  std::string respond(std::string_view action) const;
  std::string inventory_text() const;
  int max_raw() const { return 3 * static_cast<int>(objects_.size()); }
  std::string digest() const;

  const std::vector<Object>& objects() const noexcept { return objects_; }
  /// Containers present in the room, in display order.
  const std::vector<std::string>& locations() const noexcept { return locations_; }
  const KnowledgeBase& knowledge_base() const { return *kb_; }

 private:
  TwcGame() = default;

  std::vector<Object> objects_;
  std::vector<std::string> locations_;
  std::shared_ptr<const KnowledgeBase> kb_;
};

}  // namespace symworld
