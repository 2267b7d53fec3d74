#pragma once

#include <string>
#include <vector>

#include "symworld/game.hpp"

namespace symworld {

struct SortItem {
  std::string name;  // material, e.g. "oak"
  Quantity quantity;

  /// "25 g of oak"
  std::string display() const;
  friend bool operator==(const SortItem&, const SortItem&) = default;
};

/// Place 3-5 quantified items into the box in ascending order of base value.
/// A placement out of order ends the episode.
class SortingGame {
 public:
  static constexpr int kMinItems = 3;
  static constexpr int kMaxItems = 5;
  static constexpr int kMaxMagnitude = 50;

  static SortingGame generate(Seed seed, const GameOptions& options = {});
  /// Throws ConfigError unless 1..n items with distinct names and base values.
  static SortingGame from_items(std::vector<SortItem> items);

  std::string task_description() const;
  Observation look() const;
  std::vector<std::string> env_actions() const;
  std::vector<std::string> module_actions() const;
  EnvOutcome apply(std::string_view action);
  std::string respond(std::string_view action) const;
  std::string inventory_text() const;
  int max_raw() const { return static_cast<int>(items_.size()); }
  std::string digest() const;

  const std::vector<SortItem>& items() const noexcept { return items_; }
  /// Item names in ascending base-value order.
  std::vector<std::string> expected_order() const;
  const std::vector<std::string>& placed() const noexcept { return placed_; }
  bool held(std::size_t i) const { return held_.at(i); }
  bool is_placed(std::size_t i) const;
  /// Index of the unplaced item with the smallest base value.
  std::optional<std::size_t> smallest_remaining() const;
  const Observation& last_look() const noexcept { return last_look_; }

 private:
  SortingGame() = default;
  std::optional<std::size_t> index_of(std::string_view display) const;

  std::vector<SortItem> items_;
  std::vector<bool> held_;
  std::vector<std::string> placed_;
  Observation last_look_;
};

}  // namespace symworld
