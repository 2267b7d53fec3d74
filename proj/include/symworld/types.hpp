#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symworld {

enum class TaskKind { arithmetic, mapreader, sorting, twc };

inline constexpr std::array<TaskKind, 4> kAllTasks = {
    TaskKind::arithmetic, TaskKind::mapreader, TaskKind::sorting, TaskKind::twc};

/// Lowercase identifier used on the command line and in files.
std::string_view task_name(TaskKind kind);
/// Capitalized name used in report tables.
std::string_view task_display_name(TaskKind kind);
/// Throws ConfigError for unknown names.
TaskKind parse_task(std::string_view name);

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(Seed, Seed) = default;
  friend auto operator<=>(Seed, Seed) = default;
};

enum class Split { train, dev, test };

std::string_view split_name(Split split);
Split parse_split(std::string_view name);
/// Seeds [base, base + kSplitSize) belong to the split.
Seed split_base(Split split);
inline constexpr std::uint64_t kSplitSize = 1000;
std::optional<Split> split_of(Seed seed);

enum class Origin { environment, module };
std::string_view origin_name(Origin origin);

struct Action {
  std::string text;
  Origin origin = Origin::environment;
  friend bool operator==(const Action&, const Action&) = default;
};

/// Ordered, duplicate-free list of valid actions: environment actions first,
/// then module actions.
class ActionSet {
 public:
  ActionSet() = default;
  /// Drops texts already present (first occurrence wins). Every text must be
  /// in canonical form.
  ActionSet(std::span<const std::string> env_actions, std::span<const std::string> module_actions);

  const std::vector<Action>& actions() const noexcept { return actions_; }
  std::size_t size() const noexcept { return actions_.size(); }
  bool empty() const noexcept { return actions_.empty(); }
  auto begin() const noexcept { return actions_.begin(); }
  auto end() const noexcept { return actions_.end(); }
  const Action& operator[](std::size_t i) const { return actions_.at(i); }

  const Action* find(std::string_view text) const noexcept;
  bool contains(std::string_view text) const noexcept { return find(text) != nullptr; }
  std::vector<std::string> texts() const;

  friend bool operator==(const ActionSet&, const ActionSet&) = default;

 private:
  std::vector<Action> actions_;
};

enum class Unit { mg, g, kg, ml, l, mm, cm, m };
enum class Dimension { mass, volume, length };

std::string_view unit_symbol(Unit unit);
std::optional<Unit> parse_unit(std::string_view symbol);
Dimension unit_dimension(Unit unit);
/// Factor to the base unit of the dimension (mg, ml, mm).
std::int64_t unit_factor(Unit unit);

struct Quantity {
  std::int64_t magnitude = 0;
  Unit unit = Unit::g;

  std::int64_t base_value() const { return magnitude * unit_factor(unit); }
  friend bool operator==(const Quantity&, const Quantity&) = default;
};

/// One thing visible in a room description. `display()` is the exact phrase
/// used in the observation text and in action strings.
struct VisibleItem {
  std::string name;
  std::optional<int> count;          // "56 apples"
  std::optional<Quantity> quantity;  // "25 g of oak"

  std::string display() const;
  friend bool operator==(const VisibleItem&, const VisibleItem&) = default;
};

struct ObservationPayload {
  std::string room;
  std::vector<VisibleItem> items;
  std::vector<std::string> box_contents;
  friend bool operator==(const ObservationPayload&, const ObservationPayload&) = default;
};

struct Observation {
  std::string text;
  std::optional<ObservationPayload> structured;
  friend bool operator==(const Observation&, const Observation&) = default;
};

enum class DoneReason { none, completed, failed, step_limit, aborted };
std::string_view done_reason_name(DoneReason reason);
DoneReason parse_done_reason(std::string_view name);

struct StepResult {
  Observation observation;
  int reward = 0;
  bool done = false;
  ActionSet valid_actions;
  int raw_score = 0;
  Origin origin = Origin::environment;
};

}  // namespace symworld
