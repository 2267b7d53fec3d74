#pragma once

#include <string>
#include <utility>
#include <vector>

#include "symworld/game.hpp"
#include "symworld/modules.hpp"

namespace symworld {

/// Undirected room graph. Rooms are unique names; edges are index pairs.
struct RoomGraph {
  std::vector<std::string> rooms;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::string> neighbors(std::string_view room) const;
  bool adjacent(std::string_view a, std::string_view b) const;
  std::size_t degree(std::string_view room) const;
  modules::Adjacency adjacency() const;
  bool has_room(std::string_view room) const;
};

/// Fixed room vocabulary the generator draws from.
const std::vector<std::string>& mapreader_room_vocabulary();

/// Take the coin in one room and carry it to the box in another, using a map
/// of the room graph.
class MapReaderGame {
 public:
  static constexpr int kMinRooms = 6;
  static constexpr int kMaxRooms = 12;
  static constexpr std::size_t kMaxDegree = 4;
  static constexpr int kMinPath = 2;
  static constexpr int kMaxPath = 6;

  static MapReaderGame generate(Seed seed, const GameOptions& options = {});
  static MapReaderGame from_graph(RoomGraph graph, std::string coin_room, std::string box_room,
                                  std::string start_room);

  std::string task_description() const;
  Observation look() const;
  std::vector<std::string> env_actions() const;
  std::vector<std::string> module_actions() const;
  EnvOutcome apply(std::string_view action);
  std::string respond(std::string_view action) const;
  std::string inventory_text() const;
  int max_raw() const { return 2; }
  std::string digest() const;

  const RoomGraph& graph() const noexcept { return graph_; }
  const std::string& agent_room() const noexcept { return agent_room_; }
  const std::string& coin_room() const noexcept { return coin_room_; }
  const std::string& box_room() const noexcept { return box_room_; }
  bool coin_held() const noexcept { return coin_held_; }
  bool coin_placed() const noexcept { return coin_placed_; }
  bool map_read() const noexcept { return map_read_; }
  const modules::NavigatorContext& navigator() const noexcept { return navigator_; }

  /// Exact response of "read map".
  std::string map_text() const;

 private:
  MapReaderGame() = default;

  RoomGraph graph_;
  std::string agent_room_;
  std::string coin_room_;
  std::string box_room_;
  bool coin_held_ = false;
  bool coin_placed_ = false;
  bool map_read_ = false;
  modules::NavigatorContext navigator_;
};

}  // namespace symworld
