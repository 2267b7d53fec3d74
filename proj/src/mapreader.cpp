#include "symworld/mapreader.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "symworld/errors.hpp"
#include "symworld/rng.hpp"
#include "symworld/text.hpp"

namespace symworld {
namespace {

constexpr std::uint64_t kStreamTag = 0x6d61707265616465ULL;  // "mapreade"

// Hop counts from `start` to every room (-1 when unreachable).
std::vector<int> hop_counts(const RoomGraph& g, std::size_t start) {
  std::vector<std::vector<std::size_t>> adj(g.rooms.size());
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> dist(g.rooms.size(), -1);
  std::deque<std::size_t> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    const auto r = queue.front();
    queue.pop_front();
    for (auto n : adj[r]) {
      if (dist[n] < 0) {
        dist[n] = dist[r] + 1;
        queue.push_back(n);
      }
    }
  }
  return dist;
}

}  // namespace

const std::vector<std::string>& mapreader_room_vocabulary() {
  static const std::vector<std::string> rooms = {
      "pantry",  "chamber",  "canteen", "kitchen",    "lounge",     "supermarket",     "bar",
      "steam room", "library", "cookery", "recreation zone", "cooking area", "hallway", "garden",
      "attic",   "cellar",   "workshop", "office",    "bedroom",    "bathroom"};
  return rooms;
}

// --- RoomGraph --------------------------------------------------------------

std::vector<std::string> RoomGraph::neighbors(std::string_view room) const {
  std::vector<std::string> out;
  for (auto [a, b] : edges) {
    if (rooms[a] == room) out.push_back(rooms[b]);
    if (rooms[b] == room) out.push_back(rooms[a]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool RoomGraph::adjacent(std::string_view a, std::string_view b) const {
  for (auto [x, y] : edges) {
    if ((rooms[x] == a && rooms[y] == b) || (rooms[x] == b && rooms[y] == a)) return true;
  }
  return false;
}

std::size_t RoomGraph::degree(std::string_view room) const { return neighbors(room).size(); }

modules::Adjacency RoomGraph::adjacency() const {
  modules::Adjacency adj;
  for (const auto& r : rooms) adj[r] = neighbors(r);
  return adj;
}

bool RoomGraph::has_room(std::string_view room) const {
  return std::find(rooms.begin(), rooms.end(), room) != rooms.end();
}

// --- Generation -------------------------------------------------------------

MapReaderGame MapReaderGame::generate(Seed seed, const GameOptions& options) {
  Rng rng(seed.value ^ kStreamTag);
  std::vector<std::string> vocab = mapreader_room_vocabulary();

  for (;;) {
    const auto n = static_cast<std::size_t>(rng.between(kMinRooms, kMaxRooms));
    rng.shuffle(std::span<std::string>(vocab));

    RoomGraph g;
    g.rooms.assign(vocab.begin(), vocab.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<std::size_t> degree(n, 0);
    auto connect = [&](std::size_t a, std::size_t b) {
      g.edges.emplace_back(std::min(a, b), std::max(a, b));
      ++degree[a];
      ++degree[b];
    };

    // Random spanning tree with a degree cap, then a few extra edges.
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::size_t> open;
      for (std::size_t j = 0; j < i; ++j) {
        if (degree[j] < kMaxDegree) open.push_back(j);
      }
      connect(open[rng.below(open.size())], i);
    }
    const auto extra = rng.between(0, static_cast<std::int64_t>(n / 2));
    for (std::int64_t k = 0; k < extra; ++k) {
      const auto a = static_cast<std::size_t>(rng.below(n));
      const auto b = static_cast<std::size_t>(rng.below(n));
      if (a == b || degree[a] >= kMaxDegree || degree[b] >= kMaxDegree) continue;
      if (g.adjacent(g.rooms[a], g.rooms[b])) continue;
      connect(a, b);
    }

    std::vector<std::pair<std::size_t, std::size_t>> candidates;  // (box, coin)
    for (std::size_t b = 0; b < n; ++b) {
      const auto dist = hop_counts(g, b);
      for (std::size_t c = 0; c < n; ++c) {
        if (dist[c] >= kMinPath && dist[c] <= kMaxPath) candidates.emplace_back(b, c);
      }
    }
    if (candidates.empty()) continue;

    const auto [box, coin] = candidates[rng.below(candidates.size())];
    std::string start = g.rooms[box];
    if (!options.mapreader_start_in_box_room) {
      std::size_t s;
      do {
        s = static_cast<std::size_t>(rng.below(n));
      } while (s == coin);
      start = g.rooms[s];
    }
    std::string coin_room = g.rooms[coin];
    std::string box_room = g.rooms[box];
    return from_graph(std::move(g), std::move(coin_room), std::move(box_room), std::move(start));
  }
}

MapReaderGame MapReaderGame::from_graph(RoomGraph graph, std::string coin_room,
                                        std::string box_room, std::string start_room) {
  std::set<std::string> unique(graph.rooms.begin(), graph.rooms.end());
  if (unique.size() != graph.rooms.size()) throw ConfigError("duplicate room names");
  for (auto [a, b] : graph.edges) {
    if (a >= graph.rooms.size() || b >= graph.rooms.size() || a == b) {
      throw ConfigError("bad room graph edge");
    }
  }
  for (const auto* r : {&coin_room, &box_room, &start_room}) {
    if (!graph.has_room(*r)) throw ConfigError("unknown room '" + *r + "'");
  }
  if (coin_room == box_room) throw ConfigError("coin and box must be in different rooms");

  MapReaderGame game;
  game.graph_ = std::move(graph);
  game.coin_room_ = std::move(coin_room);
  game.box_room_ = std::move(box_room);
  game.agent_room_ = std::move(start_room);
  game.navigator_.observe(game.look().text);
  return game;
}

// --- Play -------------------------------------------------------------------

std::string MapReaderGame::task_description() const {
  return "Your task is to take the coin located in the " + coin_room_ +
         ", and put it into the box found in the " + box_room_ +
         ". A map is provided, that you may find helpful.";
}

Observation MapReaderGame::look() const {
  ObservationPayload payload;
  payload.room = agent_room_;
  std::string text = "You are in the " + agent_room_ + ".";
  if (agent_room_ == box_room_) {
    text += coin_placed_ ? " In one part of the room you see a box, that contains a coin."
                         : " In one part of the room you see a box, that is empty.";
    payload.items.push_back({"box", std::nullopt, std::nullopt});
    if (coin_placed_) payload.box_contents.emplace_back("coin");
  }
  if (agent_room_ == coin_room_ && !coin_held_ && !coin_placed_) {
    text += " There is also a coin.";
    payload.items.push_back({"coin", std::nullopt, std::nullopt});
  }
  const auto exits = graph_.neighbors(agent_room_);
  if (!exits.empty()) text += " From here you can go to " + join(exits, ", ") + ".";
  return {std::move(text), std::move(payload)};
}

std::string MapReaderGame::map_text() const { return modules::render_map(graph_.adjacency()); }

std::vector<std::string> MapReaderGame::env_actions() const {
  std::vector<std::string> out{"look around", "read map", "task"};
  for (const auto& n : graph_.neighbors(agent_room_)) out.push_back("go to " + n);
  if (agent_room_ == coin_room_ && !coin_held_ && !coin_placed_) out.emplace_back("take coin");
  if (agent_room_ == box_room_ && coin_held_) out.emplace_back("put coin in box");
  return out;
}

std::vector<std::string> MapReaderGame::module_actions() const {
  if (!map_read_) return {};
  return {modules::render_query(modules::NavigateQuery{coin_room_}),
          modules::render_query(modules::NavigateQuery{box_room_})};
}

EnvOutcome MapReaderGame::apply(std::string_view action) {
  EnvOutcome out;
  constexpr std::string_view kGo = "go to ";
  if (action == "look around") {
    out.observation = look();
  } else if (action == "read map") {
    map_read_ = true;
    out.observation.text = map_text();
    navigator_.read_map(out.observation.text);
  } else if (action == "task") {
    out.observation.text = task_description();
  } else if (action.starts_with(kGo) && graph_.adjacent(agent_room_, action.substr(kGo.size()))) {
    agent_room_ = std::string(action.substr(kGo.size()));
    out.observation = look();
  } else if (action == "take coin" && agent_room_ == coin_room_ && !coin_held_ && !coin_placed_) {
    coin_held_ = true;
    out.observation.text = "You take the coin.";
    out.reward = 1;
  } else if (action == "put coin in box" && agent_room_ == box_room_ && coin_held_) {
    coin_held_ = false;
    coin_placed_ = true;
    out.observation.text = "You put the coin in the box.";
    out.reward = 1;
    out.terminal = DoneReason::completed;
  } else {
    throw InvalidAction(std::string(action));
  }
  navigator_.observe(out.observation.text);
  return out;
}

std::string MapReaderGame::respond(std::string_view action) const {
  const auto query = modules::parse_query(action);
  if (query && std::holds_alternative<modules::NavigateQuery>(*query)) {
    return modules::next_step(std::get<modules::NavigateQuery>(*query).destination, navigator_);
  }
  return "That is not a valid query.";
}

std::string MapReaderGame::inventory_text() const {
  std::vector<std::string> items{"map"};
  if (coin_held_) items.emplace_back("coin");
  return render_inventory(items);
}

std::string MapReaderGame::digest() const {
  std::string d = "mapreader|";
  for (const auto& r : graph_.rooms) d += r + ",";
  d += "|";
  for (auto [a, b] : graph_.edges) d += std::to_string(a) + "-" + std::to_string(b) + ",";
  d += "|" + agent_room_ + "|" + coin_room_ + "|" + box_room_ + "|";
  d += coin_held_ ? "H" : "h";
  d += coin_placed_ ? "P" : "p";
  d += map_read_ ? "M" : "m";
  return d;
}

}  // namespace symworld
