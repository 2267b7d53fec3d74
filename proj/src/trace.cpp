#include "symworld/trace.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "symworld/errors.hpp"
#include "symworld/text.hpp"

namespace symworld {

using nlohmann::json;

std::vector<std::string> EpisodeTrace::actions() const {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.action);
  return out;
}

std::string to_jsonl(const EpisodeTrace& trace) {
  std::string out;
  json header = {{"task", task_name(trace.task)}, {"seed", trace.seed.value}};
  header["split"] = trace.split ? json(split_name(*trace.split)) : json(nullptr);
  out += header.dump() + "\n";
  for (const auto& s : trace.steps) {
    json row = {{"step", s.step},
                {"observation", s.observation},
                {"action", s.action},
                {"origin", origin_name(s.origin)},
                {"reward", s.reward},
                {"raw_score", s.raw_score}};
    out += row.dump() + "\n";
  }
  json trailer = {{"final_score", trace.final_score},
                  {"steps", trace.step_count},
                  {"done_reason", done_reason_name(trace.done_reason)}};
  out += trailer.dump() + "\n";
  return out;
}

EpisodeTrace trace_from_jsonl(std::string_view jsonl) {
  std::vector<json> lines;
  for (const auto& line : split_lines(jsonl)) {
    if (line.empty()) continue;
    try {
      lines.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw ConfigError(std::string("malformed trace line: ") + e.what());
    }
  }
  if (lines.size() < 2) throw ConfigError("trace needs a header and a trailer");

  try {
    EpisodeTrace trace;
    const json& header = lines.front();
    trace.task = parse_task(header.at("task").get<std::string>());
    trace.seed = Seed{header.at("seed").get<std::uint64_t>()};
    if (!header.at("split").is_null()) trace.split = parse_split(header["split"].get<std::string>());

    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
      const json& row = lines[i];
      TraceStep s;
      s.step = row.at("step").get<int>();
      s.observation = row.at("observation").get<std::string>();
      s.action = row.at("action").get<std::string>();
      s.origin = row.at("origin").get<std::string>() == "module" ? Origin::module
                                                                  : Origin::environment;
      s.reward = row.at("reward").get<int>();
      s.raw_score = row.at("raw_score").get<int>();
      trace.steps.push_back(std::move(s));
    }

    const json& trailer = lines.back();
    trace.final_score = trailer.at("final_score").get<double>();
    trace.step_count = trailer.at("steps").get<int>();
    trace.done_reason = parse_done_reason(trailer.at("done_reason").get<std::string>());
    return trace;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed trace: ") + e.what());
  }
}

void write_trace(const EpisodeTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write trace " + path.string());
  out << to_jsonl(trace);
}

EpisodeTrace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open trace " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return trace_from_jsonl(buf.str());
}

}  // namespace symworld
