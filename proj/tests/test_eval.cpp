#include <doctest.h>

#include <map>

#include "symworld/errors.hpp"
#include "symworld/eval.hpp"

using namespace symworld;

namespace {

struct Cell {
  double score;
  int steps;
};

// Published numbers, transcribed independently of the library table.
const std::map<std::string, std::vector<Cell>> kPublished = {
    {"drrn", {{0.17, 10}, {0.02, 50}, {0.03, 21}, {0.57, 27}, {0.20, 27}}},
    {"drrn+module", {{0.14, 7}, {0.02, 50}, {0.03, 18}, {0.37, 34}, {0.14, 27}}},
    {"bc", {{0.56, 5}, {0.71, 27}, {0.72, 7}, {0.90, 6}, {0.72, 11}}},
    {"bc+module", {{1.00, 5}, {1.00, 10}, {0.98, 8}, {0.97, 3}, {0.99, 7}}},
    {"llm", {{1.00, 4}, {0.86, 15}, {0.71, 7}, {0.94, 4}, {0.88, 7}}},
    {"llm-train", {{1.00, 3}, {0.84, 15}, {0.70, 7}, {0.93, 4}, {0.87, 7}}},
    {"llm-dev", {{0.95, 4}, {0.84, 14}, {0.63, 6}, {0.835, 5}, {0.81, 7}}},
    {"llm-unconstrained", {{0.96, 3}, {0.64, 12}, {0.35, 10}, {0.73, 7}, {0.67, 8}}},
    {"gpt4", {{1.00, 4}, {0.99, 7}, {0.93, 8}, {0.71, 16}, {0.91, 8}}},
};

EpisodeRow row(TaskKind t, std::uint64_t seed, double score, int steps,
               DoneReason why = DoneReason::completed) {
  return {t, Seed{seed}, score, 0, 1, steps, why};
}

RunConfig small(std::vector<TaskKind> tasks, int episodes) {
  RunConfig c;
  c.tasks = std::move(tasks);
  c.episodes = episodes;
  return c;
}

}  // namespace

TEST_CASE("agent specs") {
  CHECK(AgentSpec::parse("oracle").kind == AgentKind::oracle);
  CHECK(AgentSpec::parse("random").kind == AgentKind::random);
  const auto mock = AgentSpec::parse("mock:/tmp/s.jsonl");
  CHECK(mock.kind == AgentKind::mock);
  CHECK(mock.mock_script == "/tmp/s.jsonl");
  CHECK_THROWS_AS(AgentSpec::parse("human"), ConfigError);
  CHECK(AgentSpec::parse("llm").name() == "llm");
}

TEST_CASE("llm agent needs a credential or an explicit endpoint") {
  AgentSpec spec = AgentSpec::parse("llm");
  CHECK_THROWS_AS(make_policy_factory(spec), ConfigError);
  spec.llm.api_key = "k";
  CHECK_NOTHROW(make_policy_factory(spec));
  AgentSpec local = AgentSpec::parse("llm");
  local.llm.endpoint = "http://127.0.0.1:9/v1";
  local.llm.endpoint_configured = true;
  CHECK_NOTHROW(make_policy_factory(local));
}

TEST_CASE("run config seeds") {
  RunConfig c;
  c.split = Split::dev;
  c.episodes = 3;
  c.seed_offset = 10;
  CHECK(c.seeds() == std::vector<Seed>{Seed{1010}, Seed{1011}, Seed{1012}});
  c.episodes = 0;
  CHECK_THROWS_AS(c.seeds(), ConfigError);
  CHECK_FALSE(RunConfig{}.to_json().contains("jobs"));
}

TEST_CASE("report aggregation") {
  EvalReport r(nlohmann::json::object(),
               {row(TaskKind::twc, 2001, 1.0, 3), row(TaskKind::arithmetic, 2000, 0.0, 10),
                row(TaskKind::arithmetic, 2001, 1.0, 5), row(TaskKind::twc, 2000, 0.5, 6, DoneReason::aborted)});
  REQUIRE(r.per_task().size() == 2);
  CHECK(r.rows().front().task == TaskKind::arithmetic);
  CHECK(r.rows().front().seed == Seed{2000});
  CHECK(r.per_task()[0].mean_score() == doctest::Approx(0.5));
  CHECK(r.per_task()[0].mean_steps() == doctest::Approx(7.5));
  CHECK(r.per_task()[1].mean_score() == doctest::Approx(0.75));
  CHECK(r.overall_score() == doctest::Approx(0.625));
  CHECK(r.overall_steps() == doctest::Approx(6.0));
  CHECK(r.aborted() == 1);
  CHECK_THROWS_AS(EvalReport(nlohmann::json::object(), {}), ConfigError);

  const auto j = r.to_json();
  CHECK(j["summary"]["aborted"] == 1);
  CHECK(j["rows"].size() == 4);
  const auto back = EvalReport::from_json(j);
  CHECK(back.rows() == r.rows());
  CHECK(back.to_json() == j);
}

TEST_CASE("average weighs tasks equally") {
  EvalReport r(nlohmann::json::object(),
               {row(TaskKind::arithmetic, 1, 1.0, 2), row(TaskKind::arithmetic, 2, 1.0, 2),
                row(TaskKind::arithmetic, 3, 1.0, 2), row(TaskKind::sorting, 1, 0.0, 8)});
  CHECK(r.overall_score() == doctest::Approx(0.5));
  CHECK(r.overall_steps() == doctest::Approx(5.0));
}

TEST_CASE("published reference columns") {
  const auto& cols = reference_columns();
  CHECK(cols.size() == kPublished.size());
  for (const auto& [key, cells] : kPublished) {
    CAPTURE(key);
    REQUIRE(cols.contains(key));
    const auto& col = cols.at(key);
    for (std::size_t i = 0; i < kAllTasks.size(); ++i) {
      CHECK(col.rows.at(kAllTasks[i]).score == doctest::Approx(cells[i].score));
      CHECK(col.rows.at(kAllTasks[i]).steps == cells[i].steps);
    }
    CHECK(col.average.score == doctest::Approx(cells[4].score));
    CHECK(col.average.steps == cells[4].steps);
  }
  CHECK_THROWS_AS(select_reference_columns(std::vector<std::string>{"nope"}), ConfigError);
}

TEST_CASE("table rendering") {
  EvalReport r(nlohmann::json::object(), {row(TaskKind::sorting, 2000, 1.0, 7), row(TaskKind::sorting, 2001, 0.5, 8)});
  const auto refs = select_reference_columns(std::vector<std::string>{"bc+module", "llm-dev"});
  const auto table = render_table(r, refs, "mine");
  CHECK(table.find("Sorting") != std::string::npos);
  CHECK(table.find("Arithmetic") == std::string::npos);
  CHECK(table.find("0.75") != std::string::npos);
  CHECK(table.find("0.98") != std::string::npos);
  CHECK(table.find("Average") != std::string::npos);

  EvalReport twc(nlohmann::json::object(), {row(TaskKind::twc, 2000, 1.0, 3)});
  CHECK(render_table(twc, select_reference_columns(std::vector<std::string>{"llm-dev"})).find("0.835") !=
        std::string::npos);

  CHECK(format_score(1.0) == "1.00");
  CHECK(format_score(0.835) == "0.83");
  CHECK(round_steps(7.5) == 8);
  CHECK(round_steps(7.49) == 7);
}

TEST_CASE("benchmark results do not depend on the thread count") {
  AgentSpec spec = AgentSpec::parse("random");
  spec.random_seed = 3;
  const auto factory = make_policy_factory(spec);
  auto one = small({kAllTasks.begin(), kAllTasks.end()}, 12);
  auto four = one;
  four.jobs = 4;
  CHECK(run_benchmark(one, factory).to_json().dump() == run_benchmark(four, factory).to_json().dump());
}

TEST_CASE("random arithmetic play rarely succeeds") {
  const auto report = run_benchmark(small({TaskKind::arithmetic}, 100), make_policy_factory(AgentSpec::parse("random")));
  CHECK(report.overall_score() < 0.5);
}

TEST_CASE("oracle benchmark") {
  const auto report = run_benchmark(small({kAllTasks.begin(), kAllTasks.end()}, 25),
                                    make_policy_factory(AgentSpec::parse("oracle")));
  CHECK(report.overall_score() == 1.0);
  CHECK(report.aborted() == 0);
  CHECK(report.rows().size() == 100);
}

TEST_CASE("single-episode runs") {
  const auto report = run_benchmark(small({TaskKind::mapreader}, 1), make_policy_factory(AgentSpec::parse("oracle")));
  CHECK(report.rows().size() == 1);
  CHECK(report.rows()[0].seed == Seed{2000});
}
