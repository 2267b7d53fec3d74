#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symworld/agents.hpp"
#include "symworld/engine.hpp"
#include "symworld/errors.hpp"
#include "symworld/eval.hpp"
#include "symworld/modules.hpp"
#include "symworld/prompts.hpp"
#include "symworld/trace.hpp"

namespace py = pybind11;
namespace sw = symworld;

namespace {

py::list action_list(const sw::ActionSet& actions) {
  py::list out;
  for (const auto& a : actions) out.append(py::make_tuple(a.text, std::string(sw::origin_name(a.origin))));
  return out;
}

std::unique_ptr<sw::Policy> make_policy(const std::string& agent, std::uint64_t seed) {
  if (agent == "oracle") return std::make_unique<sw::OraclePolicy>();
  if (agent == "random") return std::make_unique<sw::RandomPolicy>(seed);
  throw sw::ConfigError("python bindings run oracle or random agents, not " + agent);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Text games with symbolic modules";

  // Base first: translators registered later are tried first.
  auto& error = py::register_exception<sw::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<sw::ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<sw::InvalidAction>(m, "InvalidAction", error.ptr());
  py::register_exception<sw::EpisodeFinished>(m, "EpisodeFinished", error.ptr());

  m.attr("TASKS") = py::make_tuple("arithmetic", "mapreader", "sorting", "twc");
  m.attr("DEFAULT_STEP_LIMIT") = sw::kDefaultStepLimit;

  py::class_<sw::Episode>(m, "Episode")
      .def(py::init([](const std::string& task, std::uint64_t seed, int step_limit, bool count_module_steps) {
             sw::EpisodeOptions options;
             options.step_limit = step_limit;
             options.count_module_steps = count_module_steps;
             return sw::Episode::reset(sw::parse_task(task), sw::Seed{seed}, options);
           }),
           py::arg("task"), py::arg("seed"), py::arg("step_limit") = sw::kDefaultStepLimit,
           py::arg("count_module_steps") = true)
      .def("step",
           [](sw::Episode& ep, const std::string& action) {
             const auto r = ep.step(action);
             py::dict out;
             out["observation"] = r.observation.text;
             out["reward"] = r.reward;
             out["done"] = r.done;
             out["raw_score"] = r.raw_score;
             out["origin"] = std::string(sw::origin_name(r.origin));
             out["valid_actions"] = action_list(r.valid_actions);
             return out;
           })
      .def_property_readonly("task", [](const sw::Episode& ep) { return std::string(sw::task_name(ep.task())); })
      .def_property_readonly("seed", [](const sw::Episode& ep) { return ep.seed().value; })
      .def_property_readonly("task_description", &sw::Episode::task_description)
      .def_property_readonly("observation", [](const sw::Episode& ep) { return ep.observation().text; })
      .def_property_readonly("inventory", &sw::Episode::inventory_text)
      .def_property_readonly("valid_actions", [](const sw::Episode& ep) { return action_list(ep.valid_actions()); })
      .def_property_readonly("raw_score", &sw::Episode::raw_score)
      .def_property_readonly("max_raw_score", &sw::Episode::max_raw_score)
      .def_property_readonly("score", &sw::Episode::normalized_score)
      .def_property_readonly("steps", &sw::Episode::steps)
      .def_property_readonly("done", &sw::Episode::done)
      .def_property_readonly("done_reason",
                             [](const sw::Episode& ep) { return std::string(sw::done_reason_name(ep.done_reason())); });

  m.def("normalize_score", &sw::normalize_score, py::arg("raw"), py::arg("max_raw"));

  m.def(
      "run_episode",
      [](const std::string& task, std::uint64_t seed, const std::string& agent, std::uint64_t agent_seed) {
        auto policy = make_policy(agent, agent_seed);
        return sw::to_jsonl(sw::run_episode(sw::parse_task(task), sw::Seed{seed}, *policy));
      },
      py::arg("task"), py::arg("seed"), py::arg("agent") = "oracle", py::arg("agent_seed") = 0,
      "Runs one episode and returns its JSONL trace.");

  m.def(
      "evaluate",
      [](std::vector<std::string> tasks, const std::string& split, int episodes, const std::string& agent,
         int jobs) {
        sw::RunConfig config;
        config.tasks.clear();
        for (const auto& t : tasks) config.tasks.push_back(sw::parse_task(t));
        config.split = sw::parse_split(split);
        config.episodes = episodes;
        config.jobs = jobs;
        config.agent = agent;
        sw::EvalReport report = [&] {
          py::gil_scoped_release release;
          return sw::run_benchmark(config, sw::make_policy_factory(sw::AgentSpec::parse(agent)));
        }();
        return report.to_json().dump();
      },
      py::arg("tasks") = std::vector<std::string>{"arithmetic", "mapreader", "sorting", "twc"},
      py::arg("split") = "test", py::arg("episodes") = 100, py::arg("agent") = "oracle", py::arg("jobs") = 1,
      "Runs a benchmark and returns the report as a JSON string.");

  m.def("role_init", [](const std::string& task, const std::string& description) {
    return sw::build_role_init(sw::parse_task(task), description);
  });
  m.def("calc", [](const std::string& action) {
    const auto q = sw::modules::parse_query(action);
    if (!q || !std::holds_alternative<sw::modules::CalcQuery>(*q)) throw sw::ConfigError("not a calculator query: " + action);
    const auto& c = std::get<sw::modules::CalcQuery>(*q);
    return sw::modules::calc(c.op, c.a, c.b);
  });
  m.def("kb_query", [](const std::string& object) {
    return sw::modules::kb_query(object, sw::KnowledgeBase::embedded());
  });
}
