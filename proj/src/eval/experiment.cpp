// Copyright 2026 The Scenario Forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scenario_forge/eval/experiment.hpp"

#include "scenario_forge/common/io.hpp"
#include "scenario_forge/config/requirements.hpp"
#include "scenario_forge/config/serialization.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace scenario_forge::eval
{

std::string to_string(ExperimentPipeline pipeline)
{
  switch (pipeline) {
    case ExperimentPipeline::vehicle: return "vehicle";
    case ExperimentPipeline::vehicle_grouped: return "vehicle_grouped";
    case ExperimentPipeline::precondition: return "precondition";
    case ExperimentPipeline::postcondition: return "postcondition";
  }
  return "?";
}

std::string to_string(RequirementOrder order)
{
  return order == RequirementOrder::ordered ? "ordered" : "shuffled";
}

namespace
{

[[noreturn]] void spec_error(const std::string & message)
{
  throw FormatError("experiment spec: " + message);
}

std::filesystem::path resolve(const std::filesystem::path & base, const nlohmann::json & value,
  const char * field)
{
  if (!value.is_string() || value.get<std::string>().empty()) {
    spec_error(std::string(field) + " must be a non-empty path string");
  }
  const std::filesystem::path p = value.get<std::string>();
  return p.is_absolute() ? p : base / p;
}

}  // namespace

ExperimentSpec experiment_from_json(const nlohmann::json & j, const std::filesystem::path & base_dir)
{
  if (!j.is_object()) {
    spec_error("must be a JSON object");
  }
  static const std::set<std::string> allowed{"name", "pipeline", "requirements", "suite", "graph",
    "styles", "orders", "n", "seed", "k", "threads", "backend"};
  for (const auto & [key, value] : j.items()) {
    (void)value;
    if (allowed.count(key) == 0) {
      spec_error("unexpected field '" + key + "'");
    }
  }
  for (const char * key : {"name", "pipeline", "requirements", "suite", "styles", "n"}) {
    if (!j.contains(key)) {
      spec_error(std::string("missing field '") + key + "'");
    }
  }
  ExperimentSpec spec;
  if (!j["name"].is_string() || j["name"].get<std::string>().empty()) {
    spec_error("name must be a non-empty string");
  }
  spec.name = j["name"].get<std::string>();
  const std::string pipeline = j["pipeline"].is_string() ? j["pipeline"].get<std::string>() : "";
  if (pipeline == "vehicle") {
    spec.pipeline = ExperimentPipeline::vehicle;
  } else if (pipeline == "vehicle_grouped") {
    spec.pipeline = ExperimentPipeline::vehicle_grouped;
  } else if (pipeline == "precondition" || pipeline == "pre") {
    spec.pipeline = ExperimentPipeline::precondition;
  } else if (pipeline == "postcondition" || pipeline == "post") {
    spec.pipeline = ExperimentPipeline::postcondition;
  } else {
    spec_error("unknown pipeline '" + pipeline + "'");
  }
  spec.requirements = resolve(base_dir, j["requirements"], "requirements");
  spec.suite = resolve(base_dir, j["suite"], "suite");
  if (j.contains("graph")) {
    spec.graph = resolve(base_dir, j["graph"], "graph");
  }
  if (spec.pipeline == ExperimentPipeline::precondition && !spec.graph) {
    spec_error("precondition experiments need a graph");
  }
  if (!j["styles"].is_array() || j["styles"].empty()) {
    spec_error("styles must be a non-empty list");
  }
  for (const auto & s : j["styles"]) {
    const auto style = s.is_string() ? llm::parse_prompt_style(s.get<std::string>()) : std::nullopt;
    if (!style) {
      spec_error("unknown style " + s.dump());
    }
    spec.styles.push_back(*style);
  }
  if (j.contains("orders")) {
    spec.orders.clear();
    if (!j["orders"].is_array() || j["orders"].empty()) {
      spec_error("orders must be a non-empty list");
    }
    for (const auto & o : j["orders"]) {
      if (o == "ordered") {
        spec.orders.push_back(RequirementOrder::ordered);
      } else if (o == "shuffled") {
        spec.orders.push_back(RequirementOrder::shuffled);
      } else {
        spec_error("unknown order " + o.dump());
      }
    }
  }
  if (!j["n"].is_number_integer() || j["n"].get<long>() < 1 || j["n"].get<long>() > 10000) {
    spec_error("n must be an integer in [1, 10000]");
  }
  spec.n = j["n"].get<int>();
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      spec_error("seed must be a non-negative integer");
    }
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("k")) {
    spec.ks.clear();
    if (!j["k"].is_array()) {
      spec_error("k must be a list of positive integers");
    }
    for (const auto & k : j["k"]) {
      if (!k.is_number_integer() || k.get<long>() < 1) {
        spec_error("k must be a list of positive integers");
      }
      spec.ks.push_back(k.get<int>());
    }
  }
  if (j.contains("threads")) {
    if (!j["threads"].is_number_integer() || j["threads"].get<long>() < 1) {
      spec_error("threads must be a positive integer");
    }
    spec.threads = j["threads"].get<std::size_t>();
  }
  if (j.contains("backend")) {
    const auto & b = j["backend"];
    if (!b.is_object() || !b.contains("kind") || !b["kind"].is_string()) {
      spec_error("backend must be an object with a kind");
    }
    BackendSpec backend;
    backend.kind = b["kind"].get<std::string>();
    for (const auto & [key, value] : b.items()) {
      if (key == "fixtures") {
        backend.fixtures = resolve(base_dir, value, "backend.fixtures");
      } else if (key == "script") {
        backend.script = resolve(base_dir, value, "backend.script");
      } else if (key != "kind") {
        spec_error("unexpected backend field '" + key + "'");
      }
    }
    spec.backend = backend;
  }
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path & path)
{
  return experiment_from_json(read_json_file(path), path.parent_path());
}

ExperimentReport summarize(std::string label, std::vector<AttemptRecord> attempts,
  const std::vector<int> & ks)
{
  ExperimentReport report;
  report.label = std::move(label);
  report.n = static_cast<int>(attempts.size());
  std::vector<AttemptGrade> grades;
  for (const auto & a : attempts) {
    grades.push_back(a.grade);
    for (const auto & id : a.grade.failed) {
      ++report.failure_counts[id];
    }
  }
  report.avg_tpr = avg_tpr(grades);
  long correct = 0;
  for (const auto & g : grades) {
    correct += g.correct() ? 1 : 0;
  }
  for (int k : ks) {
    if (k <= report.n) {
      report.pass_at[k] = pass_at_k(report.n, correct, k);
    }
  }
  const bool flagged = std::all_of(grades.begin(), grades.end(),
      [](const AttemptGrade & g) {return g.code_gen_ok.has_value();});
  if (flagged) {
    report.code_gen_success_rate = code_gen_success_rate(grades);
  }
  report.attempts = std::move(attempts);
  return report;
}

namespace
{

AttemptRecord run_attempt(const ExperimentSpec & spec, const generators::GeneratorContext & ctx,
  const std::vector<config::Requirement> & base, const Suite & suite,
  const road_graph::RoadGraph * graph, llm::PromptStyle style, RequirementOrder order, int index)
{
  AttemptRecord record;
  std::vector<config::Requirement> requirements = base;
  if (order == RequirementOrder::shuffled) {
    record.shuffle_seed = spec.seed + static_cast<std::uint64_t>(index);
    requirements = generators::shuffle_requirements(requirements, *record.shuffle_seed);
  }
  std::optional<nlohmann::json> artifact;
  std::optional<bool> code_gen_ok;
  auto note = [&](const llm::GenerationAttempt & a) {
      record.completions.emplace_back(a.prompt_key, a.attempt_index);
      record.errors.insert(record.errors.end(), a.errors.begin(), a.errors.end());
    };
  try {
    switch (spec.pipeline) {
      case ExperimentPipeline::vehicle: {
          auto out = generators::generate_vehicle(ctx, requirements, style, index);
          note(out.attempt);
          if (out.config) {
            artifact = config::to_json(*out.config);
          }
          break;
        }
      case ExperimentPipeline::vehicle_grouped: {
          auto out = generators::generate_vehicle_grouped(ctx, requirements, style, index);
          for (const auto & a : out.attempts) {
            record.completions.emplace_back(a.prompt_key, a.attempt_index);
          }
          record.errors = out.errors;
          if (out.config) {
            artifact = config::to_json(*out.config);
          }
          break;
        }
      case ExperimentPipeline::precondition: {
          auto out = generators::generate_preconditions(ctx, requirements, style, *graph, index);
          record.completions.emplace_back(out.step1.prompt_key, out.step1.attempt_index);
          if (out.step2) {
            record.completions.emplace_back(out.step2->prompt_key, out.step2->attempt_index);
          }
          record.errors = out.errors;
          code_gen_ok = out.code_gen_ok;
          if (out.scene) {
            artifact = config::to_json(*out.scene);
          }
          break;
        }
      case ExperimentPipeline::postcondition: {
          auto out = generators::generate_postconditions(ctx, requirements, style, index);
          note(out.attempt);
          if (out.checks) {
            artifact = config::to_json(*out.checks);
          }
          break;
        }
    }
  } catch (const std::exception & e) {
    record.errors.emplace_back(e.what());
    artifact.reset();
    if (spec.pipeline == ExperimentPipeline::precondition) {
      code_gen_ok = false;
    }
  }
  record.grade = grade(artifact, suite, index);
  record.grade.code_gen_ok = code_gen_ok;
  return record;
}

}  // namespace

std::vector<ExperimentReport> run_experiment(const ExperimentSpec & spec,
  const generators::GeneratorContext & ctx)
{
  const auto requirements = config::load_requirements(spec.requirements);
  if (requirements.empty()) {
    throw DomainError("experiment '" + spec.name + "' has no requirements");
  }
  const Suite suite = load_suite(spec.suite);
  if (suite.empty()) {
    throw DomainError("experiment '" + spec.name + "' has an empty suite");
  }
  std::optional<road_graph::RoadGraph> graph;
  if (spec.graph) {
    graph = road_graph::load_graph(*spec.graph);
  }

  std::vector<ExperimentReport> reports;
  for (const auto style : spec.styles) {
    for (const auto order : spec.orders) {
      std::vector<AttemptRecord> records(static_cast<std::size_t>(spec.n));
      std::atomic<int> next{0};
      auto worker = [&] {
          for (int i = next++; i < spec.n; i = next++) {
            records[static_cast<std::size_t>(i)] = run_attempt(spec, ctx, requirements, suite,
              graph ? &*graph : nullptr, style, order, i);
          }
        };
      const std::size_t workers = std::min<std::size_t>(spec.threads,
          static_cast<std::size_t>(spec.n));
      if (workers <= 1) {
        worker();
      } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
          pool.emplace_back(worker);
        }
        for (auto & th : pool) {
          th.join();
        }
      }
      std::string label = llm::to_string(style);
      if (spec.orders.size() > 1) {
        label += "/" + to_string(order);
      }
      auto report = summarize(label, std::move(records), spec.ks);
      report.pipeline = spec.pipeline;
      report.style = style;
      report.order = order;
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

}  // namespace scenario_forge::eval
