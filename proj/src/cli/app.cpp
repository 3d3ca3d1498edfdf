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

#include "scenario_forge/cli/app.hpp"

#include "scenario_forge/assembly/merge.hpp"
#include "scenario_forge/common/io.hpp"
#include "scenario_forge/config/catalog.hpp"
#include "scenario_forge/config/requirements.hpp"
#include "scenario_forge/config/serialization.hpp"
#include "scenario_forge/eval/experiment.hpp"
#include "scenario_forge/eval/report.hpp"
#include "scenario_forge/generators/generators.hpp"
#include "scenario_forge/llm/backend.hpp"
#include "scenario_forge/llm/replay_key.hpp"
#include "scenario_forge/placement/interpreter.hpp"
#include "scenario_forge/telemetry/checker.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef SCENARIO_FORGE_DATA_DIR
#define SCENARIO_FORGE_DATA_DIR "."
#endif

namespace scenario_forge::cli
{

std::filesystem::path default_data_dir()
{
  if (const char * env = std::getenv("SCENARIO_FORGE_DATA"); env != nullptr && *env != '\0') {
    return env;
  }
  return SCENARIO_FORGE_DATA_DIR;
}

namespace
{

using nlohmann::json;

/// Loaded data shared by the commands.
struct Environment
{
  config::SchemaSet schemas;
  config::Catalogs catalogs;

  static Environment load(const RunConfig & run)
  {
    if (!std::filesystem::is_directory(run.data_dir)) {
      throw IoError("data directory '" + run.data_dir.string() + "' does not exist");
    }
    return Environment{config::SchemaSet::load(run.schemas()),
      config::Catalogs::load(run.catalogs())};
  }
};

struct BackendOptions
{
  std::string kind{"replay"};
  std::string fixtures;
  std::string script;
  std::string record;
  std::string model{"gpt-4o"};
  double temperature{1.0};
  std::size_t concurrency{4};
};

std::shared_ptr<llm::CompletionBackend> make_backend(const BackendOptions & opts,
  const RunConfig & run, bool per_attempt_fixtures)
{
  std::shared_ptr<llm::CompletionBackend> backend;
  if (opts.kind == "replay") {
    backend = std::make_shared<llm::ReplayBackend>(
      opts.fixtures.empty() ? run.replay_fixtures() : std::filesystem::path(opts.fixtures),
      per_attempt_fixtures);
  } else if (opts.kind == "scripted") {
    if (opts.script.empty()) {
      throw DomainError("the scripted backend needs --script <responses.json>");
    }
    backend = llm::ScriptedBackend::from_file(opts.script);
  } else if (opts.kind == "live") {
    auto config = llm::LiveConfig::from_env();
    config.model = opts.model;
    config.temperature = opts.temperature;
    config.max_concurrency = opts.concurrency;
    backend = std::make_shared<llm::LiveBackend>(config);
  } else {
    throw DomainError("unknown backend '" + opts.kind + "'");
  }
  if (!opts.record.empty()) {
    backend = std::make_shared<llm::RecordingBackend>(backend, opts.record, per_attempt_fixtures);
  }
  return backend;
}

void add_backend_options(CLI::App * cmd, BackendOptions & opts)
{
  cmd->add_option("--backend", opts.kind, "Completion backend")
  ->check(CLI::IsMember({"replay", "scripted", "live"}));
  cmd->add_option("--fixtures", opts.fixtures, "Replay fixture directory");
  cmd->add_option("--script", opts.script, "JSON list of responses for the scripted backend");
  cmd->add_option("--record", opts.record, "Store every response as a replay fixture here");
  cmd->add_option("--model", opts.model, "Model name for the live backend");
  cmd->add_option("--temperature", opts.temperature, "Sampling temperature for the live backend")
  ->check(CLI::Range(0.0, 2.0));
  cmd->add_option("--concurrency", opts.concurrency, "Live request concurrency limit")
  ->check(CLI::Range(1, 64));
}

std::string attempt_path(const std::string & out)
{
  return out + ".attempt.json";
}

config::PartKind parse_part_or_throw(const std::string & text)
{
  const auto kind = config::parse_part_kind(text);
  if (!kind) {
    throw DomainError("unknown part '" + text + "'");
  }
  return *kind;
}

void print_violations(std::ostream & err, const std::vector<config::Violation> & violations)
{
  for (const auto & v : violations) {
    err << "  " << config::to_string(v) << '\n';
  }
}

json violations_json(const std::vector<config::Violation> & violations)
{
  json list = json::array();
  for (const auto & v : violations) {
    list.push_back({{"path", v.path}, {"message", v.message}});
  }
  return list;
}

// ---------------------------------------------------------------- generate

struct GenerateOptions
{
  std::string part;
  std::string requirements;
  std::string style{"simple"};
  std::string out;
  std::string graph;
  bool grouped{false};
  bool shuffle{false};
  std::optional<int> attempt;  ///< unset: use and record attempt-independent fixtures
  BackendOptions backend;
};

int cmd_generate(const GenerateOptions & o, const RunConfig & run, std::uint64_t seed,
  bool as_json, std::ostream & out, std::ostream & err)
{
  const auto kind = parse_part_or_throw(o.part);
  const auto style = llm::parse_prompt_style(o.style);
  if (!style) {
    throw DomainError("unknown style '" + o.style + "'");
  }
  if (o.grouped && kind != config::PartKind::vehicle) {
    throw DomainError("--grouped only applies to vehicle generation");
  }
  auto env = Environment::load(run);
  auto requirements = config::load_requirements(o.requirements);
  if (o.shuffle) {
    requirements = generators::shuffle_requirements(requirements, seed);
  }
  const auto prompts = llm::PromptLibrary::load(run.prompts());
  const auto tools = placement::default_registry();
  auto backend = make_backend(o.backend, run, o.attempt.has_value());
  const int attempt = o.attempt.value_or(0);
  const generators::GeneratorContext ctx{env.schemas, env.catalogs, prompts, *backend, tools};

  const std::string target = o.out.empty() ? config::to_string(kind) + ".json" : o.out;
  std::optional<config::Part> part;
  std::vector<llm::GenerationAttempt> attempts;
  std::vector<std::string> errors;
  json extra = json::object();
  switch (kind) {
    case config::PartKind::vehicle:
      if (o.grouped) {
        auto result = generators::generate_vehicle_grouped(ctx, requirements, *style, attempt);
        attempts = result.attempts;
        errors = result.errors;
        json groups = json::array();
        for (const auto & [name, ids] : result.groups) {
          groups.push_back({{"group", name}, {"requirements", ids}});
        }
        extra["groups"] = groups;
        if (result.config) {
          part = *result.config;
        }
      } else {
        auto result = generators::generate_vehicle(ctx, requirements, *style, attempt);
        attempts = {result.attempt};
        errors = result.attempt.errors;
        if (result.config) {
          part = *result.config;
        }
      }
      break;
    case config::PartKind::scene: {
        const auto graph = road_graph::load_graph(
          o.graph.empty() ? run.default_graph() : std::filesystem::path(o.graph));
        auto result = generators::generate_preconditions(ctx, requirements, *style, graph,
            attempt);
        attempts = {result.step1};
        if (result.step2) {
          attempts.push_back(*result.step2);
        }
        errors = result.errors;
        extra["code_gen_ok"] = result.code_gen_ok;
        if (result.scene && result.scene->resolved) {
          part = *result.scene;
        } else if (result.scene && errors.empty()) {
          errors.push_back("scene was not resolved");
        }
        break;
      }
    case config::PartKind::checks: {
        auto result = generators::generate_postconditions(ctx, requirements, *style, attempt);
        attempts = {result.attempt};
        errors = result.attempt.errors;
        if (result.checks) {
          part = *result.checks;
        }
        break;
      }
  }

  json record{{"part", config::to_string(kind)}, {"style", o.style}, {"ok", part.has_value()},
    {"errors", errors}, {"requirements", o.requirements}};
  if (o.shuffle) {
    record["seed"] = seed;
  }
  record.update(extra);
  record["attempts"] = json::array();
  for (const auto & a : attempts) {
    record["attempts"].push_back(llm::to_json(a));
  }
  write_text_file(attempt_path(target), canonical_dump(record));
  if (part) {
    write_text_file(target, config::serialize(*part));
  }

  if (as_json) {
    json summary{{"ok", part.has_value()}, {"part", config::to_string(kind)},
      {"attempt_file", attempt_path(target)}, {"errors", errors}};
    if (part) {
      summary["output"] = target;
    }
    summary.update(extra);
    out << summary.dump() << '\n';
  }
  if (!part) {
    err << "generation failed:\n";
    for (const auto & e : errors) {
      err << "  " << e << '\n';
    }
    return ExitCode::domain;
  }
  if (!as_json) {
    out << "wrote " << target << " (attempt record " << attempt_path(target) << ")\n";
  }
  return ExitCode::ok;
}

// ---------------------------------------------------------------- merge

std::optional<config::GenerationMeta> provenance_of(const std::filesystem::path & part_file)
{
  const std::filesystem::path record_file = attempt_path(part_file.string());
  if (!std::filesystem::is_regular_file(record_file)) {
    return std::nullopt;
  }
  const json record = read_json_file(record_file);
  if (!record.contains("attempts") || !record["attempts"].is_array() ||
    record["attempts"].empty())
  {
    return std::nullopt;
  }
  const json & last = record["attempts"].back();
  config::GenerationMeta meta;
  meta.pipeline = last.value("pipeline", "");
  meta.prompt_style = last.value("style", "");
  meta.backend_id = last.value("backend", "");
  meta.attempt_index = last.value("attempt_index", 0);
  return meta;
}

config::Part load_part(const std::string & path, config::PartKind kind)
{
  try {
    return config::parse_part(read_text_file(path), kind);
  } catch (const FormatError & e) {
    throw FormatError(path + ": " + e.what());
  }
}

int cmd_merge(const std::string & vehicle_file, const std::string & scene_file,
  const std::string & checks_file, const std::string & out_file, const RunConfig & run,
  bool as_json, std::ostream & out, std::ostream & err)
{
  auto env = Environment::load(run);
  const auto vehicle = load_part(vehicle_file, config::PartKind::vehicle);
  const auto scene = load_part(scene_file, config::PartKind::scene);
  const auto checks = load_part(checks_file, config::PartKind::checks);
  std::vector<config::Violation> violations;
  for (const auto * p : {&vehicle, &scene, &checks}) {
    for (const auto & v : config::validate_part(*p, env.schemas, env.catalogs)) {
      violations.push_back({"/" + config::to_string(static_cast<config::PartKind>(p->index())) +
          v.path, v.message});
    }
  }
  if (!violations.empty()) {
    if (as_json) {
      out << json{{"ok", false}, {"violations", violations_json(violations)}}.dump() << '\n';
    }
    err << "input parts are invalid:\n";
    print_violations(err, violations);
    return ExitCode::domain;
  }
  std::map<std::string, config::GenerationMeta> provenance;
  const std::pair<const char *, const std::string *> sources[] = {
    {"vehicle", &vehicle_file}, {"scene", &scene_file}, {"checks", &checks_file}};
  for (const auto & [name, file] : sources) {
    if (auto meta = provenance_of(*file)) {
      provenance[name] = *meta;
    }
  }
  const auto doc = assembly::merge(std::get<config::VehicleConfig>(vehicle),
      std::get<config::SceneConfig>(scene), std::get<config::CheckList>(checks), {}, provenance);
  const auto problems = assembly::validate_document(doc, env.schemas, env.catalogs);
  if (!problems.empty()) {
    if (as_json) {
      out << json{{"ok", false}, {"violations", violations_json(problems)}}.dump() << '\n';
    }
    err << "merged document is inconsistent:\n";
    print_violations(err, problems);
    return ExitCode::domain;
  }
  write_text_file(out_file, config::serialize(doc));
  if (as_json) {
    out << json{{"ok", true}, {"output", out_file}}.dump() << '\n';
  } else {
    out << "wrote " << out_file << '\n';
  }
  return ExitCode::ok;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string & file, const std::string & part_hint, const RunConfig & run,
  bool as_json, std::ostream & out, std::ostream & err)
{
  auto env = Environment::load(run);
  const json doc = parse_json(read_text_file(file), file);
  std::string kind_name = part_hint;
  if (kind_name.empty()) {
    if (doc.is_object() && doc.contains("vehicle") && doc.contains("scene") &&
      doc.contains("checks"))
    {
      kind_name = "scenario";
    } else if (auto k = config::detect_part_kind(doc)) {
      kind_name = config::to_string(*k);
    } else {
      throw DomainError(file + ": cannot tell which part this is; pass --part");
    }
  }
  std::vector<config::Violation> violations;
  try {
    if (kind_name == "scenario") {
      violations = assembly::validate_document(config::scenario_from_json(doc), env.schemas,
          env.catalogs);
    } else {
      const auto kind = parse_part_or_throw(kind_name);
      violations = config::validate_part(config::part_from_json(doc, kind), env.schemas,
          env.catalogs);
    }
  } catch (const config::PartError & e) {
    violations.push_back({e.path(), e.what()});
  }
  if (as_json) {
    out << json{{"ok", violations.empty()}, {"kind", kind_name},
      {"violations", violations_json(violations)}}.dump() << '\n';
  }
  if (!violations.empty()) {
    err << file << ": " << violations.size() << " violation(s)\n";
    print_violations(err, violations);
    return ExitCode::domain;
  }
  if (!as_json) {
    out << file << ": valid " << kind_name << '\n';
  }
  return ExitCode::ok;
}

// ---------------------------------------------------------------- check

int cmd_check(const std::string & scenario_file, const std::string & trace_file,
  const RunConfig & run, bool as_json, std::ostream & out, std::ostream & err)
{
  auto env = Environment::load(run);
  const json doc = parse_json(read_text_file(scenario_file), scenario_file);
  config::CheckList checks;
  if (doc.is_object() && doc.contains("checks") && doc.contains("vehicle")) {
    checks = config::scenario_from_json(doc).checks;
  } else {
    checks = std::get<config::CheckList>(config::part_from_json(doc, config::PartKind::checks));
  }
  const auto trace = telemetry::load_trace(trace_file);
  const auto summary = telemetry::evaluate_all(checks, trace, telemetry::signal_units(env.catalogs));

  if (as_json) {
    json results = json::array();
    for (const auto & r : summary.results) {
      json item{{"id", r.id}, {"passed", r.passed}, {"message", r.message}};
      if (r.window) {
        item["window"] = {{"begin", r.window->begin},
          {"end", r.window->end ? json(*r.window->end) : json(nullptr)}};
      }
      if (r.witness) {
        item["witness"] = {{"t", r.witness->t}, {"value", r.witness->value}};
      }
      results.push_back(item);
    }
    out << json{{"passed", summary.passed}, {"total", summary.total},
      {"results", results}}.dump() << '\n';
  } else {
    std::size_t width = 2;
    for (const auto & r : summary.results) {
      width = std::max(width, r.id.size());
    }
    for (const auto & r : summary.results) {
      out << std::left << std::setw(static_cast<int>(width)) << r.id << "  "
          << (r.passed ? "PASS" : "FAIL") << "  " << r.message << '\n';
    }
    out << summary.passed << '/' << summary.total << " passed\n";
  }
  if (summary.passed != summary.total) {
    for (const auto & r : summary.results) {
      if (!r.passed) {
        err << "check failed: " << r.id << '\n';
      }
    }
    return ExitCode::domain;
  }
  return ExitCode::ok;
}

// ---------------------------------------------------------------- experiment

int cmd_experiment(const std::string & spec_file, const std::string & out_dir,
  BackendOptions backend_opts, bool backend_given, std::optional<std::uint64_t> seed,
  std::optional<std::size_t> threads, const RunConfig & run, bool as_json, std::ostream & out)
{
  auto env = Environment::load(run);
  auto spec = eval::load_experiment_spec(spec_file);
  if (seed) {
    spec.seed = *seed;
  }
  if (threads) {
    spec.threads = *threads;
  }
  if (!backend_given && spec.backend) {
    backend_opts.kind = spec.backend->kind;
    backend_opts.fixtures = spec.backend->fixtures.string();
    backend_opts.script = spec.backend->script.string();
  }
  const auto prompts = llm::PromptLibrary::load(run.prompts());
  const auto tools = placement::default_registry();
  auto backend = make_backend(backend_opts, run, true);
  const generators::GeneratorContext ctx{env.schemas, env.catalogs, prompts, *backend, tools};
  const auto reports = eval::run_experiment(spec, ctx);
  eval::write_run(out_dir, spec, reports, *backend);
  if (as_json) {
    out << eval::render_report(reports, eval::ReportFormat::json);
  } else {
    out << eval::render_report(reports, eval::ReportFormat::markdown);
    out << "run written to " << out_dir << '\n';
  }
  return ExitCode::ok;
}

// ---------------------------------------------------------------- prompt

int cmd_prompt(const std::string & pipeline_name, const std::string & requirements_file,
  const std::string & style_name, const std::string & scene_file, bool key_only,
  std::optional<std::uint64_t> shuffle_seed, const RunConfig & run, bool as_json,
  std::ostream & out)
{
  auto env = Environment::load(run);
  const auto pipeline = llm::parse_pipeline(pipeline_name);
  const auto style = llm::parse_prompt_style(style_name);
  if (!pipeline || !style) {
    throw DomainError("unknown pipeline or style");
  }
  auto requirements = config::load_requirements(requirements_file);
  if (shuffle_seed) {
    requirements = generators::shuffle_requirements(requirements, *shuffle_seed);
  }
  const auto prompts = llm::PromptLibrary::load(run.prompts());
  const auto tools = placement::default_registry();
  llm::ScriptedBackend unused;
  const generators::GeneratorContext ctx{env.schemas, env.catalogs, prompts, unused, tools};
  llm::PromptParams params;
  switch (*pipeline) {
    case llm::Pipeline::vehicle:
      params = generators::vehicle_params(ctx, requirements);
      break;
    case llm::Pipeline::precondition_step1:
      params = generators::scene_step1_params(ctx, requirements);
      break;
    case llm::Pipeline::precondition_step2: {
        if (scene_file.empty()) {
          throw DomainError("precondition_step2 prompts need --scene <step-1 scene>");
        }
        const auto scene = std::get<config::SceneConfig>(
          load_part(scene_file, config::PartKind::scene));
        params = generators::scene_step2_params(ctx, requirements, scene);
        break;
      }
    case llm::Pipeline::postcondition:
      params = generators::checks_params(ctx, requirements);
      break;
    case llm::Pipeline::requirement_split:
      params = {{"requirements", config::format_requirements(requirements)}};
      break;
  }
  const std::string prompt = generators::render_prompt(ctx, *pipeline, *style, params);
  const std::string key = llm::prompt_key(prompt);
  if (as_json) {
    out << json{{"key", key}, {"prompt", prompt}}.dump() << '\n';
  } else if (key_only) {
    out << key << '\n';
  } else {
    out << prompt << "\n\n# replay key: " << key << '\n';
  }
  return ExitCode::ok;
}

// ---------------------------------------------------------------- grade

int cmd_grade(const std::string & artifact_file, const std::string & suite_file, bool as_json,
  std::ostream & out, std::ostream & err)
{
  const auto suite = eval::load_suite(suite_file);
  const json artifact = read_json_file(artifact_file);
  const auto g = eval::grade(artifact, suite, 0);
  if (as_json) {
    out << json{{"passed", g.passed}, {"total", g.total}, {"tpr", g.tpr()},
      {"failed", g.failed}}.dump() << '\n';
  } else {
    for (const auto & a : suite) {
      const auto outcome = eval::evaluate(a, artifact);
      out << (outcome.passed ? "PASS  " : "FAIL  ") << a.id << "  " << outcome.detail << '\n';
    }
    out << g.passed << '/' << g.total << " passed, TPR " << eval::format_metric(g.tpr()) << '\n';
  }
  if (!g.correct()) {
    err << g.failed.size() << " assertion(s) failed\n";
    return ExitCode::domain;
  }
  return ExitCode::ok;
}

// ---------------------------------------------------------------- place

int cmd_place(const std::string & program_file, const std::string & graph_file,
  const RunConfig & run, std::ostream & out)
{
  const auto program = placement::parse_program(read_text_file(program_file));
  const auto graph = road_graph::load_graph(
    graph_file.empty() ? run.default_graph() : std::filesystem::path(graph_file));
  const auto result = placement::interpret(program, graph);
  json agents = json::object();
  for (const auto & [id, p] : result.agents) {
    json a{{"spawn", config::to_json(p.spawn)}, {"target", config::to_json(p.target)}};
    if (p.trigger) {
      a["trigger"] = {{"watched_agent", p.trigger->watched_agent},
        {"distance_threshold", p.trigger->distance_threshold}};
    }
    agents[id] = a;
  }
  json route = json::array();
  for (const auto & w : result.route.waypoints) {
    route.push_back(config::to_json(w));
  }
  json doc{{"agents", agents}, {"route", {{"length", result.route.length()},
    {"node_ids", result.route.node_ids}, {"waypoints", route}}}};
  if (result.route_min_length) {
    doc["route_min_length"] = *result.route_min_length;
  }
  out << canonical_dump(doc);
  return ExitCode::ok;
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Requirements-to-scenario compiler and evaluation harness", "scenario_forge"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "scenario_forge 0.1.0");

  std::string data_dir = default_data_dir().string();
  bool as_json = false;
  std::optional<std::uint64_t> seed;
  app.add_option("--data-dir", data_dir, "Root holding schemas/, catalogs/, prompts/, fixtures/")
  ->capture_default_str();
  app.add_flag("--json", as_json, "Machine-readable output");
  app.add_option("--seed", seed, "Seed for requirement shuffling");

  GenerateOptions gen;
  auto * generate = app.add_subcommand("generate", "Generate one scenario part");
  generate->add_option("part", gen.part, "vehicle, pre or post")->required()
  ->check(CLI::IsMember({"vehicle", "pre", "post", "scene", "checks"}));
  generate->add_option("requirements", gen.requirements, "Requirement file")->required();
  generate->add_option("--style", gen.style, "Prompt style")
  ->check(CLI::IsMember({"simple", "icl", "cot"}));
  generate->add_option("--out", gen.out, "Output part file");
  generate->add_option("--graph", gen.graph, "Road graph for placement");
  generate->add_flag("--grouped", gen.grouped, "Split requirements into groups first");
  generate->add_flag("--shuffle", gen.shuffle, "Shuffle requirements with --seed");
  generate->add_option("--attempt", gen.attempt, "Attempt index used for replay keys")
  ->check(CLI::NonNegativeNumber);
  add_backend_options(generate, gen.backend);

  std::string vehicle_file;
  std::string scene_file;
  std::string checks_file;
  std::string merge_out;
  auto * merge = app.add_subcommand("merge", "Merge vehicle, scene and checks parts");
  merge->add_option("vehicle", vehicle_file)->required();
  merge->add_option("scene", scene_file)->required();
  merge->add_option("checks", checks_file)->required();
  merge->add_option("--out", merge_out, "Merged scenario file")->required();

  std::string validate_file;
  std::string validate_part;
  auto * validate = app.add_subcommand("validate", "Validate a part or merged scenario");
  validate->add_option("file", validate_file)->required();
  validate->add_option("--part", validate_part, "vehicle, scene, checks or scenario")
  ->check(CLI::IsMember({"vehicle", "scene", "checks", "pre", "post", "scenario"}));

  std::string check_scenario;
  std::string check_trace;
  auto * check = app.add_subcommand("check", "Evaluate post-condition checks on a trace");
  check->add_option("scenario", check_scenario, "Merged scenario or checks part")->required();
  check->add_option("trace", check_trace, "Telemetry trace")->required();

  std::string experiment_spec;
  std::string experiment_out;
  std::optional<std::size_t> experiment_threads;
  BackendOptions experiment_backend;
  auto * experiment = app.add_subcommand("experiment", "Run an experiment and write reports");
  experiment->add_option("spec", experiment_spec, "Experiment file")->required();
  experiment->add_option("--out", experiment_out, "Run directory")->required();
  experiment->add_option("--threads", experiment_threads, "Parallel attempts")
  ->check(CLI::Range(1, 256));
  add_backend_options(experiment, experiment_backend);

  std::string prompt_pipeline;
  std::string prompt_requirements;
  std::string prompt_style = "simple";
  std::string prompt_scene;
  bool prompt_key_only = false;
  auto * prompt = app.add_subcommand("prompt", "Print a rendered prompt and its replay key");
  prompt->add_option("pipeline", prompt_pipeline)->required()
  ->check(CLI::IsMember({"vehicle", "precondition_step1", "precondition_step2",
      "postcondition", "requirement_split"}));
  prompt->add_option("requirements", prompt_requirements)->required();
  prompt->add_option("--style", prompt_style)->check(CLI::IsMember({"simple", "icl", "cot"}));
  prompt->add_option("--scene", prompt_scene, "Step-1 scene for precondition_step2");
  prompt->add_flag("--key-only", prompt_key_only, "Print only the replay key");
  bool prompt_shuffle = false;
  prompt->add_flag("--shuffle", prompt_shuffle, "Shuffle requirements with --seed");

  std::string grade_artifact;
  std::string grade_suite;
  auto * grade = app.add_subcommand("grade", "Grade a generated part against an assertion suite");
  grade->add_option("artifact", grade_artifact)->required();
  grade->add_option("suite", grade_suite)->required();

  std::string place_program;
  std::string place_graph;
  auto * place = app.add_subcommand("place", "Interpret a placement program on a road graph");
  place->add_option("program", place_program)->required();
  place->add_option("--graph", place_graph);

  std::vector<std::string> owned{"scenario_forge"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (auto & a : owned) {
    argv.push_back(a.data());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::usage;
  }

  const RunConfig run{data_dir};
  try {
    if (generate->parsed()) {
      return cmd_generate(gen, run, seed.value_or(0), as_json, out, err);
    }
    if (merge->parsed()) {
      return cmd_merge(vehicle_file, scene_file, checks_file, merge_out, run, as_json, out, err);
    }
    if (validate->parsed()) {
      return cmd_validate(validate_file, validate_part, run, as_json, out, err);
    }
    if (check->parsed()) {
      return cmd_check(check_scenario, check_trace, run, as_json, out, err);
    }
    if (experiment->parsed()) {
      const bool backend_given = experiment->count("--backend") > 0;
      return cmd_experiment(experiment_spec, experiment_out, experiment_backend, backend_given,
               seed, experiment_threads, run, as_json, out);
    }
    if (prompt->parsed()) {
      return cmd_prompt(prompt_pipeline, prompt_requirements, prompt_style, prompt_scene,
               prompt_key_only,
               prompt_shuffle ? std::optional<std::uint64_t>(seed.value_or(0)) : std::nullopt,
               run, as_json, out);
    }
    if (grade->parsed()) {
      return cmd_grade(grade_artifact, grade_suite, as_json, out, err);
    }
    if (place->parsed()) {
      return cmd_place(place_program, place_graph, run, out);
    }
  } catch (const IoError & e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::io;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::domain;
  }
  return ExitCode::usage;
}

}  // namespace scenario_forge::cli
