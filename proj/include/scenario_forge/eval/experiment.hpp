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

#ifndef SCENARIO_FORGE__EVAL__EXPERIMENT_HPP_
#define SCENARIO_FORGE__EVAL__EXPERIMENT_HPP_

#include "scenario_forge/eval/metrics.hpp"
#include "scenario_forge/generators/generators.hpp"
#include "scenario_forge/llm/prompt.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scenario_forge::eval
{

enum class ExperimentPipeline { vehicle, vehicle_grouped, precondition, postcondition };
enum class RequirementOrder { ordered, shuffled };

std::string to_string(ExperimentPipeline pipeline);
std::string to_string(RequirementOrder order);

/// Backend named by an experiment file; CLI flags may override it.
struct BackendSpec
{
  std::string kind;  ///< replay, scripted or live
  std::filesystem::path fixtures;  ///< replay
  std::filesystem::path script;  ///< scripted
};

struct ExperimentSpec
{
  std::string name;
  ExperimentPipeline pipeline{ExperimentPipeline::vehicle};
  std::filesystem::path requirements;
  std::filesystem::path suite;
  std::optional<std::filesystem::path> graph;  ///< required for precondition
  std::vector<llm::PromptStyle> styles;
  std::vector<RequirementOrder> orders{RequirementOrder::ordered};
  int n{1};
  std::uint64_t seed{0};
  std::vector<int> ks{1, 5, 10, 20};
  std::size_t threads{1};
  std::optional<BackendSpec> backend;
};

/// Relative paths are resolved against `base_dir`.
ExperimentSpec experiment_from_json(const nlohmann::json & j, const std::filesystem::path & base_dir);
ExperimentSpec load_experiment_spec(const std::filesystem::path & path);

struct AttemptRecord
{
  AttemptGrade grade;
  std::vector<std::string> errors;
  /// (prompt key, attempt index) of every completion the attempt made.
  std::vector<std::pair<std::string, int>> completions;
  std::optional<std::uint64_t> shuffle_seed;
};

struct ExperimentReport
{
  std::string label;
  ExperimentPipeline pipeline{ExperimentPipeline::vehicle};
  llm::PromptStyle style{llm::PromptStyle::simple};
  RequirementOrder order{RequirementOrder::ordered};
  int n{0};
  double avg_tpr{0.0};
  std::map<int, double> pass_at;
  std::optional<double> code_gen_success_rate;
  std::map<std::string, int> failure_counts;  ///< assertion id -> failed attempts
  std::vector<AttemptRecord> attempts;
};

/// Runs n attempts per (style, order) condition. Attempt i of a shuffled condition uses
/// seed + i. Attempts may run in parallel; results are ordered by attempt index.
std::vector<ExperimentReport> run_experiment(const ExperimentSpec & spec,
  const generators::GeneratorContext & ctx);

/// Builds a report from graded attempts.
ExperimentReport summarize(std::string label, std::vector<AttemptRecord> attempts,
  const std::vector<int> & ks);

}  // namespace scenario_forge::eval

#endif  // SCENARIO_FORGE__EVAL__EXPERIMENT_HPP_
