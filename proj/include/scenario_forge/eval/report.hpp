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

#ifndef SCENARIO_FORGE__EVAL__REPORT_HPP_
#define SCENARIO_FORGE__EVAL__REPORT_HPP_

#include "scenario_forge/eval/experiment.hpp"
#include "scenario_forge/llm/backend.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace scenario_forge::eval
{

enum class ReportFormat { markdown, csv, json };

/// Two decimals, trailing zeros dropped but one kept: 1.0, 0.42, 0.7.
std::string format_metric(double value);

/// Markdown: one column per condition, one row per metric. CSV: one row per condition.
std::string render_report(const std::vector<ExperimentReport> & reports, ReportFormat format);

nlohmann::json to_json(const ExperimentReport & report);

/// Writes report.md, report.csv, report.json, attempts.json and manifest.json. Nothing in
/// them depends on wall-clock time.
void write_run(const std::filesystem::path & dir, const ExperimentSpec & spec,
  const std::vector<ExperimentReport> & reports, const llm::CompletionBackend & backend);

}  // namespace scenario_forge::eval

#endif  // SCENARIO_FORGE__EVAL__REPORT_HPP_
