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

#include "scenario_forge/eval/report.hpp"

#include "scenario_forge/common/io.hpp"
#include "scenario_forge/llm/replay_key.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace scenario_forge::eval
{

std::string format_metric(double value)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  std::string s = buf;
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') {
    s.pop_back();
  }
  if (s == "-0.0") {
    s = "0.0";
  }
  return s;
}

namespace
{

std::string md_cell(const std::string & text)
{
  std::string out;
  for (char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string csv_field(const std::string & text)
{
  if (text.find_first_of(",\"\r\n") == std::string::npos) {
    return text;
  }
  std::string out = "\"";
  for (char c : text) {
    out += c;
    if (c == '"') {
      out += '"';
    }
  }
  return out + "\"";
}

std::string full_precision(double value)
{
  return number_to_json(value).dump();
}

std::set<int> all_ks(const std::vector<ExperimentReport> & reports)
{
  std::set<int> ks;
  for (const auto & r : reports) {
    for (const auto & [k, v] : r.pass_at) {
      (void)v;
      ks.insert(k);
    }
  }
  return ks;
}

bool any_code_gen(const std::vector<ExperimentReport> & reports)
{
  return std::any_of(reports.begin(), reports.end(),
           [](const ExperimentReport & r) {return r.code_gen_success_rate.has_value();});
}

std::string render_markdown(const std::vector<ExperimentReport> & reports)
{
  std::ostringstream out;
  out << "| Metric |";
  for (const auto & r : reports) {
    out << ' ' << md_cell(r.label) << " |";
  }
  out << "\n|---|";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out << "---|";
  }
  out << '\n';
  auto row = [&](const std::string & name, auto cell) {
      out << "| " << name << " |";
      for (const auto & r : reports) {
        out << ' ' << cell(r) << " |";
      }
      out << '\n';
    };
  if (reports.empty()) {
    return out.str();
  }
  row("Avg TPR", [](const ExperimentReport & r) {return format_metric(r.avg_tpr);});
  for (int k : all_ks(reports)) {
    row("Pass@" + std::to_string(k), [k](const ExperimentReport & r) {
        const auto it = r.pass_at.find(k);
        return it == r.pass_at.end() ? std::string("-") : format_metric(it->second);
      });
  }
  if (any_code_gen(reports)) {
    row("Code gen. success rate", [](const ExperimentReport & r) {
        return r.code_gen_success_rate ? format_metric(*r.code_gen_success_rate) :
        std::string("-");
      });
  }
  return out.str();
}

std::string render_csv(const std::vector<ExperimentReport> & reports)
{
  const auto ks = all_ks(reports);
  const bool code_gen = any_code_gen(reports);
  std::vector<std::string> header{"condition", "pipeline", "style", "order", "n", "avg_tpr"};
  for (int k : ks) {
    header.push_back("pass@" + std::to_string(k));
  }
  if (code_gen) {
    header.push_back("code_gen_success_rate");
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string> & fields) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        out << (i > 0 ? "," : "") << csv_field(fields[i]);
      }
      out << "\r\n";
    };
  emit(header);
  for (const auto & r : reports) {
    std::vector<std::string> fields{r.label, to_string(r.pipeline), llm::to_string(r.style),
      to_string(r.order), std::to_string(r.n), full_precision(r.avg_tpr)};
    for (int k : ks) {
      const auto it = r.pass_at.find(k);
      fields.push_back(it == r.pass_at.end() ? "" : full_precision(it->second));
    }
    if (code_gen) {
      fields.push_back(r.code_gen_success_rate ? full_precision(*r.code_gen_success_rate) : "");
    }
    emit(fields);
  }
  return out.str();
}

}  // namespace

nlohmann::json to_json(const ExperimentReport & r)
{
  nlohmann::json pass_at = nlohmann::json::object();
  for (const auto & [k, v] : r.pass_at) {
    pass_at[std::to_string(k)] = v;
  }
  nlohmann::json attempts = nlohmann::json::array();
  for (const auto & a : r.attempts) {
    nlohmann::json item{
      {"index", a.grade.attempt_index},
      {"passed", a.grade.passed},
      {"total", a.grade.total},
      {"tpr", a.grade.tpr()},
      {"correct", a.grade.correct()},
      {"failed", a.grade.failed},
      {"errors", a.errors}};
    if (a.grade.code_gen_ok) {
      item["code_gen_ok"] = *a.grade.code_gen_ok;
    }
    if (a.shuffle_seed) {
      item["shuffle_seed"] = *a.shuffle_seed;
    }
    attempts.push_back(item);
  }
  nlohmann::json j{
    {"label", r.label},
    {"pipeline", to_string(r.pipeline)},
    {"style", llm::to_string(r.style)},
    {"order", to_string(r.order)},
    {"n", r.n},
    {"avg_tpr", r.avg_tpr},
    {"pass_at", pass_at},
    {"failure_counts", r.failure_counts},
    {"attempts", attempts}};
  j["code_gen_success_rate"] = r.code_gen_success_rate ?
    nlohmann::json(*r.code_gen_success_rate) : nlohmann::json(nullptr);
  return j;
}

std::string render_report(const std::vector<ExperimentReport> & reports, ReportFormat format)
{
  switch (format) {
    case ReportFormat::markdown: return render_markdown(reports);
    case ReportFormat::csv: return render_csv(reports);
    case ReportFormat::json: {
        nlohmann::json list = nlohmann::json::array();
        for (const auto & r : reports) {
          nlohmann::json j = to_json(r);
          j.erase("attempts");
          list.push_back(j);
        }
        return canonical_dump(list);
      }
  }
  return {};
}

void write_run(const std::filesystem::path & dir, const ExperimentSpec & spec,
  const std::vector<ExperimentReport> & reports, const llm::CompletionBackend & backend)
{
  write_text_file(dir / "report.md", render_report(reports, ReportFormat::markdown));
  write_text_file(dir / "report.csv", render_report(reports, ReportFormat::csv));
  write_text_file(dir / "report.json", render_report(reports, ReportFormat::json));

  nlohmann::json attempts = nlohmann::json::object();
  for (const auto & r : reports) {
    attempts[r.label] = to_json(r)["attempts"];
  }
  write_text_file(dir / "attempts.json", canonical_dump(attempts));

  nlohmann::json fixtures = nlohmann::json::object();
  if (const auto * replay = dynamic_cast<const llm::ReplayBackend *>(&backend)) {
    for (const auto & r : reports) {
      for (const auto & a : r.attempts) {
        for (const auto & [key, index] : a.completions) {
          if (const auto path = replay->locate_key(key, index)) {
            fixtures[path->filename().string()] = llm::sha256_hex(read_text_file(*path));
          }
        }
      }
    }
  }
  nlohmann::json conditions = nlohmann::json::array();
  for (const auto & r : reports) {
    conditions.push_back({{"label", r.label}, {"style", llm::to_string(r.style)},
        {"order", to_string(r.order)}, {"n", r.n}});
  }
  nlohmann::json ks = spec.ks;
  const nlohmann::json manifest{
    {"experiment", spec.name},
    {"pipeline", to_string(spec.pipeline)},
    {"seed", spec.seed},
    {"k", ks},
    {"conditions", conditions},
    {"backend", {{"kind", llm::to_string(backend.kind())}, {"id", backend.id()},
      {"settings", backend.settings()}}},
    {"inputs", {
        {"requirements", {{"file", spec.requirements.filename().string()},
          {"sha256", llm::sha256_hex(read_text_file(spec.requirements))}}},
        {"suite", {{"file", spec.suite.filename().string()},
          {"sha256", llm::sha256_hex(read_text_file(spec.suite))}}}}},
    {"fixture_hashes", fixtures}};
  write_text_file(dir / "manifest.json", canonical_dump(manifest));
}

}  // namespace scenario_forge::eval
