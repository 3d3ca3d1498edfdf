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

#include "scenario_forge/common/io.hpp"
#include "scenario_forge/eval/assertion.hpp"
#include "scenario_forge/eval/experiment.hpp"
#include "scenario_forge/eval/metrics.hpp"
#include "scenario_forge/eval/report.hpp"

#include <test_data.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace sf = scenario_forge;
namespace ev = scenario_forge::eval;
using nlohmann::json;

namespace
{

// Fraction of k-subsets of n attempts (the first c correct) that contain a correct attempt,
// counted by enumerating every subset.
double brute_force_pass_at_k(int n, int c, int k)
{
  long hits = 0;
  long total = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) {
      continue;
    }
    ++total;
    if ((mask & ((1u << c) - 1u)) != 0) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

json golden(const std::string & name)
{
  return sf::read_json_file(sf::test::fixture("golden/" + name));
}

ev::Suite suite(const std::string & name)
{
  return ev::load_suite(sf::test::fixture("suites/" + name + ".json"));
}

ev::AttemptGrade grade_of(std::size_t passed, std::size_t total, int index,
  std::optional<bool> code_gen = std::nullopt)
{
  ev::AttemptGrade g;
  g.passed = passed;
  g.total = total;
  g.attempt_index = index;
  g.code_gen_ok = code_gen;
  for (std::size_t i = passed; i < total; ++i) {
    g.failed.push_back("a" + std::to_string(i));
  }
  return g;
}

ev::Assertion assertion(const std::string & text)
{
  return ev::assertion_from_json(json::parse(text));
}

}  // namespace

TEST(PassAtK, FiftyAttemptsFiveCorrect)
{
  // n = 50 attempts with 5 correct.
  EXPECT_NEAR(ev::pass_at_k(50, 5, 1), 0.1, 1e-12);
  EXPECT_NEAR(ev::pass_at_k(50, 5, 5), 0.42336130566935376, 1e-12);
  EXPECT_NEAR(ev::pass_at_k(50, 5, 10), 0.6894372179954313, 1e-12);
  EXPECT_NEAR(ev::pass_at_k(50, 5, 20), 0.9327408484207744, 1e-12);
  EXPECT_EQ(ev::format_metric(ev::pass_at_k(50, 5, 5)), "0.42");
  EXPECT_EQ(ev::format_metric(ev::pass_at_k(50, 5, 10)), "0.69");
  EXPECT_EQ(ev::format_metric(ev::pass_at_k(50, 5, 20)), "0.93");
  EXPECT_NEAR(ev::pass_at_k(50, 40, 1), 0.8, 1e-12);
}

TEST(PassAtK, EdgeCases)
{
  EXPECT_EQ(ev::pass_at_k(10, 0, 5), 0.0);
  EXPECT_EQ(ev::pass_at_k(10, 10, 1), 1.0);
  EXPECT_EQ(ev::pass_at_k(10, 2, 9), 1.0);
  EXPECT_EQ(ev::pass_at_k(1, 1, 1), 1.0);
  EXPECT_THROW(ev::pass_at_k(10, 2, 11), sf::DomainError);
  EXPECT_THROW(ev::pass_at_k(10, 2, 0), sf::DomainError);
  EXPECT_THROW(ev::pass_at_k(0, 0, 1), sf::DomainError);
  EXPECT_THROW(ev::pass_at_k(10, 11, 1), sf::DomainError);
  EXPECT_THROW(ev::pass_at_k(10, -1, 1), sf::DomainError);
}

TEST(PassAtK, MatchesSubsetEnumeration)
{
  for (int n = 1; n <= 12; ++n) {
    for (int c = 0; c <= n; ++c) {
      for (int k = 1; k <= n; ++k) {
        ASSERT_NEAR(ev::pass_at_k(n, c, k), brute_force_pass_at_k(n, c, k), 1e-12)
          << n << " " << c << " " << k;
      }
    }
  }
}

TEST(PassAtK, MonotoneInKAndC)
{
  for (int k = 1; k < 50; ++k) {
    EXPECT_LE(ev::pass_at_k(50, 5, k), ev::pass_at_k(50, 5, k + 1));
  }
  for (int c = 0; c < 50; ++c) {
    EXPECT_LE(ev::pass_at_k(50, c, 5), ev::pass_at_k(50, c + 1, 5));
  }
}

TEST(AvgTpr, MeanAndOrderIndependence)
{
  std::vector<ev::AttemptGrade> grades{grade_of(38, 38, 0), grade_of(29, 38, 1),
    grade_of(0, 38, 2), grade_of(37, 38, 3)};
  EXPECT_NEAR(ev::avg_tpr(grades), (1.0 + 29.0 / 38 + 0.0 + 37.0 / 38) / 4, 1e-15);
  const double reference = ev::avg_tpr(grades);
  std::mt19937 rng(1);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(grades.begin(), grades.end(), rng);
    EXPECT_EQ(ev::avg_tpr(grades), reference);
  }
  EXPECT_THROW(ev::avg_tpr({}), sf::DomainError);
}

TEST(CodeGenRate, Share)
{
  EXPECT_DOUBLE_EQ(ev::code_gen_success_rate({grade_of(1, 2, 0, true), grade_of(1, 2, 1, false),
      grade_of(1, 2, 2, true), grade_of(1, 2, 3, true), grade_of(1, 2, 4, false)}), 0.6);
  EXPECT_THROW(ev::code_gen_success_rate({grade_of(1, 2, 0)}), sf::DomainError);
  EXPECT_THROW(ev::code_gen_success_rate({}), sf::DomainError);
}

TEST(Grade, GoldenArtifactsScoreFull)
{
  const std::vector<std::pair<std::string, std::string>> pairs{
    {"vehicle_base", "vehicle_base.json"}, {"vehicle_extended", "vehicle_extended.json"},
    {"vehicle_tesla", "vehicle_tesla.json"}, {"pre_car_to_car", "scene_car_to_car.json"},
    {"pre_car_to_pedestrian", "scene_car_to_pedestrian.json"}, {"post_aeb", "checks_aeb.json"}};
  for (const auto & [suite_name, file] : pairs) {
    const auto g = ev::grade(golden(file), suite(suite_name));
    EXPECT_EQ(g.passed, g.total) << suite_name << ": first failure "
                                 << (g.failed.empty() ? "" : g.failed.front());
    EXPECT_TRUE(g.correct());
    EXPECT_DOUBLE_EQ(g.tpr(), 1.0);
  }
}

TEST(Grade, DeletingRearCameraFailsExactlyRearAssertions)
{
  auto doc = golden("vehicle_base.json");
  auto & sensors = doc["sensors"];
  sensors.erase(std::remove_if(sensors.begin(), sensors.end(), [](const json & s) {
      return s["id"].get<std::string>().find("rear") != std::string::npos;
    }), sensors.end());
  const auto s = suite("vehicle_base");
  const auto g = ev::grade(doc, s);
  std::vector<std::string> expected;
  for (const auto & a : s) {
    if (a.target_text.find("rear") != std::string::npos ||
      a.target_text.rfind("count(sensors", 0) == 0)
    {
      expected.push_back(a.id);
    }
  }
  EXPECT_EQ(g.failed, expected);
  EXPECT_FALSE(g.correct());
}

TEST(Grade, MissingArtifactFailsEverything)
{
  const auto s = suite("post_aeb");
  const auto g = ev::grade(std::nullopt, s, 7);
  EXPECT_EQ(g.passed, 0u);
  EXPECT_EQ(g.failed.size(), s.size());
  EXPECT_EQ(g.attempt_index, 7);
  EXPECT_THROW(ev::grade(json::object(), {}), sf::DomainError);
}

TEST(Selector, Parsing)
{
  const auto s = ev::parse_selector("sensors[id~rear,blueprint=sensor.camera.rgb][0].transform.yaw");
  ASSERT_EQ(s.steps.size(), 3u);
  EXPECT_EQ(s.steps[0].field, "sensors");
  ASSERT_EQ(s.steps[0].filters.size(), 2u);
  EXPECT_EQ(s.steps[0].filters[0].conditions.size(), 2u);
  EXPECT_TRUE(s.steps[0].filters[0].conditions[0].substring);
  EXPECT_EQ(s.steps[0].filters[0].conditions[1].value, "sensor.camera.rgb");
  EXPECT_EQ(s.steps[0].filters[1].index, 0);
  EXPECT_THROW(ev::parse_selector("sensors[id~rear"), sf::FormatError);
  EXPECT_THROW(ev::parse_selector(""), sf::FormatError);
  EXPECT_THROW(ev::parse_selector("a..b"), sf::FormatError);
}

TEST(Selector, Selection)
{
  const auto doc = golden("vehicle_base.json");
  EXPECT_EQ(ev::select(doc, ev::parse_selector("sensors[id~rear].transform.yaw")), json(180));
  EXPECT_EQ(ev::select(doc, ev::parse_selector("sensors[-1].id")), json("rear_camera"));
  EXPECT_EQ(ev::select(doc, ev::parse_selector("sensors[0].transform.x")), json(2.35));
  EXPECT_FALSE(ev::select(doc, ev::parse_selector("sensors[id~radar]")).has_value());
  EXPECT_FALSE(ev::select(doc, ev::parse_selector("sensors[9]")).has_value());
  EXPECT_FALSE(ev::select(doc, ev::parse_selector("id.deeper")).has_value());
}

TEST(Assertion, Operators)
{
  const auto doc = golden("vehicle_base.json");
  EXPECT_TRUE(ev::evaluate(assertion(
      R"j({"id":"a","target":"sensors[0].transform.x","op":"==","expected":2.3,"tolerance":0.06})j"),
    doc).passed);
  EXPECT_FALSE(ev::evaluate(assertion(
      R"j({"id":"a","target":"sensors[0].transform.x","op":"==","expected":2.3})j"), doc).passed);
  EXPECT_TRUE(ev::evaluate(assertion(
      R"j({"id":"a","target":"sensors[0].transform.x","op":">","expected":2.3})j"), doc).passed);
  EXPECT_TRUE(ev::evaluate(assertion(
      R"j({"id":"a","target":"id","op":"==","expected":"ego"})j"), doc).passed);
  EXPECT_TRUE(ev::evaluate(assertion(
      R"j({"id":"a","target":"id","op":"!=","expected":"hero"})j"), doc).passed);
  EXPECT_FALSE(ev::evaluate(assertion(
      R"j({"id":"a","target":"id","op":">=","expected":3})j"), doc).passed);
  EXPECT_TRUE(ev::evaluate(assertion(
      R"j({"id":"a","target":"sensors[id~lidar]","op":"exists"})j"), doc).passed);
  EXPECT_FALSE(ev::evaluate(assertion(
      R"j({"id":"a","target":"sensors[id~radar]","op":"exists"})j"), doc).passed);
}

TEST(Assertion, Functions)
{
  const auto vehicle = golden("vehicle_base.json");
  EXPECT_TRUE(ev::evaluate(assertion(
      R"j({"id":"a","target":"count(sensors)","op":"==","expected":4})j"), vehicle).passed);
  EXPECT_TRUE(ev::evaluate(assertion(
      R"j({"id":"a","target":"count(sensors[blueprint~camera,id~range])","op":"==","expected":2})j"),
    vehicle).passed);
  EXPECT_TRUE(ev::evaluate(assertion(
      R"j({"id":"a","target":"count(sensors[blueprint~radar])","op":"==","expected":0})j"),
    vehicle).passed);
  EXPECT_FALSE(ev::evaluate(assertion(
      R"j({"id":"a","target":"count(sensors[0])","op":"==","expected":4})j"), vehicle).passed);
  const auto rear = vehicle["sensors"][3]["attributes"];
  const double pixels = rear["image_size_x"].get<double>() * rear["image_size_y"].get<double>();
  EXPECT_TRUE(ev::evaluate(ev::assertion_from_json({{"id", "p"},
      {"target", "pixels(sensors[id~rear])"}, {"op", "=="}, {"expected", pixels}}),
    vehicle).passed);

  const auto scene = golden("scene_car_to_car.json");
  EXPECT_TRUE(ev::evaluate(assertion(
      R"j({"id":"g","target":"gap(subject, lead)","op":"==","expected":33.333})j"), scene).passed);
  EXPECT_FALSE(ev::evaluate(assertion(
      R"j({"id":"g","target":"gap(subject, lead)","op":"==","expected":33.5})j"), scene).passed);
  const auto ped = golden("scene_car_to_pedestrian.json");
  EXPECT_TRUE(ev::evaluate(assertion(
      R"j({"id":"t","target":"trigger_distance(pedestrian)","op":"==","expected":14})j"), ped).passed);
  EXPECT_FALSE(ev::evaluate(assertion(
      R"j({"id":"g","target":"gap(subject, ghost)","op":"==","expected":1})j"), scene).passed);
}

TEST(Assertion, FormatErrors)
{
  EXPECT_THROW(assertion(R"j({"id":"a","target":"id","op":"~","expected":1})j"), sf::FormatError);
  EXPECT_THROW(assertion(R"j({"id":"a","target":"id","op":"=="})j"), sf::FormatError);
  EXPECT_THROW(assertion(R"j({"id":"a","target":"id","op":"exists","expected":1})j"),
    sf::FormatError);
  EXPECT_THROW(assertion(R"j({"target":"id","op":"==","expected":1})j"), sf::FormatError);
  EXPECT_THROW(assertion(R"j({"id":"a","target":"id","op":"==","expected":1,"note":"x"})j"),
    sf::FormatError);
  EXPECT_THROW(assertion(R"j({"id":"a","target":"frobnicate(x)","op":"==","expected":1})j"),
    sf::FormatError);
}

TEST(Assertion, JsonRoundTrip)
{
  for (const auto & a : suite("vehicle_tesla")) {
    const auto again = ev::assertion_from_json(ev::to_json(a));
    EXPECT_EQ(ev::to_json(again), ev::to_json(a));
  }
}

TEST(Suites, RequirementCoverage)
{
  // Every requirement of the base vehicle is covered by at least one assertion. The body
  // dimensions (3) follow from the blueprint and have no field of their own.
  std::set<int> covered;
  for (const auto & a : suite("vehicle_base")) {
    if (a.requirement) {
      covered.insert(*a.requirement);
    }
  }
  for (int id = 1; id <= 27; ++id) {
    EXPECT_EQ(covered.count(id), id == 3 ? 0u : 1u) << id;
  }
}

TEST(Summarize, Metrics)
{
  std::vector<ev::AttemptRecord> records;
  for (int i = 0; i < 10; ++i) {
    ev::AttemptRecord r;
    r.grade = grade_of(i < 3 ? 4 : 2, 4, i, i % 2 == 0);
    records.push_back(r);
  }
  const auto report = ev::summarize("icl", records, {1, 5, 10, 20});
  EXPECT_EQ(report.n, 10);
  EXPECT_NEAR(report.avg_tpr, (3 * 1.0 + 7 * 0.5) / 10, 1e-15);
  EXPECT_EQ(report.pass_at.size(), 3u);
  EXPECT_NEAR(report.pass_at.at(1), 0.3, 1e-12);
  EXPECT_NEAR(report.pass_at.at(5), brute_force_pass_at_k(10, 3, 5), 1e-12);
  EXPECT_EQ(report.pass_at.at(10), 1.0);
  ASSERT_TRUE(report.code_gen_success_rate.has_value());
  EXPECT_DOUBLE_EQ(*report.code_gen_success_rate, 0.5);
  EXPECT_EQ(report.failure_counts.at("a2"), 7);
  EXPECT_EQ(report.failure_counts.count("a0"), 0u);
}

TEST(Report, Formats)
{
  std::vector<ev::AttemptRecord> records;
  for (int i = 0; i < 4; ++i) {
    ev::AttemptRecord r;
    r.grade = grade_of(i == 0 ? 2 : 1, 2, i);
    records.push_back(r);
  }
  auto a = ev::summarize("simple", records, {1, 2});
  auto b = ev::summarize("co|t", records, {1});
  const auto md = ev::render_report({a, b}, ev::ReportFormat::markdown);
  EXPECT_EQ(md,
    "| Metric | simple | co\\|t |\n"
    "|---|---|---|\n"
    "| Avg TPR | 0.62 | 0.62 |\n"
    "| Pass@1 | 0.25 | 0.25 |\n"
    "| Pass@2 | 0.5 | - |\n");
  const auto csv = ev::render_report({a}, ev::ReportFormat::csv);
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")), "condition,pipeline,style,order,n,avg_tpr,pass@1,pass@2");
  EXPECT_NE(csv.find("simple,vehicle,simple,ordered,4,0.625,0.25,0.5\r\n"), std::string::npos);
  const auto j = json::parse(ev::render_report({a, b}, ev::ReportFormat::json));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["pass_at"]["2"], 0.5);
  EXPECT_EQ(j[1]["label"], "co|t");
}

TEST(Report, MetricFormatting)
{
  EXPECT_EQ(ev::format_metric(1.0), "1.0");
  EXPECT_EQ(ev::format_metric(0.0), "0.0");
  EXPECT_EQ(ev::format_metric(0.7), "0.7");
  EXPECT_EQ(ev::format_metric(0.425), "0.42");
  EXPECT_EQ(ev::format_metric(0.999), "1.0");
  EXPECT_EQ(ev::format_metric(0.1), "0.1");
}
