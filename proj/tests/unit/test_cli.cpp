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
#include "scenario_forge/common/io.hpp"

#include <test_data.hpp>

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

namespace sf = scenario_forge;
using nlohmann::json;

namespace
{

struct Result
{
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args)
{
  args.insert(args.begin(), {"--data-dir", sf::test::data_dir().string()});
  std::ostringstream out;
  std::ostringstream err;
  const int code = sf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string & relative)
{
  return sf::test::fixture(relative).string();
}

/// Writes a scripted-backend file answering with the given response fixtures in order.
std::string script(const sf::test::TempDir & dir, const std::string & name,
  const std::vector<std::string> & responses)
{
  json list = json::array();
  for (const auto & r : responses) {
    list.push_back(sf::read_text_file(sf::test::fixture("responses/" + r)));
  }
  const auto path = dir / name;
  sf::write_text_file(path, list.dump());
  return path.string();
}

}  // namespace

TEST(Cli, UsageErrors)
{
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"generate", "vehicle"}).code, 1);
  EXPECT_EQ(run({"generate", "wheels", fixture("requirements/vehicle_base.txt")}).code, 1);
  EXPECT_EQ(run({"merge", "a.json", "b.json"}).code, 1);
  EXPECT_EQ(run({"experiment", fixture("experiments/vehicle_order.json"), "--out", "x",
      "--threads", "0"}).code, 1);
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("generate"), std::string::npos);
}

TEST(Cli, MissingFilesAreIoErrors)
{
  sf::test::TempDir dir;
  const auto missing = (dir / "nope.json").string();
  EXPECT_EQ(run({"validate", missing}).code, 3);
  EXPECT_EQ(run({"grade", missing, fixture("suites/vehicle_base.json")}).code, 3);
  EXPECT_EQ(run({"check", fixture("golden/checks_aeb.json"), missing}).code, 3);
  EXPECT_EQ(run({"place", missing}).code, 3);
  const auto r = run({"generate", "vehicle", missing});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("nope.json"), std::string::npos);
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(sf::cli::run({"--data-dir", missing, "validate",
      fixture("golden/vehicle_base.json")}, out, err), 3);
}

TEST(Cli, ValidateGoldens)
{
  for (const char * file : {"vehicle_base.json", "vehicle_tesla.json", "scene_car_to_car.json",
      "checks_aeb.json", "scenario_car_to_car.json"})
  {
    const auto r = run({"validate", fixture(std::string("golden/") + file)});
    EXPECT_EQ(r.code, 0) << file << r.err;
  }
  sf::test::TempDir dir;
  auto doc = sf::read_json_file(sf::test::fixture("golden/vehicle_base.json"));
  doc["sensors"][1]["attributes"]["sensor_tick"] = -0.1;
  sf::write_text_file(dir / "bad.json", doc.dump());
  const auto r = run({"--json", "validate", (dir / "bad.json").string()});
  EXPECT_EQ(r.code, 2);
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["ok"].get<bool>());
  EXPECT_EQ(j["violations"][0]["path"], "/sensors/1/attributes/sensor_tick");
  sf::write_text_file(dir / "broken.json", "{\"id\": ");
  EXPECT_EQ(run({"validate", (dir / "broken.json").string()}).code, 2);
}

TEST(Cli, GenerateMergeCheck)
{
  sf::test::TempDir dir;
  const auto vehicle = (dir / "vehicle.json").string();
  const auto scene = (dir / "scene.json").string();
  const auto checks = (dir / "checks.json").string();
  const auto merged = (dir / "scenario.json").string();

  auto r = run({"generate", "vehicle", fixture("requirements/vehicle_base.txt"), "--backend",
      "scripted", "--script", script(dir, "v.json", {"vehicle_base.txt"}), "--out", vehicle});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(sf::read_json_file(vehicle),
    sf::read_json_file(sf::test::fixture("golden/vehicle_base.json")));
  EXPECT_TRUE(std::filesystem::exists(dir / "vehicle.json.attempt.json"));

  r = run({"--json", "generate", "pre", fixture("requirements/pre_car_to_car.txt"), "--backend",
      "scripted", "--script",
      script(dir, "s.json", {"pre_car_to_car_step1.json", "place_car_to_car.txt"}),
      "--out", scene});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["code_gen_ok"].get<bool>());

  r = run({"generate", "post", fixture("requirements/post_aeb.txt"), "--backend", "scripted",
      "--script", script(dir, "c.json", {"post_aeb.txt"}), "--out", checks});
  ASSERT_EQ(r.code, 0) << r.err;

  r = run({"merge", vehicle, scene, checks, "--out", merged});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = sf::read_json_file(merged);
  int collision = 0;
  for (const auto & s : doc["vehicle"]["sensors"]) {
    collision += s["blueprint"] == "sensor.other.collision" ? 1 : 0;
  }
  EXPECT_EQ(collision, 1);
  EXPECT_EQ(run({"validate", merged}).code, 0);
  EXPECT_EQ(run({"grade", merged, fixture("suites/pre_car_to_car.json")}).code, 2);

  r = run({"check", merged, fixture("traces/trace_nominal.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("4/4 passed"), std::string::npos);
  r = run({"--json", "check", merged, fixture("traces/trace_brake_4.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.out)["passed"], 3);
  EXPECT_NE(r.err.find("ID_BRAKING_FORCE"), std::string::npos);
}

TEST(Cli, GenerationFailureIsDomainError)
{
  sf::test::TempDir dir;
  const auto r = run({"generate", "vehicle", fixture("requirements/vehicle_base.txt"),
      "--backend", "scripted", "--script", script(dir, "v.json", {"vehicle_base_prose.txt"}),
      "--out", (dir / "v.json.out").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("generation failed"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(dir / "v.json.out"));
  // The attempt record is kept for failed generations.
  const auto record = sf::read_json_file(dir / "v.json.out.attempt.json");
  EXPECT_FALSE(record["ok"].get<bool>());

  EXPECT_EQ(run({"generate", "vehicle", fixture("requirements/vehicle_base.txt"), "--backend",
      "scripted"}).code, 2);
}

TEST(Cli, ReplayGenerationUsesDefaultFixtures)
{
  sf::test::TempDir dir;
  const auto r = run({"generate", "vehicle", fixture("requirements/vehicle_extended.txt"),
      "--style", "icl", "--out", (dir / "v.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(sf::read_json_file(dir / "v.json"),
    sf::read_json_file(sf::test::fixture("golden/vehicle_extended.json")));
  const auto grouped = run({"generate", "vehicle", fixture("requirements/vehicle_base.txt"),
      "--grouped", "--out", (dir / "g.json").string()});
  ASSERT_EQ(grouped.code, 0) << grouped.err;
  EXPECT_EQ(sf::read_json_file(dir / "g.json"),
    sf::read_json_file(sf::test::fixture("golden/vehicle_base.json")));
}

TEST(Cli, PromptKey)
{
  const auto key = run({"prompt", "vehicle", fixture("requirements/vehicle_base.txt"),
      "--key-only"});
  ASSERT_EQ(key.code, 0);
  ASSERT_EQ(key.out.size(), 65u);
  EXPECT_EQ(key.out.back(), '\n');
  EXPECT_TRUE(std::filesystem::exists(
      sf::test::fixture("replay/" + key.out.substr(0, 64) + ".txt")));
  const auto full = run({"prompt", "vehicle", fixture("requirements/vehicle_base.txt")});
  EXPECT_NE(full.out.find("# replay key: " + key.out.substr(0, 64)), std::string::npos);
  const auto shuffled = run({"--seed", "3", "prompt", "vehicle",
      fixture("requirements/vehicle_base.txt"), "--key-only", "--shuffle"});
  EXPECT_NE(shuffled.out, key.out);
  EXPECT_EQ(run({"prompt", "precondition_step2", fixture("requirements/pre_car_to_car.txt")}).code,
    2);
}

TEST(Cli, GradeAndPlace)
{
  auto r = run({"grade", fixture("golden/vehicle_tesla.json"), fixture("suites/vehicle_tesla.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("TPR 1.0"), std::string::npos);
  r = run({"--json", "grade", fixture("golden/vehicle_base.json"),
      fixture("suites/vehicle_tesla.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_LT(json::parse(r.out)["tpr"].get<double>(), 1.0);

  r = run({"place", fixture("programs/car_to_car.place")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto placed = json::parse(r.out);
  const double gap = placed["agents"]["lead"]["spawn"]["x"].get<double>() -
    placed["agents"]["subject"]["spawn"]["x"].get<double>();
  EXPECT_NEAR(gap, 33.333, 0.05);

  sf::test::TempDir dir;
  sf::write_text_file(dir / "bad.place", "for x in y:\n  pass\n");
  r = run({"place", (dir / "bad.place").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, ExperimentWritesRun)
{
  sf::test::TempDir dir;
  const auto r = run({"experiment", fixture("experiments/post_styles.json"), "--out",
      (dir / "run").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("| Avg TPR |"), std::string::npos);
  for (const char * f : {"report.md", "report.csv", "report.json", "attempts.json",
      "manifest.json"})
  {
    EXPECT_TRUE(std::filesystem::exists(dir / "run" / f)) << f;
  }
  EXPECT_EQ(run({"experiment", fixture("experiments/post_styles.json"), "--out",
      (dir / "run2").string(), "--backend", "scripted"}).code, 2);
}
