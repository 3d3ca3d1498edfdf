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
#include "scenario_forge/config/catalog.hpp"
#include "scenario_forge/config/requirements.hpp"
#include "scenario_forge/config/schema.hpp"
#include "scenario_forge/config/serialization.hpp"
#include "scenario_forge/generators/generators.hpp"
#include "scenario_forge/llm/replay_key.hpp"

#include <test_data.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sf = scenario_forge;
namespace cfg = scenario_forge::config;
namespace gen = scenario_forge::generators;
namespace llm = scenario_forge::llm;
namespace rg = scenario_forge::road_graph;

namespace
{

struct Env
{
  cfg::SchemaSet schemas = cfg::SchemaSet::load(sf::test::data_dir() / "schemas");
  cfg::Catalogs catalogs = cfg::Catalogs::load(sf::test::data_dir() / "catalogs");
  llm::PromptLibrary prompts = llm::PromptLibrary::load(sf::test::data_dir() / "prompts");
  sf::placement::ToolRegistry tools = sf::placement::default_registry();
};

const Env & env()
{
  static const Env e;
  return e;
}

gen::GeneratorContext context(llm::CompletionBackend & backend)
{
  return {env().schemas, env().catalogs, env().prompts, backend, env().tools};
}

std::string response(const std::string & name)
{
  return sf::read_text_file(sf::test::fixture("responses/" + name));
}

std::vector<cfg::Requirement> requirements(const std::string & name)
{
  return cfg::load_requirements(sf::test::fixture("requirements/" + name + ".txt"));
}

const rg::RoadGraph & straight_graph()
{
  static const auto g = rg::load_graph(sf::test::fixture("graphs/straight_200m.json"));
  return g;
}

std::vector<int> ids(const std::vector<cfg::Requirement> & reqs)
{
  std::vector<int> out;
  for (const auto & r : reqs) {
    out.push_back(r.id);
  }
  return out;
}

}  // namespace

TEST(VehicleGenerator, ReplayedBaseConfig)
{
  llm::ReplayBackend backend(sf::test::fixture("replay"));
  const auto out = gen::generate_vehicle(context(backend), requirements("vehicle_base"),
      llm::PromptStyle::icl);
  ASSERT_TRUE(out.attempt.ok()) << out.attempt.errors.front();
  ASSERT_TRUE(out.config.has_value());
  ASSERT_EQ(out.config->sensors.size(), 4u);
  const auto rear = std::find_if(out.config->sensors.begin(), out.config->sensors.end(),
      [](const cfg::SensorSpec & s) {return s.id.find("rear") != std::string::npos;});
  ASSERT_NE(rear, out.config->sensors.end());
  EXPECT_DOUBLE_EQ(rear->transform.yaw, 180.0);
  EXPECT_EQ(out.attempt.backend_id, "replay");
  EXPECT_EQ(out.attempt.pipeline, llm::Pipeline::vehicle);
}

TEST(VehicleGenerator, ExtendedConfigHasSixSensors)
{
  llm::ScriptedBackend backend({response("vehicle_extended.txt")});
  const auto out = gen::generate_vehicle(context(backend), requirements("vehicle_extended"),
      llm::PromptStyle::simple);
  ASSERT_TRUE(out.config.has_value());
  EXPECT_EQ(out.config->sensors.size(), 6u);
  EXPECT_EQ(out.attempt.prompt, backend.prompts().front());
  EXPECT_NE(out.attempt.prompt.find("[37]"), std::string::npos);
}

TEST(VehicleGenerator, ProseIsAParseError)
{
  llm::ScriptedBackend backend({response("vehicle_base_prose.txt")});
  const auto out = gen::generate_vehicle(context(backend), requirements("vehicle_base"),
      llm::PromptStyle::simple);
  EXPECT_FALSE(out.config.has_value());
  ASSERT_FALSE(out.attempt.ok());
  EXPECT_TRUE(out.attempt.raw_response.has_value());
}

TEST(VehicleGenerator, UnknownBlueprintIsAValidationError)
{
  llm::ScriptedBackend backend({response("vehicle_base_bad_blueprint.txt")});
  const auto out = gen::generate_vehicle(context(backend), requirements("vehicle_base"),
      llm::PromptStyle::simple);
  EXPECT_FALSE(out.config.has_value());
  ASSERT_FALSE(out.attempt.errors.empty());
  EXPECT_NE(out.attempt.errors.front().find("blueprint"), std::string::npos);
}

TEST(VehicleGenerator, BackendFailureIsRecorded)
{
  llm::ScriptedBackend backend;
  const auto out = gen::generate_vehicle(context(backend), requirements("vehicle_base"),
      llm::PromptStyle::simple);
  EXPECT_FALSE(out.config.has_value());
  EXPECT_FALSE(out.attempt.raw_response.has_value());
  EXPECT_FALSE(out.attempt.ok());
}

TEST(VehicleGenerator, EmptyRequirementsRejected)
{
  llm::ScriptedBackend backend({response("vehicle_base.txt")});
  EXPECT_THROW(gen::generate_vehicle(context(backend), {}, llm::PromptStyle::simple),
    sf::DomainError);
  EXPECT_EQ(backend.remaining(), 1u);
}

TEST(GroupedGenerator, OneCallPerGroupPlusSplit)
{
  llm::ScriptedBackend backend({response("split_vehicle_base.txt"),
      response("group_vehicle.txt"), response("group_lidar.txt"),
      response("group_mid_range_camera.txt"), response("group_short_range_camera.txt"),
      response("group_rear_camera.txt")});
  const auto reqs = requirements("vehicle_base");
  const auto out = gen::generate_vehicle_grouped(context(backend), reqs, llm::PromptStyle::icl);
  ASSERT_TRUE(out.ok()) << (out.errors.empty() ? "" : out.errors.front());
  EXPECT_EQ(out.groups.size(), 5u);
  EXPECT_EQ(out.attempts.size(), out.groups.size() + 1);
  EXPECT_EQ(backend.prompts().size(), out.groups.size() + 1);
  EXPECT_EQ(backend.remaining(), 0u);
  EXPECT_EQ(out.attempts.front().pipeline, llm::Pipeline::requirement_split);
  EXPECT_EQ(out.config->id, "ego");
  EXPECT_EQ(out.config->sensors.size(), 4u);

  const auto golden = cfg::parse_part(
    sf::read_text_file(sf::test::fixture("golden/vehicle_base.json")), cfg::PartKind::vehicle);
  EXPECT_EQ(cfg::serialize(cfg::Part{*out.config}), cfg::serialize(golden));

  // The lidar group prompt lists only its own requirements.
  const auto & lidar_prompt = backend.prompts()[2];
  EXPECT_NE(lidar_prompt.find("[4] "), std::string::npos);
  EXPECT_EQ(lidar_prompt.find("[22] "), std::string::npos);
}

TEST(GroupedGenerator, SplitMissingAnIdFails)
{
  const auto reqs = requirements("vehicle_base");
  EXPECT_THROW(gen::parse_requirement_split(R"({"vehicle": [1, 2, 3, 4, 5, 6, 8, 9]})",
    cfg::parse_requirements("[1] a\n[2] b\n[3] c\n[4] d\n[5] e\n[6] f\n[7] g\n[8] h\n[9] i")),
    sf::DomainError);
  try {
    gen::parse_requirement_split(R"({"vehicle": [1, 2, 3, 4, 5, 6, 8, 9]})",
      cfg::parse_requirements("[1] a\n[2] b\n[3] c\n[4] d\n[5] e\n[6] f\n[7] g\n[8] h\n[9] i"));
  } catch (const sf::DomainError & e) {
    EXPECT_NE(std::string(e.what()).find('7'), std::string::npos);
  }

  llm::ScriptedBackend backend({R"({"vehicle": [1, 2, 3], "lidar": [4, 5, 6, 8, 9]})"});
  const auto out = gen::generate_vehicle_grouped(context(backend),
      cfg::parse_requirements("[1] a\n[2] b\n[3] c\n[4] d\n[5] e\n[6] f\n[7] g\n[8] h\n[9] i"),
      llm::PromptStyle::simple);
  EXPECT_FALSE(out.ok());
  ASSERT_FALSE(out.errors.empty());
  EXPECT_NE(out.errors.front().find('7'), std::string::npos);
  EXPECT_EQ(out.attempts.size(), 1u);
}

TEST(GroupedGenerator, SplitRejectsUnknownIdsAndShapes)
{
  const auto reqs = cfg::parse_requirements("[1] a\n[2] b");
  EXPECT_THROW(gen::parse_requirement_split(R"({"vehicle": [1, 2, 3]})", reqs), sf::DomainError);
  EXPECT_THROW(gen::parse_requirement_split(R"(["vehicle"])", reqs), sf::FormatError);
  EXPECT_THROW(gen::parse_requirement_split(R"({"vehicle": ["x", 2]})", reqs), sf::FormatError);
  EXPECT_THROW(gen::parse_requirement_split(R"({"vehicle": 1})", reqs), sf::FormatError);
  // Numeric strings are read as ids.
  EXPECT_EQ(gen::parse_requirement_split(R"({"vehicle": ["1", 2]})", reqs).front().second,
    (std::vector<int>{1, 2}));
  const auto groups = gen::parse_requirement_split(R"({"vehicle": [1], "b": [2, 1]})", reqs);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[1].second, (std::vector<int>{2, 1}));
}

TEST(GroupedGenerator, SingleGroup)
{
  llm::ScriptedBackend backend({R"({"vehicle": [1, 2, 3]})", response("group_vehicle.txt")});
  const auto out = gen::generate_vehicle_grouped(context(backend),
      cfg::parse_requirements("[1] a\n[2] b\n[3] c"), llm::PromptStyle::simple);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out.attempts.size(), 2u);
  EXPECT_TRUE(out.config->sensors.empty());
}

TEST(PreconditionGenerator, CarToCarPlacement)
{
  llm::ScriptedBackend backend({response("pre_car_to_car_step1.json"),
      response("place_car_to_car.txt")});
  const auto out = gen::generate_preconditions(context(backend), requirements("pre_car_to_car"),
      llm::PromptStyle::cot, straight_graph());
  ASSERT_TRUE(out.errors.empty()) << out.errors.front();
  ASSERT_TRUE(out.scene.has_value());
  EXPECT_TRUE(out.code_gen_ok);
  EXPECT_TRUE(out.scene->resolved);
  const auto * subject = cfg::find_agent(*out.scene, "subject");
  const auto * lead = cfg::find_agent(*out.scene, "lead");
  ASSERT_TRUE(subject && lead && subject->spawn && lead->spawn);
  EXPECT_NEAR(rg::distance(subject->spawn->location(), lead->spawn->location()), 100.0 / 3.0,
    1e-6);
  ASSERT_TRUE(out.scene->placement_program.has_value());
  EXPECT_NE(out.scene->placement_program->find("ttc_to_distance"), std::string::npos);
  ASSERT_TRUE(out.step2.has_value());
  EXPECT_EQ(out.step2->pipeline, llm::Pipeline::precondition_step2);
  // Step 2 sees the step-1 scene.
  EXPECT_NE(backend.prompts()[1].find("vehicle.toyota.prius"), std::string::npos);
}

TEST(PreconditionGenerator, PedestrianGetsTrigger)
{
  llm::ScriptedBackend backend({response("pre_car_to_pedestrian_step1.json"),
      response("place_car_to_pedestrian.txt")});
  const auto out = gen::generate_preconditions(context(backend),
      requirements("pre_car_to_pedestrian"), llm::PromptStyle::icl, straight_graph());
  ASSERT_TRUE(out.errors.empty()) << out.errors.front();
  const auto * ped = cfg::find_agent(*out.scene, "pedestrian");
  ASSERT_NE(ped, nullptr);
  ASSERT_TRUE(ped->trigger.has_value());
  EXPECT_EQ(ped->trigger->watched_agent, "subject");
  EXPECT_GT(ped->trigger->distance_threshold, 0.0);
}

TEST(PreconditionGenerator, BrokenProgramLeavesSceneUnresolved)
{
  for (const std::string bad : {"place_car_to_car_python.txt",
      "place_car_to_car_unknown_tool.txt"})
  {
    llm::ScriptedBackend backend({response("pre_car_to_car_step1.json"), response(bad)});
    const auto out = gen::generate_preconditions(context(backend),
        requirements("pre_car_to_car"), llm::PromptStyle::simple, straight_graph());
    EXPECT_FALSE(out.code_gen_ok) << bad;
    ASSERT_TRUE(out.scene.has_value()) << bad;
    EXPECT_FALSE(out.scene->resolved) << bad;
    EXPECT_FALSE(out.errors.empty()) << bad;
  }
}

TEST(PreconditionGenerator, StepOneFailureSkipsStepTwo)
{
  llm::ScriptedBackend backend({"not json", response("place_car_to_car.txt")});
  const auto out = gen::generate_preconditions(context(backend), requirements("pre_car_to_car"),
      llm::PromptStyle::simple, straight_graph());
  EXPECT_FALSE(out.scene.has_value());
  EXPECT_FALSE(out.step2.has_value());
  EXPECT_EQ(backend.remaining(), 1u);
}

TEST(ResolveScene, UnplacedAgentIsAnError)
{
  const auto scene = std::get<cfg::SceneConfig>(cfg::parse_part(
      response("pre_car_to_car_step1.json"), cfg::PartKind::scene));
  sf::placement::PlacementResult result;
  result.route = rg::make_route({{0, 0, 0}, {10, 0, 0}});
  result.agents["subject"] = {};
  EXPECT_THROW(gen::resolve_scene(scene, result, "return 1;"), sf::DomainError);
}

TEST(PostconditionGenerator, FourChecks)
{
  llm::ScriptedBackend backend({response("post_aeb.txt")});
  const auto out = gen::generate_postconditions(context(backend), requirements("post_aeb"),
      llm::PromptStyle::cot);
  ASSERT_TRUE(out.checks.has_value());
  EXPECT_EQ(out.checks->size(), 4u);
  EXPECT_NE(out.attempt.prompt.find("braking_end_aeb"), std::string::npos);
}

TEST(PostconditionGenerator, UnknownEventIsAValidationError)
{
  llm::ScriptedBackend backend({response("post_aeb_unknown_event.txt")});
  const auto out = gen::generate_postconditions(context(backend), requirements("post_aeb"),
      llm::PromptStyle::simple);
  EXPECT_FALSE(out.checks.has_value());
  ASSERT_FALSE(out.attempt.errors.empty());
  EXPECT_NE(out.attempt.errors.front().find("target_speed_reached"), std::string::npos);
}

TEST(PostconditionGenerator, EmptyRequirements)
{
  llm::ScriptedBackend backend({response("post_aeb.txt")});
  EXPECT_THROW(gen::generate_postconditions(context(backend), {}, llm::PromptStyle::simple),
    sf::DomainError);
}

TEST(Prompts, ParamsCarryCatalogs)
{
  llm::ScriptedBackend backend;
  const auto ctx = context(backend);
  const auto v = gen::vehicle_params(ctx, requirements("vehicle_base"));
  EXPECT_NE(v.at("blueprints").find("sensor.camera.rgb"), std::string::npos);
  EXPECT_EQ(sf::trim(v.at("schema")), sf::trim(env().schemas.vehicle.text()));
  const auto s = gen::scene_step1_params(ctx, requirements("pre_car_to_car"));
  EXPECT_NE(s.at("weather_types").find("ClearNoon"), std::string::npos);
  const auto c = gen::checks_params(ctx, requirements("post_aeb"));
  EXPECT_NE(c.at("events").find("braking_start_aeb"), std::string::npos);
  EXPECT_NE(c.at("telemetry_options").find("speed"), std::string::npos);
  // Rendering is deterministic, so replay keys are stable.
  const auto a = gen::render_prompt(ctx, llm::Pipeline::vehicle, llm::PromptStyle::cot, v);
  const auto b = gen::render_prompt(ctx, llm::Pipeline::vehicle, llm::PromptStyle::cot, v);
  EXPECT_EQ(llm::prompt_key(a), llm::prompt_key(b));
}

TEST(Shuffle, IsAPermutation)
{
  const auto reqs = requirements("vehicle_tesla");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto shuffled = ids(gen::shuffle_requirements(reqs, seed));
    auto sorted = shuffled;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, ids(reqs));
  }
}

TEST(Shuffle, SeedDeterminesOrder)
{
  const auto reqs = requirements("vehicle_tesla");
  EXPECT_EQ(ids(gen::shuffle_requirements(reqs, 100)), ids(gen::shuffle_requirements(reqs, 100)));
  EXPECT_NE(ids(gen::shuffle_requirements(reqs, 100)), ids(gen::shuffle_requirements(reqs, 101)));
  EXPECT_TRUE(gen::shuffle_requirements({}, 5).empty());
}

TEST(Shuffle, UniformOverSeeds)
{
  const auto reqs = cfg::parse_requirements("[1] a\n[2] b\n[3] c");
  std::map<std::vector<int>, int> counts;
  const int trials = 60000;
  for (int seed = 0; seed < trials; ++seed) {
    ++counts[ids(gen::shuffle_requirements(reqs, static_cast<std::uint64_t>(seed)))];
  }
  ASSERT_EQ(counts.size(), 6u);
  for (const auto & [perm, n] : counts) {
    EXPECT_NEAR(n, trials / 6.0, trials / 6.0 * 0.05);
  }
}

TEST(Shuffle, FirstPositionUniformOnLongerList)
{
  const auto reqs = requirements("vehicle_base");
  std::map<int, int> first;
  const int trials = 27000;
  for (int seed = 0; seed < trials; ++seed) {
    ++first[gen::shuffle_requirements(reqs, static_cast<std::uint64_t>(seed)).front().id];
  }
  ASSERT_EQ(first.size(), 27u);
  for (const auto & [id, n] : first) {
    EXPECT_NEAR(n, 1000, 150) << id;
  }
}
