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

#include <test_data.hpp>

#include <gtest/gtest.h>

#include <regex>
#include <string>
#include <vector>

namespace sf = scenario_forge;
namespace cfg = scenario_forge::config;
using nlohmann::json;

namespace
{

const cfg::SchemaSet & schemas()
{
  static const auto s = cfg::SchemaSet::load(sf::test::data_dir() / "schemas");
  return s;
}

const cfg::Catalogs & catalogs()
{
  static const auto c = cfg::Catalogs::load(sf::test::data_dir() / "catalogs");
  return c;
}

std::string golden(const std::string & name)
{
  return sf::read_text_file(sf::test::fixture("golden/" + name));
}

// Resolves an RFC 6901 pointer without nlohmann's json_pointer so the check is independent.
const json * resolve_pointer(const json & doc, const std::string & pointer)
{
  const json * node = &doc;
  std::size_t pos = 0;
  while (pos < pointer.size()) {
    const std::size_t next = pointer.find('/', pos + 1);
    std::string token = pointer.substr(pos + 1, next == std::string::npos ? std::string::npos :
        next - pos - 1);
    for (std::size_t i = 0; (i = token.find("~1", i)) != std::string::npos; ) {
      token.replace(i, 2, "/");
    }
    for (std::size_t i = 0; (i = token.find("~0", i)) != std::string::npos; ) {
      token.replace(i, 2, "~");
    }
    if (node->is_object()) {
      if (!node->contains(token)) {
        return nullptr;
      }
      node = &(*node)[token];
    } else if (node->is_array()) {
      const std::size_t index = std::stoul(token);
      if (index >= node->size()) {
        return nullptr;
      }
      node = &(*node)[index];
    } else {
      return nullptr;
    }
    pos = next == std::string::npos ? pointer.size() : next;
  }
  return node;
}

}  // namespace

TEST(ParsePart, BaseVehicleGolden)
{
  const auto part = cfg::parse_part(golden("vehicle_base.json"), cfg::PartKind::vehicle);
  const auto & v = std::get<cfg::VehicleConfig>(part);
  EXPECT_EQ(v.id, "ego");
  EXPECT_EQ(v.blueprint, "vehicle.tesla.model3");
  ASSERT_EQ(v.sensors.size(), 4u);
  EXPECT_EQ(v.sensors[0].blueprint, "sensor.lidar.ray_cast");
  EXPECT_DOUBLE_EQ(v.sensors[0].transform.x, 2.35);
  EXPECT_DOUBLE_EQ(v.sensors[0].transform.z, 0.5);
  EXPECT_DOUBLE_EQ(v.sensors[3].transform.yaw, 180.0);
  EXPECT_DOUBLE_EQ(v.sensors[1].attributes.at("sensor_tick"), 0.05);
}

TEST(ParsePart, EmptySensorList)
{
  const auto part = cfg::parse_part(R"({"id":"ego","blueprint":"vehicle.tesla.model3","sensors":[]})",
      cfg::PartKind::vehicle);
  const auto & v = std::get<cfg::VehicleConfig>(part);
  EXPECT_TRUE(v.sensors.empty());
  EXPECT_NE(cfg::serialize(part).find("\"sensors\": []"), std::string::npos);
}

TEST(ParsePart, AebChecksGolden)
{
  const auto part = cfg::parse_part(golden("checks_aeb.json"), cfg::PartKind::checks);
  const auto & checks = std::get<cfg::CheckList>(part);
  ASSERT_EQ(checks.size(), 4u);
  EXPECT_EQ(checks[1].id, "ID_BRAKING_FORCE");
  EXPECT_EQ(checks[1].op, cfg::CheckOperator::ge);
  EXPECT_EQ(std::get<double>(checks[1].value), 5.0);
  EXPECT_FALSE(checks[0].end.has_value());
  EXPECT_EQ(std::get<bool>(checks[2].value), false);
  EXPECT_EQ(checks[2].end, "braking_end_aeb");
}

TEST(ParsePart, RejectsUnknownFields)
{
  EXPECT_THROW(cfg::parse_part(R"({"id":"ego","blueprint":"b","sensors":[],"color":"red"})",
    cfg::PartKind::vehicle), cfg::PartError);
  EXPECT_THROW(cfg::parse_part(R"({"telemetry":[{"id":"a","sensor":"speed","begin":"x",
    "operator":"==","value":1,"unit":"km/h"}]})", cfg::PartKind::checks), cfg::PartError);
}

TEST(ParsePart, SyntaxErrorIsFormatError)
{
  EXPECT_THROW(cfg::parse_part("{\"id\": ", cfg::PartKind::vehicle), sf::FormatError);
}

TEST(ParsePart, KeepsAnglesAsWritten)
{
  const auto part = cfg::parse_part(R"({"id":"ego","blueprint":"vehicle.tesla.model3","sensors":[
    {"id":"c","blueprint":"sensor.camera.rgb","transform":{"x":0,"y":0,"z":1,"yaw":-180}}]})",
      cfg::PartKind::vehicle);
  EXPECT_DOUBLE_EQ(std::get<cfg::VehicleConfig>(part).sensors[0].transform.yaw, -180.0);
}

TEST(NormalizeAngle, WrapsIntoHalfOpenRange)
{
  EXPECT_DOUBLE_EQ(cfg::normalize_angle_deg(-180.0), 180.0);
  EXPECT_DOUBLE_EQ(cfg::normalize_angle_deg(540.0), 180.0);
  EXPECT_DOUBLE_EQ(cfg::normalize_angle_deg(-190.0), 170.0);
  EXPECT_DOUBLE_EQ(cfg::normalize_angle_deg(360.0), 0.0);
}

TEST(Validate, BaseVehicleIsConformant)
{
  const auto part = cfg::parse_part(golden("vehicle_base.json"), cfg::PartKind::vehicle);
  EXPECT_TRUE(cfg::validate(part, schemas().vehicle).empty());
  EXPECT_TRUE(cfg::validate_part(part, schemas(), catalogs()).empty());
}

TEST(Validate, NegativeSensorTick)
{
  auto doc = json::parse(golden("vehicle_base.json"));
  doc["sensors"][1]["attributes"]["sensor_tick"] = -0.1;
  const auto violations = schemas().vehicle.validate(doc);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].path, "/sensors/1/attributes/sensor_tick");
}

TEST(Validate, BooleanValueNeedsEqualityOperator)
{
  const auto doc = json::parse(R"({"telemetry":[{"id":"c","sensor":"collision",
    "begin":"simulation_start","end":null,"operator":">=","value":false}]})");
  const auto violations = schemas().checks.validate(doc);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].path.rfind("/telemetry/0", 0), 0u);
}

TEST(Validate, UnknownBlueprintAndEvent)
{
  auto doc = json::parse(golden("vehicle_base.json"));
  doc["sensors"][0]["blueprint"] = "sensor.lidar.imaginary";
  const auto v = cfg::validate_part(cfg::part_from_json(doc, cfg::PartKind::vehicle), schemas(),
      catalogs());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].path, "/sensors/0/blueprint");

  auto checks = json::parse(golden("checks_aeb.json"));
  checks["telemetry"][3]["begin"] = "braking_finished";
  const auto c = cfg::validate_part(cfg::part_from_json(checks, cfg::PartKind::checks), schemas(),
      catalogs());
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].path, "/telemetry/3/begin");
}

TEST(Validate, SceneNeedsExactlyOneSubject)
{
  const auto doc = json::parse(R"({"agents":[
    {"id":"a","role":"lead","blueprint":"vehicle.audi.a2","target_speed":0}],"weather":"ClearNoon"})");
  EXPECT_FALSE(schemas().scene.validate(doc).empty());
}

TEST(Validate, ResolvedSceneNeedsPlacement)
{
  auto doc = json::parse(golden("scene_car_to_car.json"));
  EXPECT_TRUE(schemas().scene.validate(doc).empty());
  doc["agents"][1].erase("spawn");
  EXPECT_FALSE(schemas().scene.validate(doc).empty());
  doc["resolved"] = false;
  EXPECT_TRUE(schemas().scene.validate(doc).empty());
}

TEST(Validate, DuplicateSensorIds)
{
  auto doc = json::parse(golden("vehicle_base.json"));
  doc["sensors"][2]["id"] = "mid_range_camera";
  const auto v = cfg::validate_part(cfg::part_from_json(doc, cfg::PartKind::vehicle), schemas(),
      catalogs());
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].path, "/sensors/2/id");
}

TEST(Validate, IsTotalOnArbitraryJson)
{
  const std::vector<std::string> docs{"null", "1", "\"x\"", "[]", "{}", "[{}]",
    R"({"sensors": {"a": 1}})", R"({"id": 5, "blueprint": [], "sensors": [null, 1, {}]})",
    R"({"telemetry": [{"value": {"x": 1}}]})", R"({"agents": "many"})"};
  for (const auto & text : docs) {
    const auto doc = json::parse(text);
    for (auto kind : {cfg::PartKind::vehicle, cfg::PartKind::scene, cfg::PartKind::checks}) {
      std::vector<cfg::Violation> v;
      ASSERT_NO_THROW(v = schemas().for_part(kind).validate(doc)) << text;
      EXPECT_FALSE(v.empty()) << text;
      for (const auto & violation : v) {
        EXPECT_NE(resolve_pointer(doc, violation.path), nullptr)
          << text << " -> " << violation.path;
      }
    }
  }
}

TEST(Validate, ViolationPathsResolve)
{
  auto doc = json::parse(golden("vehicle_extended.json"));
  doc["sensors"][4]["transform"]["yaw"] = 270;
  doc["sensors"][5]["attributes"]["image_size_x"] = 14.5;
  doc["sensors"][0]["attributes"]["bogus"] = 1;
  const auto v = schemas().vehicle.validate(doc);
  EXPECT_EQ(v.size(), 3u);
  for (const auto & violation : v) {
    EXPECT_NE(resolve_pointer(doc, violation.path), nullptr) << violation.path;
  }
}

TEST(RoundTrip, GoldenFilesAreStable)
{
  const std::vector<std::pair<std::string, cfg::PartKind>> files{
    {"vehicle_base.json", cfg::PartKind::vehicle}, {"vehicle_extended.json", cfg::PartKind::vehicle},
    {"vehicle_tesla.json", cfg::PartKind::vehicle}, {"scene_car_to_car.json", cfg::PartKind::scene},
    {"scene_car_to_pedestrian.json", cfg::PartKind::scene},
    {"checks_aeb.json", cfg::PartKind::checks}};
  for (const auto & [file, kind] : files) {
    const auto part = cfg::parse_part(golden(file), kind);
    const std::string once = cfg::serialize(part);
    const auto again = cfg::parse_part(once, kind);
    EXPECT_EQ(again, part) << file;
    EXPECT_EQ(cfg::serialize(again), once) << file;
  }
}

TEST(RoundTrip, DecimalsSurvive)
{
  const auto part = cfg::parse_part(golden("vehicle_base.json"), cfg::PartKind::vehicle);
  const auto text = cfg::serialize(part);
  // Oracle: re-parse with the plain JSON parser and compare to the literal decimal.
  const auto doc = json::parse(text);
  EXPECT_EQ(doc["sensors"][1]["attributes"]["sensor_tick"].get<double>(), 0.05);
  EXPECT_TRUE(std::regex_search(text, std::regex("\"sensor_tick\": 0\\.05[,\n]")));
  EXPECT_NE(text.find("\"x\": 2.35"), std::string::npos);
}

TEST(RoundTrip, ScenarioDocument)
{
  const auto text = golden("scenario_car_to_car.json");
  const auto doc = cfg::scenario_from_json(json::parse(text));
  EXPECT_EQ(cfg::serialize(doc), text);
}

TEST(DetectPartKind, ByShape)
{
  EXPECT_EQ(cfg::detect_part_kind(json::parse(golden("vehicle_base.json"))), cfg::PartKind::vehicle);
  EXPECT_EQ(cfg::detect_part_kind(json::parse(golden("scene_car_to_car.json"))),
    cfg::PartKind::scene);
  EXPECT_EQ(cfg::detect_part_kind(json::parse(golden("checks_aeb.json"))), cfg::PartKind::checks);
  EXPECT_EQ(cfg::detect_part_kind(json::parse("{}")), std::nullopt);
}

TEST(Requirements, ParsesNumberedLines)
{
  const auto reqs = cfg::load_requirements(sf::test::fixture("requirements/vehicle_base.txt"));
  ASSERT_EQ(reqs.size(), 27u);
  EXPECT_EQ(reqs.front().id, 1);
  EXPECT_EQ(reqs.front().text, "The vehicle should be identified as \"ego\".");
  EXPECT_EQ(reqs.back().id, 27);
  EXPECT_EQ(cfg::load_requirements(sf::test::fixture("requirements/vehicle_tesla.txt")).size(), 33u);
  EXPECT_EQ(cfg::load_requirements(sf::test::fixture("requirements/vehicle_extended.txt")).size(),
    37u);
}

TEST(Requirements, RejectsMalformedLines)
{
  EXPECT_THROW(cfg::parse_requirements("no id here"), sf::FormatError);
  EXPECT_THROW(cfg::parse_requirements("[x] text"), sf::FormatError);
  EXPECT_THROW(cfg::parse_requirements("[0] text"), sf::FormatError);
  EXPECT_THROW(cfg::parse_requirements("[1] a\n[1] b"), sf::DomainError);
  EXPECT_THROW(cfg::parse_requirements("[1]   "), sf::DomainError);
}

TEST(Requirements, FormatRoundTrip)
{
  const auto reqs = cfg::parse_requirements("\n[3] c\r\n\n[1]  a \n");
  ASSERT_EQ(reqs.size(), 2u);
  EXPECT_EQ(cfg::format_requirements(reqs), "[3] c\n[1] a");
}

TEST(Catalogs, LoadShipped)
{
  EXPECT_TRUE(catalogs().has_blueprint("vehicle.tesla.model3"));
  EXPECT_TRUE(catalogs().has_blueprint("sensor.other.collision"));
  EXPECT_TRUE(catalogs().has_weather("ClearNoon"));
  EXPECT_TRUE(catalogs().has_event("braking_end_aeb"));
  EXPECT_EQ(catalogs().events.size(), 5u);
  EXPECT_EQ(catalogs().signals.at("brake"), "m/s^2");
  EXPECT_FALSE(catalogs().has_signal("rpm"));
}

TEST(Catalogs, ParseSkipsCommentsAndBlanks)
{
  EXPECT_EQ(cfg::parse_catalog("# c\n\n a \nb\n"), (std::vector<std::string>{"a", "b"}));
}

TEST(JsonPointer, Escapes)
{
  EXPECT_EQ(cfg::json_pointer_append("/a", "b/c~d"), "/a/b~1c~0d");
  EXPECT_EQ(cfg::json_pointer_append("", std::size_t{3}), "/3");
}
