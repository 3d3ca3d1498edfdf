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

#include "scenario_forge/common/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace scenario_forge
{

std::string read_text_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("cannot read '" + path.string() + "'");
  }
  return buffer.str();
}

void write_text_file(const std::filesystem::path & path, std::string_view content)
{
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw IoError("cannot write '" + path.string() + "'");
  }
}

nlohmann::json parse_json(std::string_view text, std::string_view what)
{
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error & e) {
    // nlohmann reports the byte index one past the offending character.
    std::ostringstream msg;
    msg << "syntax error in " << what << " at byte " << e.byte << ": " << e.what();
    throw FormatError(msg.str());
  }
}

nlohmann::json read_json_file(const std::filesystem::path & path)
{
  return parse_json(read_text_file(path), path.string());
}

namespace
{
nlohmann::json canonicalize(const nlohmann::json & value)
{
  switch (value.type()) {
    case nlohmann::json::value_t::object: {
      nlohmann::json out = nlohmann::json::object();
      for (const auto & [key, item] : value.items()) {
        out[key] = canonicalize(item);
      }
      return out;
    }
    case nlohmann::json::value_t::array: {
      nlohmann::json out = nlohmann::json::array();
      for (const auto & item : value) {
        out.push_back(canonicalize(item));
      }
      return out;
    }
    case nlohmann::json::value_t::number_float:
      return number_to_json(value.get<double>());
    default:
      return value;
  }
}
}  // namespace

std::string canonical_dump(const nlohmann::json & value)
{
  return canonicalize(value).dump(2) + "\n";
}

nlohmann::json number_to_json(double value)
{
  constexpr double max_exact = 9007199254740992.0;  // 2^53
  if (std::isfinite(value) && std::trunc(value) == value && std::fabs(value) <= max_exact) {
    if (value == 0.0) {
      return 0;  // folds -0.0
    }
    return static_cast<std::int64_t>(value);
  }
  return value;
}

std::string trim(std::string_view text)
{
  const auto is_space = [](char c) {
      return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    };
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_space(text[begin])) {
    ++begin;
  }
  while (end > begin && is_space(text[end - 1])) {
    --end;
  }
  return std::string(text.substr(begin, end - begin));
}

}  // namespace scenario_forge
