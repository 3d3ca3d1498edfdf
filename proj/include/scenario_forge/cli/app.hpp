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

#ifndef SCENARIO_FORGE__CLI__APP_HPP_
#define SCENARIO_FORGE__CLI__APP_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace scenario_forge::cli
{

enum ExitCode : int { ok = 0, usage = 1, domain = 2, io = 3 };

/// Data locations used by every command.
struct RunConfig
{
  std::filesystem::path data_dir;

  [[nodiscard]] std::filesystem::path schemas() const {return data_dir / "schemas";}
  [[nodiscard]] std::filesystem::path catalogs() const {return data_dir / "catalogs";}
  [[nodiscard]] std::filesystem::path prompts() const {return data_dir / "prompts";}
  [[nodiscard]] std::filesystem::path replay_fixtures() const
  {
    return data_dir / "fixtures" / "replay";
  }
  [[nodiscard]] std::filesystem::path default_graph() const
  {
    return data_dir / "fixtures" / "graphs" / "straight_200m.json";
  }
};

/// SCENARIO_FORGE_DATA if set, else the directory configured at build time.
std::filesystem::path default_data_dir();

/// Runs the command line; returns the process exit code.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}  // namespace scenario_forge::cli

#endif  // SCENARIO_FORGE__CLI__APP_HPP_
