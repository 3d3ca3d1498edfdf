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

#ifndef SCENARIO_FORGE__TEST__TEST_DATA_HPP_
#define SCENARIO_FORGE__TEST__TEST_DATA_HPP_

#include <atomic>
#include <filesystem>
#include <string>
#include <unistd.h>

namespace scenario_forge::test
{

inline std::filesystem::path data_dir()
{
  return SCENARIO_FORGE_TEST_DATA_DIR;
}

inline std::filesystem::path fixture(const std::string & relative)
{
  return data_dir() / "fixtures" / relative;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir
{
public:
  TempDir()
  {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
      ("sf_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {std::error_code ec; std::filesystem::remove_all(path_, ec);}
  TempDir(const TempDir &) = delete;
  TempDir & operator=(const TempDir &) = delete;

  [[nodiscard]] const std::filesystem::path & path() const {return path_;}
  [[nodiscard]] std::filesystem::path operator/(const std::string & name) const
  {
    return path_ / name;
  }

private:
  std::filesystem::path path_;
};

}  // namespace scenario_forge::test

#endif  // SCENARIO_FORGE__TEST__TEST_DATA_HPP_
