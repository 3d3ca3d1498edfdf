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

#ifndef SCENARIO_FORGE__EVAL__METRICS_HPP_
#define SCENARIO_FORGE__EVAL__METRICS_HPP_

#include "scenario_forge/eval/assertion.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace scenario_forge::eval
{

struct AttemptGrade
{
  int attempt_index{0};
  std::size_t passed{0};
  std::size_t total{0};
  std::optional<bool> code_gen_ok;
  std::vector<std::string> failed;  ///< ids of failed assertions, suite order

  [[nodiscard]] double tpr() const
  {
    return total == 0 ? 0.0 : static_cast<double>(passed) / static_cast<double>(total);
  }
  [[nodiscard]] bool correct() const {return total > 0 && passed == total;}
};

/// Grades an artifact; a missing artifact fails every assertion. Throws DomainError for an
/// empty suite.
AttemptGrade grade(const std::optional<nlohmann::json> & artifact, const Suite & suite,
  int attempt_index = 0);

/// Probability that k attempts drawn without replacement from n, of which c are correct,
/// contain a correct one: 1 - C(n-c, k) / C(n, k), evaluated as a product.
double pass_at_k(long n, long c, long k);

/// Mean tpr. Throws DomainError for an empty list.
double avg_tpr(const std::vector<AttemptGrade> & grades);

/// Share of grades with code_gen_ok set to true. Throws DomainError if a grade has no flag.
double code_gen_success_rate(const std::vector<AttemptGrade> & grades);

}  // namespace scenario_forge::eval

#endif  // SCENARIO_FORGE__EVAL__METRICS_HPP_
