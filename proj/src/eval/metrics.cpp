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

#include "scenario_forge/eval/metrics.hpp"

#include <algorithm>

namespace scenario_forge::eval
{

AttemptGrade grade(const std::optional<nlohmann::json> & artifact, const Suite & suite,
  int attempt_index)
{
  if (suite.empty()) {
    throw DomainError("cannot grade against an empty suite");
  }
  AttemptGrade g;
  g.attempt_index = attempt_index;
  g.total = suite.size();
  for (const auto & assertion : suite) {
    if (artifact && evaluate(assertion, *artifact).passed) {
      ++g.passed;
    } else {
      g.failed.push_back(assertion.id);
    }
  }
  return g;
}

double pass_at_k(long n, long c, long k)
{
  if (n < 1 || k < 1 || k > n) {
    throw DomainError("pass@k needs 1 <= k <= n (n=" + std::to_string(n) + ", k=" +
            std::to_string(k) + ")");
  }
  if (c < 0 || c > n) {
    throw DomainError("pass@k needs 0 <= c <= n (n=" + std::to_string(n) + ", c=" +
            std::to_string(c) + ")");
  }
  if (n - c < k) {
    return 1.0;
  }
  // C(n-c, k) / C(n, k) = prod_{i=n-c+1}^{n} (1 - k / i)
  double miss = 1.0;
  for (long i = n - c + 1; i <= n; ++i) {
    miss *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
  }
  return 1.0 - miss;
}

double avg_tpr(const std::vector<AttemptGrade> & grades)
{
  if (grades.empty()) {
    throw DomainError("average TPR of no attempts is undefined");
  }
  // Summing in sorted order keeps the result bit-identical under any permutation.
  std::vector<double> tprs;
  tprs.reserve(grades.size());
  for (const auto & g : grades) {
    tprs.push_back(g.tpr());
  }
  std::sort(tprs.begin(), tprs.end());
  double sum = 0.0;
  for (double t : tprs) {
    sum += t;
  }
  return sum / static_cast<double>(grades.size());
}

double code_gen_success_rate(const std::vector<AttemptGrade> & grades)
{
  if (grades.empty()) {
    throw DomainError("code generation success rate of no attempts is undefined");
  }
  std::size_t ok = 0;
  for (const auto & g : grades) {
    if (!g.code_gen_ok) {
      throw DomainError("attempt " + std::to_string(g.attempt_index) +
              " carries no code generation flag");
    }
    ok += *g.code_gen_ok ? 1 : 0;
  }
  return static_cast<double>(ok) / static_cast<double>(grades.size());
}

}  // namespace scenario_forge::eval
