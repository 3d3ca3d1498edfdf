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

#include "scenario_forge/llm/replay_key.hpp"

#include "scenario_forge/common/error.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

namespace scenario_forge::llm
{

std::string sha256_hex(std::string_view data)
{
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int size = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
    EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &size) != 1)
  {
    throw Error("SHA-256 computation failed");
  }
  static const char * hex = "0123456789abcdef";
  std::string out;
  out.reserve(size * 2);
  for (unsigned int i = 0; i < size; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0x0f];
  }
  return out;
}

namespace
{

bool is_trailing_space(char c)
{
  return c == ' ' || c == '\t' || c == '\f' || c == '\v';
}

}  // namespace

std::string canonicalize_prompt(std::string_view prompt)
{
  std::string out;
  out.reserve(prompt.size());
  for (std::size_t i = 0; i < prompt.size(); ++i) {
    const char c = prompt[i];
    if (c == '\r' || c == '\n') {
      while (!out.empty() && is_trailing_space(out.back())) {
        out.pop_back();
      }
      out += '\n';
      if (c == '\r' && i + 1 < prompt.size() && prompt[i + 1] == '\n') {
        ++i;
      }
    } else {
      out += c;
    }
  }
  while (!out.empty() && (is_trailing_space(out.back()) || out.back() == '\n')) {
    out.pop_back();
  }
  return out;
}

std::string prompt_key(std::string_view prompt)
{
  return sha256_hex(canonicalize_prompt(prompt));
}

}  // namespace scenario_forge::llm
