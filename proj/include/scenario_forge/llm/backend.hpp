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

#ifndef SCENARIO_FORGE__LLM__BACKEND_HPP_
#define SCENARIO_FORGE__LLM__BACKEND_HPP_

#include "scenario_forge/common/error.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace scenario_forge::llm
{

enum class BackendKind { live, replay, scripted };

std::string to_string(BackendKind kind);

/// Any failure to obtain a completion.
class CompletionError : public DomainError
{
public:
  using DomainError::DomainError;
};

class FixtureMissError : public CompletionError
{
public:
  FixtureMissError(const std::string & key, int attempt_index, const std::filesystem::path & dir);
  [[nodiscard]] const std::string & key() const {return key_;}

private:
  std::string key_;
};

/// Source of chat completions. Implementations are safe for concurrent `complete` calls.
class CompletionBackend
{
public:
  virtual ~CompletionBackend() = default;

  /// `attempt_index` distinguishes repeated passes over the same prompt.
  virtual std::string complete(const std::string & prompt, int attempt_index) = 0;
  [[nodiscard]] virtual BackendKind kind() const = 0;
  [[nodiscard]] virtual std::string id() const = 0;
  /// Sampling settings recorded into provenance; never contains credentials.
  [[nodiscard]] virtual nlohmann::json settings() const {return nlohmann::json::object();}
};

/// Serves recorded responses from `<dir>/<key>.<attempt>.txt`, falling back to `<dir>/<key>.txt`.
/// Without `per_attempt` only `<dir>/<key>.txt` is consulted.
class ReplayBackend : public CompletionBackend
{
public:
  explicit ReplayBackend(std::filesystem::path dir, bool per_attempt = true);

  std::string complete(const std::string & prompt, int attempt_index) override;
  [[nodiscard]] BackendKind kind() const override {return BackendKind::replay;}
  [[nodiscard]] std::string id() const override {return "replay";}

  /// Fixture file that would answer this prompt, if any.
  [[nodiscard]] std::optional<std::filesystem::path> locate(const std::string & prompt,
    int attempt_index) const;
  /// Same lookup by precomputed prompt key.
  [[nodiscard]] std::optional<std::filesystem::path> locate_key(const std::string & key,
    int attempt_index) const;
  [[nodiscard]] const std::filesystem::path & directory() const {return dir_;}

private:
  std::filesystem::path dir_;
  bool per_attempt_;
};

/// Returns queued responses in order, regardless of the prompt.
class ScriptedBackend : public CompletionBackend
{
public:
  ScriptedBackend() = default;
  explicit ScriptedBackend(std::vector<std::string> responses);
  /// Loads a JSON array of strings.
  static std::shared_ptr<ScriptedBackend> from_file(const std::filesystem::path & path);

  void push(std::string response);
  std::string complete(const std::string & prompt, int attempt_index) override;
  [[nodiscard]] BackendKind kind() const override {return BackendKind::scripted;}
  [[nodiscard]] std::string id() const override {return "scripted";}

  [[nodiscard]] std::vector<std::string> prompts() const;
  [[nodiscard]] std::size_t remaining() const;

private:
  mutable std::mutex mutex_;
  std::deque<std::string> queue_;
  std::vector<std::string> prompts_;
};

struct LiveConfig
{
  std::string base_url;  ///< scheme://host[:port][/prefix]
  std::string model{"gpt-4o"};
  double temperature{1.0};
  std::string api_key;
  std::size_t max_concurrency{4};
  int max_retries{3};
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::seconds timeout{120};

  /// Reads SCENARIO_FORGE_API_BASE and SCENARIO_FORGE_API_KEY.
  static LiveConfig from_env();
};

/// OpenAI-compatible chat completion client.
class LiveBackend : public CompletionBackend
{
public:
  using Sleeper = std::function<void (std::chrono::milliseconds)>;

  explicit LiveBackend(LiveConfig config, Sleeper sleeper = {});

  std::string complete(const std::string & prompt, int attempt_index) override;
  [[nodiscard]] BackendKind kind() const override {return BackendKind::live;}
  [[nodiscard]] std::string id() const override;
  [[nodiscard]] nlohmann::json settings() const override;

  /// Request body for a prompt: {model, messages, temperature}.
  [[nodiscard]] nlohmann::json request_body(const std::string & prompt) const;

private:
  std::string post_once(const std::string & body, bool & retryable) const;

  LiveConfig config_;
  Sleeper sleeper_;
  std::string scheme_host_port_;
  std::string path_;
  std::mutex slot_mutex_;
  std::condition_variable slot_cv_;
  std::size_t in_flight_{0};
};

/// Forwards to another backend and stores every response as a replay fixture.
class RecordingBackend : public CompletionBackend
{
public:
  /// With `per_attempt`, fixtures are keyed `<key>.<attempt>.txt`, otherwise `<key>.txt`.
  RecordingBackend(std::shared_ptr<CompletionBackend> inner, std::filesystem::path dir,
    bool per_attempt);

  std::string complete(const std::string & prompt, int attempt_index) override;
  [[nodiscard]] BackendKind kind() const override {return inner_->kind();}
  [[nodiscard]] std::string id() const override {return inner_->id() + "+record";}
  [[nodiscard]] nlohmann::json settings() const override {return inner_->settings();}

private:
  std::shared_ptr<CompletionBackend> inner_;
  std::filesystem::path dir_;
  bool per_attempt_;
  std::mutex mutex_;
};

}  // namespace scenario_forge::llm

#endif  // SCENARIO_FORGE__LLM__BACKEND_HPP_
