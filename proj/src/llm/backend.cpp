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

#include "scenario_forge/llm/backend.hpp"

#include "scenario_forge/common/io.hpp"
#include "scenario_forge/llm/replay_key.hpp"

#include <httplib.h>

#include <cstdlib>
#include <thread>

namespace scenario_forge::llm
{

std::string to_string(BackendKind kind)
{
  switch (kind) {
    case BackendKind::live: return "live";
    case BackendKind::replay: return "replay";
    case BackendKind::scripted: return "scripted";
  }
  return "?";
}

FixtureMissError::FixtureMissError(const std::string & key, int attempt_index,
  const std::filesystem::path & dir)
: CompletionError("replay fixture miss: no response for prompt " + key + " (attempt " +
    std::to_string(attempt_index) + ") in " + dir.string()),
  key_(key)
{
}

namespace
{

std::filesystem::path fixture_path(const std::filesystem::path & dir, const std::string & key,
  std::optional<int> attempt_index)
{
  if (attempt_index) {
    return dir / (key + "." + std::to_string(*attempt_index) + ".txt");
  }
  return dir / (key + ".txt");
}

}  // namespace

ReplayBackend::ReplayBackend(std::filesystem::path dir, bool per_attempt)
: dir_(std::move(dir)), per_attempt_(per_attempt)
{
}

std::optional<std::filesystem::path> ReplayBackend::locate(const std::string & prompt,
  int attempt_index) const
{
  return locate_key(prompt_key(prompt), attempt_index);
}

std::optional<std::filesystem::path> ReplayBackend::locate_key(const std::string & key,
  int attempt_index) const
{
  for (const auto & candidate :
    {fixture_path(dir_, key, per_attempt_ ? std::optional<int>(attempt_index) : std::nullopt),
      fixture_path(dir_, key, std::nullopt)})
  {
    if (std::filesystem::is_regular_file(candidate)) {
      return candidate;
    }
  }
  return std::nullopt;
}

std::string ReplayBackend::complete(const std::string & prompt, int attempt_index)
{
  const auto path = locate(prompt, attempt_index);
  if (!path) {
    throw FixtureMissError(prompt_key(prompt), attempt_index, dir_);
  }
  return read_text_file(*path);
}

ScriptedBackend::ScriptedBackend(std::vector<std::string> responses)
: queue_(responses.begin(), responses.end())
{
}

std::shared_ptr<ScriptedBackend> ScriptedBackend::from_file(const std::filesystem::path & path)
{
  const auto j = read_json_file(path);
  if (!j.is_array()) {
    throw FormatError(path.string() + ": scripted responses must be a JSON array of strings");
  }
  std::vector<std::string> responses;
  for (const auto & item : j) {
    if (!item.is_string()) {
      throw FormatError(path.string() + ": scripted responses must be a JSON array of strings");
    }
    responses.push_back(item.get<std::string>());
  }
  return std::make_shared<ScriptedBackend>(std::move(responses));
}

void ScriptedBackend::push(std::string response)
{
  const std::lock_guard lock(mutex_);
  queue_.push_back(std::move(response));
}

std::string ScriptedBackend::complete(const std::string & prompt, int /*attempt_index*/)
{
  const std::lock_guard lock(mutex_);
  prompts_.push_back(prompt);
  if (queue_.empty()) {
    throw CompletionError("scripted backend queue is empty");
  }
  std::string response = std::move(queue_.front());
  queue_.pop_front();
  return response;
}

std::vector<std::string> ScriptedBackend::prompts() const
{
  const std::lock_guard lock(mutex_);
  return prompts_;
}

std::size_t ScriptedBackend::remaining() const
{
  const std::lock_guard lock(mutex_);
  return queue_.size();
}

LiveConfig LiveConfig::from_env()
{
  LiveConfig config;
  if (const char * base = std::getenv("SCENARIO_FORGE_API_BASE")) {
    config.base_url = base;
  }
  if (const char * key = std::getenv("SCENARIO_FORGE_API_KEY")) {
    config.api_key = key;
  }
  return config;
}

LiveBackend::LiveBackend(LiveConfig config, Sleeper sleeper)
: config_(std::move(config)), sleeper_(std::move(sleeper))
{
  if (!sleeper_) {
    sleeper_ = [](std::chrono::milliseconds d) {std::this_thread::sleep_for(d);};
  }
  if (config_.base_url.empty()) {
    throw CompletionError("live backend needs an API base URL (SCENARIO_FORGE_API_BASE)");
  }
  if (config_.max_concurrency == 0) {
    throw DomainError("live backend concurrency limit must be at least 1");
  }
  const auto scheme_end = config_.base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw CompletionError("API base URL must start with http:// or https://");
  }
  const std::string scheme = config_.base_url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw CompletionError("unsupported URL scheme '" + scheme + "'");
  }
  const auto path_start = config_.base_url.find('/', scheme_end + 3);
  scheme_host_port_ = config_.base_url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : config_.base_url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') {
    prefix.pop_back();
  }
  const bool has_version = prefix.size() >= 3 && prefix.compare(prefix.size() - 3, 3, "/v1") == 0;
  path_ = prefix + (has_version ? "/chat/completions" : "/v1/chat/completions");
}

std::string LiveBackend::id() const
{
  return "live:" + config_.model;
}

nlohmann::json LiveBackend::settings() const
{
  return {{"model", config_.model}, {"temperature", config_.temperature}};
}

nlohmann::json LiveBackend::request_body(const std::string & prompt) const
{
  return {
    {"model", config_.model},
    {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
    {"temperature", config_.temperature}};
}

std::string LiveBackend::post_once(const std::string & body, bool & retryable) const
{
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  const auto res = client.Post(path_, headers, body, "application/json");
  if (!res) {
    retryable = true;
    throw CompletionError("transport error: " + httplib::to_string(res.error()));
  }
  if (res->status == 429) {
    retryable = true;
    throw CompletionError("rate limited (HTTP 429)");
  }
  retryable = false;
  if (res->status < 200 || res->status >= 300) {
    throw CompletionError("completion request failed with HTTP " + std::to_string(res->status));
  }
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception & e) {
    throw CompletionError(std::string("malformed completion response: ") + e.what());
  }
}

std::string LiveBackend::complete(const std::string & prompt, int /*attempt_index*/)
{
  {
    std::unique_lock lock(slot_mutex_);
    slot_cv_.wait(lock, [&] {return in_flight_ < config_.max_concurrency;});
    ++in_flight_;
  }
  struct Release
  {
    LiveBackend & self;
    ~Release()
    {
      {
        const std::lock_guard lock(self.slot_mutex_);
        --self.in_flight_;
      }
      self.slot_cv_.notify_one();
    }
  } release{*this};

  const std::string body = request_body(prompt).dump();
  auto backoff = config_.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    bool retryable = false;
    try {
      return post_once(body, retryable);
    } catch (const CompletionError &) {
      if (!retryable || attempt >= config_.max_retries) {
        throw;
      }
    }
    sleeper_(backoff);
    backoff *= 2;
  }
}

RecordingBackend::RecordingBackend(std::shared_ptr<CompletionBackend> inner,
  std::filesystem::path dir, bool per_attempt)
: inner_(std::move(inner)), dir_(std::move(dir)), per_attempt_(per_attempt)
{
}

std::string RecordingBackend::complete(const std::string & prompt, int attempt_index)
{
  std::string response = inner_->complete(prompt, attempt_index);
  const auto path = fixture_path(dir_, prompt_key(prompt),
      per_attempt_ ? std::optional<int>(attempt_index) : std::nullopt);
  const std::lock_guard lock(mutex_);
  write_text_file(path, response);
  return response;
}

}  // namespace scenario_forge::llm
