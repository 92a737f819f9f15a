// Copyright 2026 The fcgen Authors
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

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcgen/error.hpp"

// Client side of the text-generation wire contract:
//
//   POST /generate  {prompt, n, max_new_tokens, temperature, seed}
//                -> {continuations: [string], model_id: string}
//
// plus a file-exchange mode for generating offline on another host.
namespace fcgen::gen {

inline constexpr int kDefaultMaxNewTokens = 40;
inline constexpr double kDefaultTemperature = 0.9;

struct GenerationRequest {
  std::string prompt;
  int n = 1;
  int max_new_tokens = kDefaultMaxNewTokens;
  double temperature = kDefaultTemperature;
  std::optional<std::int64_t> seed;

  void validate() const;
  std::string to_json() const;
};

struct GenerationResponse {
  std::vector<std::string> continuations;  // text after the prompt
  std::string model_id;
};

class GenerationError : public Error {
 public:
  using Error::Error;
  explicit GenerationError(const std::string& what)
      : Error(ErrorKind::kEndpoint, what) {}
};

class ConnectionError : public GenerationError {
 public:
  using GenerationError::GenerationError;
};

class SchemaError : public GenerationError {
 public:
  using GenerationError::GenerationError;
};

class StatusError : public GenerationError {
 public:
  StatusError(int status, const std::string& body);
  int status() const { return status_; }

 private:
  int status_;
};

// Parses and validates a response body. Throws SchemaError.
GenerationResponse parse_response(std::string_view body,
                                  const GenerationRequest& request);

class Generator {
 public:
  virtual ~Generator() = default;
  virtual GenerationResponse generate(const GenerationRequest& request) = 0;
};

// Append-only JSON-lines log of requests and responses. Thread-safe.
class GenerationLog {
 public:
  GenerationLog() = default;
  explicit GenerationLog(const std::filesystem::path& path);

  void request(const GenerationRequest& req, int attempt);
  void response(const GenerationRequest& req, const GenerationResponse& resp);
  void failure(const GenerationRequest& req, int attempt, std::string_view what);

 private:
  void write(const std::string& line);

  std::mutex mu_;
  std::ofstream out_;
};

struct HttpOptions {
  std::string endpoint;  // http://host:port[/base]
  int retries = 3;
  std::chrono::milliseconds backoff{200};
  std::chrono::seconds timeout{60};
};

class HttpGenerator : public Generator {
 public:
  explicit HttpGenerator(HttpOptions options,
                         std::shared_ptr<GenerationLog> log = nullptr);

  GenerationResponse generate(const GenerationRequest& request) override;

 private:
  HttpOptions options_;
  std::string host_;  // scheme://host:port
  std::string path_;
  std::shared_ptr<GenerationLog> log_;
};

// Deterministic scripted generator for tests and dry runs. Returns exactly n
// continuations cycling through `distinct` different sentence endings that
// depend only on the prompt, or `echo` repeated when it is set.
struct StubOptions {
  std::size_t distinct = 10;
  std::optional<std::string> echo;
  std::string model_id = "stub-generator";
};

class StubGenerator : public Generator {
 public:
  explicit StubGenerator(StubOptions options = {});

  GenerationResponse generate(const GenerationRequest& request) override;

 private:
  StubOptions options_;
};

std::string stub_continuation(std::string_view prompt, std::size_t k);

// Offline exchange.
struct PromptPlan {
  std::uint64_t id = 0;
  std::string prompt;
  int n = 1;
};

struct ImportResult {
  std::map<std::uint64_t, GenerationResponse> responses;
  std::vector<std::uint64_t> missing;  // exported but not answered
};

// {"id", "prompt", "n"} per line.
std::string export_prompts(std::span<const PromptPlan> plans);
std::vector<PromptPlan> parse_prompts(std::string_view content);

// Reads {"id", "continuations": [...], "model_id"?} lines and joins them on
// id. Throws ValidationError on unknown or duplicate ids and malformed
// lines; unanswered ids are listed in `missing`.
ImportResult import_continuations(std::string_view content,
                                  std::span<const PromptPlan> plans);

}  // namespace fcgen::gen
