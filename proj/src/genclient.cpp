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

#include "fcgen/genclient.hpp"

#include <spdlog/spdlog.h>

#include <array>
#include <set>
#include <thread>

#include "fcgen/text.hpp"
#include "httplib.h"
#include "json.hpp"

namespace fcgen::gen {
namespace {

using ojson = nlohmann::ordered_json;

ojson request_json(const GenerationRequest& r) {
  ojson j;
  j["prompt"] = r.prompt;
  j["n"] = r.n;
  j["max_new_tokens"] = r.max_new_tokens;
  j["temperature"] = r.temperature;
  if (r.seed) {
    j["seed"] = *r.seed;
  } else {
    j["seed"] = nullptr;
  }
  return j;
}

constexpr std::array<std::string_view, 12> kClauses = {
    ", so that we can be independent",
    " because they need it for their daily life",
    " when they are too old to work",
    " and we can learn how to save it",
    " if they have some problems at home",
    " , which is very important for the family",
    " after they come back from work",
    " so they do not have to worry about it",
    " and it makes them very happy",
    " while we are studying at the university",
    " but it is not easy for students",
    " in order to live a better life",
};

constexpr std::array<std::string_view, 12> kTails = {
    "",
    " every month",
    " in the future",
    " at the end of the year",
    " as much as possible",
    " for a long time",
    " in our country",
    " with their friends",
    " every day",
    " when it is necessary",
    " in many ways",
    " after all",
};

}  // namespace

void GenerationRequest::validate() const {
  if (prompt.empty()) throw ValidationError("generation request: empty prompt");
  if (n < 1) throw ValidationError("generation request: n must be >= 1");
  if (max_new_tokens < 1) {
    throw ValidationError("generation request: max_new_tokens must be >= 1");
  }
  if (!(temperature >= 0.0)) {
    throw ValidationError("generation request: temperature must be >= 0");
  }
}

std::string GenerationRequest::to_json() const { return request_json(*this).dump(); }

StatusError::StatusError(int status, const std::string& body)
    : GenerationError("generation service returned HTTP " +
                      std::to_string(status) +
                      (body.empty() ? "" : ": " + body.substr(0, 200))),
      status_(status) {}

GenerationResponse parse_response(std::string_view body,
                                  const GenerationRequest& request) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("response is not a JSON object");
  auto c = j.find("continuations");
  if (c == j.end() || !c->is_array()) {
    throw SchemaError("response lacks a \"continuations\" array");
  }
  auto m = j.find("model_id");
  if (m == j.end() || !m->is_string()) {
    throw SchemaError("response lacks a string \"model_id\"");
  }
  GenerationResponse resp;
  resp.model_id = m->get<std::string>();
  for (const auto& item : *c) {
    if (!item.is_string()) throw SchemaError("continuation is not a string");
    resp.continuations.push_back(item.get<std::string>());
  }
  if (resp.continuations.size() > static_cast<std::size_t>(request.n)) {
    throw SchemaError("response has " +
                      std::to_string(resp.continuations.size()) +
                      " continuations, requested " + std::to_string(request.n));
  }
  return resp;
}

GenerationLog::GenerationLog(const std::filesystem::path& path)
    : out_(path, std::ios::app) {
  if (!out_) throw IoError("cannot open generation log " + path.string());
}

void GenerationLog::write(const std::string& line) {
  std::lock_guard lock(mu_);
  if (!out_.is_open()) return;
  out_ << line << '\n';
  out_.flush();
}

void GenerationLog::request(const GenerationRequest& req, int attempt) {
  ojson j;
  j["event"] = "request";
  j["attempt"] = attempt;
  j["request"] = request_json(req);
  write(j.dump());
}

void GenerationLog::response(const GenerationRequest& req,
                             const GenerationResponse& resp) {
  ojson j;
  j["event"] = "response";
  j["prompt"] = req.prompt;
  j["model_id"] = resp.model_id;
  j["continuations"] = resp.continuations;
  write(j.dump());
}

void GenerationLog::failure(const GenerationRequest& req, int attempt,
                            std::string_view what) {
  ojson j;
  j["event"] = "failure";
  j["attempt"] = attempt;
  j["prompt"] = req.prompt;
  j["error"] = std::string(what);
  write(j.dump());
}

HttpGenerator::HttpGenerator(HttpOptions options,
                             std::shared_ptr<GenerationLog> log)
    : options_(std::move(options)), log_(std::move(log)) {
  std::string_view url = options_.endpoint;
  if (url.empty()) throw ValidationError("generation endpoint is not set");
  auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw ValidationError("endpoint must be an http:// URL: " + options_.endpoint);
  }
  if (url.substr(0, scheme_end) != "http") {
    throw ValidationError("only http:// endpoints are supported: " +
                          options_.endpoint);
  }
  auto path_start = url.find('/', scheme_end + 3);
  host_ = std::string(url.substr(0, path_start));
  std::string base =
      path_start == std::string_view::npos ? "" : std::string(url.substr(path_start));
  while (!base.empty() && base.back() == '/') base.pop_back();
  constexpr std::string_view kRoute = "/generate";
  if (base.size() >= kRoute.size() &&
      std::string_view(base).substr(base.size() - kRoute.size()) == kRoute) {
    path_ = base;
  } else {
    path_ = base + std::string(kRoute);
  }
}

GenerationResponse HttpGenerator::generate(const GenerationRequest& request) {
  request.validate();
  const std::string body = request.to_json();
  const int attempts = 1 + std::max(0, options_.retries);

  std::string last_error;
  bool last_was_status = false;
  int last_status = 0;
  std::string last_body;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1) {
      auto delay = options_.backoff * (1 << std::min(attempt - 2, 10));
      std::this_thread::sleep_for(delay);
    }
    if (log_) log_->request(request, attempt);

    httplib::Client client(host_);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    client.set_write_timeout(options_.timeout);
    auto res = client.Post(path_, body, "application/json");
    if (!res) {
      last_error = "connection to " + host_ + " failed: " +
                   httplib::to_string(res.error());
      last_was_status = false;
    } else if (res->status >= 200 && res->status < 300) {
      try {
        auto resp = parse_response(res->body, request);
        if (log_) log_->response(request, resp);
        return resp;
      } catch (const SchemaError& e) {
        if (log_) log_->failure(request, attempt, e.what());
        throw;
      }
    } else {
      last_was_status = true;
      last_status = res->status;
      last_body = res->body;
      last_error = "HTTP " + std::to_string(res->status);
      bool transient = res->status == 429 || res->status >= 500;
      if (!transient) {
        if (log_) log_->failure(request, attempt, last_error);
        throw StatusError(last_status, last_body);
      }
    }
    if (log_) log_->failure(request, attempt, last_error);
    spdlog::debug("generate attempt {}/{} failed: {}", attempt, attempts,
                  last_error);
  }
  if (last_was_status) throw StatusError(last_status, last_body);
  throw ConnectionError(last_error + " (after " + std::to_string(attempts) +
                        " attempts)");
}

StubGenerator::StubGenerator(StubOptions options) : options_(std::move(options)) {
  if (options_.distinct == 0 && !options_.echo) {
    throw ValidationError("stub generator needs distinct >= 1");
  }
}

std::string stub_continuation(std::string_view prompt, std::size_t k) {
  const std::size_t h = text::fnv1a64(prompt) % kTails.size();
  std::string out(kClauses[k % kClauses.size()]);
  out += kTails[(k / kClauses.size() + h) % kTails.size()];
  if (k >= kClauses.size() * kTails.size()) {
    out += " " + std::to_string(k);
  }
  out += ". And then some more text follows";
  return out;
}

GenerationResponse StubGenerator::generate(const GenerationRequest& request) {
  request.validate();
  GenerationResponse resp;
  resp.model_id = options_.model_id;
  for (int i = 0; i < request.n; ++i) {
    if (options_.echo) {
      resp.continuations.push_back(*options_.echo);
    } else {
      resp.continuations.push_back(stub_continuation(
          request.prompt, static_cast<std::size_t>(i) % options_.distinct));
    }
  }
  return resp;
}

std::string export_prompts(std::span<const PromptPlan> plans) {
  std::string out;
  for (const auto& p : plans) {
    ojson j;
    j["id"] = p.id;
    j["prompt"] = p.prompt;
    j["n"] = p.n;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<PromptPlan> parse_prompts(std::string_view content) {
  std::vector<PromptPlan> out;
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(content)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      out.push_back({j.at("id").get<std::uint64_t>(),
                     j.at("prompt").get<std::string>(), j.at("n").get<int>()});
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("prompts line " + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  return out;
}

ImportResult import_continuations(std::string_view content,
                                  std::span<const PromptPlan> plans) {
  std::map<std::uint64_t, const PromptPlan*> by_id;
  for (const auto& p : plans) by_id[p.id] = &p;

  ImportResult result;
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(content)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto where = "continuations line " + std::to_string(line_no) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(where + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_number_unsigned()) {
      throw ValidationError(where + "missing numeric \"id\"");
    }
    auto id = j["id"].get<std::uint64_t>();
    auto plan = by_id.find(id);
    if (plan == by_id.end()) {
      throw ValidationError(where + "unknown id " + std::to_string(id));
    }
    if (result.responses.count(id)) {
      throw ValidationError(where + "duplicate id " + std::to_string(id));
    }
    GenerationRequest req;
    req.prompt = plan->second->prompt;
    req.n = plan->second->n;
    nlohmann::json body = j;
    body.erase("id");
    if (!body.contains("model_id")) body["model_id"] = "offline";
    try {
      result.responses[id] = parse_response(body.dump(), req);
    } catch (const SchemaError& e) {
      throw ValidationError(where + e.what());
    }
  }
  for (const auto& p : plans) {
    if (!result.responses.count(p.id)) result.missing.push_back(p.id);
  }
  return result;
}

}  // namespace fcgen::gen
