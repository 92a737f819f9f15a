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

#include "fcgen/config.hpp"

#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>

#include "fcgen/text.hpp"

namespace fcgen {
namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  auto s = text::trim(v);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("config " + std::string(key) + ": not a number: \"" +
                          std::string(v) + "\"");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view v) {
  std::string s(text::trim(v));
  char* end = nullptr;
  double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ValidationError("config " + std::string(key) + ": not a number: \"" +
                          s + "\"");
  }
  return d;
}

bool parse_bool(std::string_view key, std::string_view v) {
  auto s = text::lowercase(text::trim(v));
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ValidationError("config " + std::string(key) + ": not a boolean: \"" +
                        std::string(v) + "\"");
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view)>;

template <typename T>
Setter path_field(std::optional<std::filesystem::path> RunConfig::*field) {
  return [field](RunConfig& c, std::string_view, std::string_view v) {
    if (v.empty()) {
      (c.*field).reset();
    } else {
      c.*field = std::filesystem::path(std::string(v));
    }
  };
}

template <typename T, typename M>
Setter number_field(M RunConfig::*field) {
  return [field](RunConfig& c, std::string_view k, std::string_view v) {
    c.*field = parse_number<T>(k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  using P = std::optional<std::filesystem::path>;
  static const std::map<std::string, Setter, std::less<>> table = {
      {"train", path_field<P>(&RunConfig::train)},
      {"dev", path_field<P>(&RunConfig::dev)},
      {"test", path_field<P>(&RunConfig::test)},
      {"conllu", path_field<P>(&RunConfig::conllu)},
      {"augmented", path_field<P>(&RunConfig::augmented)},
      {"lexicon", path_field<P>(&RunConfig::lexicon)},
      {"continuations", path_field<P>(&RunConfig::continuations)},
      {"generated", path_field<P>(&RunConfig::generated)},
      {"outputs", path_field<P>(&RunConfig::outputs)},
      {"labels", path_field<P>(&RunConfig::labels)},
      {"hyp", path_field<P>(&RunConfig::hyp)},
      {"ref", path_field<P>(&RunConfig::ref)},
      {"out_dir",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v.empty()) throw ValidationError("config " + std::string(k) + ": empty");
         c.out_dir = std::string(v);
       }},
      {"span_convention",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v.empty() || v == "auto") {
           c.span_convention.reset();
           return;
         }
         auto conv = corpus::parse_convention(v);
         if (!conv) {
           throw ValidationError("config " + std::string(k) +
                                 ": expected auto, zero-based-exclusive or "
                                 "one-based-inclusive");
         }
         c.span_convention = conv;
       }},
      {"endpoint",
       [](RunConfig& c, std::string_view, std::string_view v) { c.endpoint = v; }},
      {"max_new_tokens", number_field<int>(&RunConfig::max_new_tokens)},
      {"temperature",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.temperature = parse_double(k, v);
       }},
      {"seed", number_field<std::int64_t>(&RunConfig::seed)},
      {"timeout_s", number_field<int>(&RunConfig::timeout_s)},
      {"parallelism", number_field<int>(&RunConfig::parallelism)},
      {"retries", number_field<int>(&RunConfig::retries)},
      {"stub_generator",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.stub_generator = parse_bool(k, v);
       }},
      {"stub_distinct", number_field<std::size_t>(&RunConfig::stub_distinct)},
      {"stub_echo",
       [](RunConfig& c, std::string_view, std::string_view v) {
         if (v.empty()) {
           c.stub_echo.reset();
         } else {
           c.stub_echo = std::string(v);
         }
       }},
      {"group_skip", number_field<std::size_t>(&RunConfig::group_skip)},
      {"per_sample_min", number_field<std::size_t>(&RunConfig::per_sample_min)},
      {"per_sample_max", number_field<std::size_t>(&RunConfig::per_sample_max)},
      {"topup_rounds", number_field<std::size_t>(&RunConfig::topup_rounds)},
      {"shuffle_seed", number_field<std::uint64_t>(&RunConfig::shuffle_seed)},
      {"epochs",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v.empty()) {
           c.epochs.reset();
         } else {
           c.epochs = parse_number<int>(k, v);
         }
       }},
      {"eval_every_steps",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v.empty()) {
           c.eval_every_steps.reset();
         } else {
           c.eval_every_steps = parse_number<int>(k, v);
         }
       }},
      {"sample_id",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v.empty()) {
           c.sample_id.reset();
         } else {
           c.sample_id = parse_number<std::uint64_t>(k, v);
         }
       }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& [name, setter] : setters()) out.push_back(name);
    return out;
  }();
  return k;
}

void RunConfig::set(std::string_view key, std::string_view value) {
  auto it = setters().find(key);
  if (it == setters().end()) {
    throw ValidationError("unknown config key \"" + std::string(key) + "\"");
  }
  it->second(*this, key, value);
}

void RunConfig::merge_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (value.is_null()) {
      set(key, "");
    } else if (value.is_string()) {
      set(key, value.get<std::string>());
    } else if (value.is_number() || value.is_boolean()) {
      set(key, value.dump());
    } else {
      throw ValidationError("config " + key + ": expected a scalar value");
    }
  }
}

void RunConfig::load_file(const std::filesystem::path& path) {
  auto content = text::read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
  merge_json(j);
}

void RunConfig::apply_environment() {
  if (!endpoint.empty()) return;
  if (const char* env = std::getenv(std::string(kEndpointEnvVar).c_str())) {
    endpoint = env;
  }
}

void RunConfig::validate() const {
  if (group_skip == 0) throw ValidationError("group_skip must be positive");
  if (per_sample_min == 0 || per_sample_max == 0) {
    throw ValidationError("per-sample thresholds must be positive");
  }
  if (per_sample_min > per_sample_max) {
    throw ValidationError("per_sample_min must not exceed per_sample_max");
  }
  if (max_new_tokens < 1) throw ValidationError("max_new_tokens must be positive");
  if (!(temperature >= 0.0)) throw ValidationError("temperature must be >= 0");
  if (timeout_s < 1) throw ValidationError("timeout_s must be positive");
  if (parallelism < 1) throw ValidationError("parallelism must be positive");
  if (retries < 0) throw ValidationError("retries must be >= 0");
  if (stub_distinct == 0) throw ValidationError("stub_distinct must be positive");
  for (const auto* p : {&train, &dev, &test, &conllu, &augmented, &lexicon,
                        &continuations, &generated, &outputs, &labels, &hyp,
                        &ref}) {
    if (*p && !std::filesystem::exists(**p)) {
      throw ValidationError("input does not exist: " + (*p)->string());
    }
  }
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  auto path = [](const std::optional<std::filesystem::path>& p) {
    return p ? nlohmann::ordered_json(p->string()) : nlohmann::ordered_json(nullptr);
  };
  j["train"] = path(train);
  j["dev"] = path(dev);
  j["test"] = path(test);
  j["conllu"] = path(conllu);
  j["augmented"] = path(augmented);
  j["lexicon"] = path(lexicon);
  j["continuations"] = path(continuations);
  j["generated"] = path(generated);
  j["outputs"] = path(outputs);
  j["labels"] = path(labels);
  j["hyp"] = path(hyp);
  j["ref"] = path(ref);
  j["out_dir"] = out_dir.string();
  j["span_convention"] =
      span_convention ? std::string(corpus::to_string(*span_convention)) : "auto";
  j["endpoint"] = endpoint;
  j["max_new_tokens"] = max_new_tokens;
  j["temperature"] = temperature;
  j["seed"] = seed;
  j["timeout_s"] = timeout_s;
  j["parallelism"] = parallelism;
  j["retries"] = retries;
  j["stub_generator"] = stub_generator;
  j["stub_distinct"] = stub_distinct;
  j["stub_echo"] = stub_echo ? nlohmann::ordered_json(*stub_echo)
                             : nlohmann::ordered_json(nullptr);
  j["group_skip"] = group_skip;
  j["per_sample_min"] = per_sample_min;
  j["per_sample_max"] = per_sample_max;
  j["topup_rounds"] = topup_rounds;
  j["shuffle_seed"] = shuffle_seed;
  j["epochs"] = epochs ? nlohmann::ordered_json(*epochs) : nlohmann::ordered_json(nullptr);
  j["eval_every_steps"] = eval_every_steps ? nlohmann::ordered_json(*eval_every_steps)
                                           : nlohmann::ordered_json(nullptr);
  j["sample_id"] = sample_id ? nlohmann::ordered_json(*sample_id)
                             : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace fcgen
