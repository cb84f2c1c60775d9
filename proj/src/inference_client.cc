// Copyright 2026 The SCPOS Toolkit Authors.
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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "scpos/inference_client.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "scpos/error.h"
#include "scpos/hash.h"

namespace scpos {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct ParsedUrl {
  std::string scheme_host_port;
  std::string path;
};

ParsedUrl ParseUrl(const std::string& url) {
  static const std::regex kUrl(R"(^(https?)://([^/:]+)(:[0-9]+)?(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, kUrl)) {
    throw ValidationError("invalid endpoint URL '" + url + "'");
  }
  ParsedUrl parsed;
  parsed.scheme_host_port = m[1].str() + "://" + m[2].str() + m[3].str();
  parsed.path = m[4].matched ? m[4].str() : "/";
  return parsed;
}

bool IsRetryableStatus(int status) {
  return status == 408 || status == 429 || status >= 500;
}

std::string Dump(const ordered_json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace

std::optional<std::string> GenerationParams::Validate() const {
  if (max_new_tokens < 1) return "max_new_tokens must be >= 1";
  if (!(top_p > 0.0 && top_p <= 1.0)) return "top_p must lie in (0, 1]";
  if (top_k < 0) return "top_k must be >= 0";
  if (temperature < 0.0) return "temperature must be >= 0";
  if (repetition_penalty < 0.0) return "repetition_penalty must be >= 0";
  return std::nullopt;
}

ordered_json GenerationParams::ToJson() const {
  ordered_json j;
  j["max_new_tokens"] = max_new_tokens;
  j["repetition_penalty"] = repetition_penalty;
  j["temperature"] = temperature;
  j["top_p"] = top_p;
  j["top_k"] = top_k;
  return j;
}

GenerationParams Profile(std::string_view name) {
  GenerationParams usa7b{2000, 1.3, 1.0, 0.7, 40};
  if (name == "usa7b") return usa7b;
  if (name == "short_output") {
    usa7b.max_new_tokens = 400;
    return usa7b;
  }
  throw ValidationError("unknown generation profile '" + std::string(name) +
                        "' (expected usa7b or short_output)");
}

std::string_view ToString(WireAdapter a) {
  return a == WireAdapter::kOpenAiChat ? "openai_chat" : "raw";
}

std::optional<WireAdapter> ParseWireAdapter(std::string_view s) {
  if (s == "openai_chat") return WireAdapter::kOpenAiChat;
  if (s == "raw") return WireAdapter::kRawCompletion;
  return std::nullopt;
}

EndpointConfig EndpointConfig::FromEnvironment() {
  EndpointConfig config;
  if (const char* url = std::getenv("SCPOS_ENDPOINT")) config.url = url;
  if (const char* key = std::getenv("SCPOS_API_KEY")) config.api_key = key;
  return config;
}

ordered_json BuildRequestBody(const EndpointConfig& endpoint,
                              const std::string& prompt,
                              const GenerationParams& params) {
  ordered_json body;
  body["model"] = endpoint.model_id;
  if (endpoint.adapter == WireAdapter::kOpenAiChat) {
    body["messages"] =
        ordered_json::array({{{"role", "user"}, {"content", prompt}}});
    body["max_tokens"] = params.max_new_tokens;
  } else {
    body["prompt"] = prompt;
    body["max_new_tokens"] = params.max_new_tokens;
  }
  body["temperature"] = params.temperature;
  body["top_p"] = params.top_p;
  if (endpoint.extended_sampling || endpoint.adapter == WireAdapter::kRawCompletion) {
    body["top_k"] = params.top_k;
    body["repetition_penalty"] = params.repetition_penalty;
  }
  return body;
}

std::string ParseResponseBody(WireAdapter adapter, std::string_view body) {
  json j = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw EndpointError("malformed response body: not JSON");
  }
  if (adapter == WireAdapter::kOpenAiChat) {
    if (j.is_object() && j.contains("choices") && j["choices"].is_array() &&
        !j["choices"].empty()) {
      const json& choice = j["choices"][0];
      if (choice.contains("message") && choice["message"].is_object() &&
          choice["message"].contains("content") &&
          choice["message"]["content"].is_string()) {
        return choice["message"]["content"].get<std::string>();
      }
      if (choice.contains("text") && choice["text"].is_string()) {
        return choice["text"].get<std::string>();
      }
    }
    throw EndpointError(
        "malformed response body: missing choices[0].message.content");
  }
  const json* obj = &j;
  if (j.is_array() && j.size() == 1) obj = &j[0];
  if (obj->is_object()) {
    for (const char* key : {"completion", "generated_text", "text"}) {
      if (obj->contains(key) && (*obj)[key].is_string()) {
        return (*obj)[key].get<std::string>();
      }
    }
  }
  throw EndpointError("malformed response body: no completion field");
}

std::string CacheKey(const std::string& prompt, const GenerationParams& params,
                     const std::string& model_id, int variant) {
  ordered_json material;
  material["prompt"] = prompt;
  material["params"] = params.ToJson();
  material["model_id"] = model_id;
  if (variant != 0) material["variant"] = variant;
  return Sha256Hex(Dump(material));
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory " + dir_.string());
}

std::filesystem::path ResponseCache::PathFor(const std::string& key) const {
  return dir_ / key.substr(0, 2) / (key + ".json");
}

std::optional<ResponseCache::Entry> ResponseCache::Lookup(
    const std::string& key) const {
  std::ifstream in(PathFor(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j = json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object() || !j.contains("completion") ||
      !j["completion"].is_string() || !j.contains("meta") ||
      !j["meta"].is_object()) {
    return std::nullopt;
  }
  Entry entry{j["completion"].get<std::string>(), j["meta"]};
  const json& checksum = entry.meta["checksum"];
  if (!checksum.is_string() ||
      checksum.get<std::string>() != Sha256Hex(entry.completion)) {
    return std::nullopt;
  }
  if (entry.meta.contains("key") && entry.meta["key"] != key) {
    return std::nullopt;
  }
  return entry;
}

void ResponseCache::Store(const std::string& key, const ordered_json& request,
                          const std::string& completion, ordered_json meta) {
  meta["key"] = key;
  meta["checksum"] = Sha256Hex(completion);
  ordered_json j;
  j["request"] = request;
  j["completion"] = completion;
  j["meta"] = std::move(meta);
  const std::string contents = j.dump(2, ' ', false, json::error_handler_t::replace);

  std::lock_guard<std::mutex> lock(write_mu_);
  const std::filesystem::path path = PathFor(key);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    if (!out) throw IoError("cannot write cache entry " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot commit cache entry " + path.string());
}

InferenceClient::InferenceClient(EndpointConfig endpoint,
                                 std::optional<std::filesystem::path> cache_dir,
                                 bool offline)
    : endpoint_(std::move(endpoint)),
      offline_(offline),
      in_flight_(static_cast<std::ptrdiff_t>(
          std::clamp<size_t>(endpoint_.max_in_flight, 1, 1024))),
      next_start_(Clock::now()) {
  if (cache_dir) cache_ = std::make_unique<ResponseCache>(*cache_dir);
  if (offline_ && !cache_) {
    throw ValidationError("offline replay requires a cache directory");
  }
  if (!offline_) ParseUrl(endpoint_.url);
}

void InferenceClient::WaitForSlot() {
  if (endpoint_.min_interval.count() <= 0) return;
  Clock::time_point start;
  {
    std::lock_guard<std::mutex> lock(rate_mu_);
    start = std::max(Clock::now(), next_start_);
    next_start_ = start + endpoint_.min_interval;
  }
  std::this_thread::sleep_until(start);
}

std::string InferenceClient::Post(const std::string& body, int* attempts) {
  const ParsedUrl url = ParseUrl(endpoint_.url);
  httplib::Client http(url.scheme_host_port);
  http.set_connection_timeout(endpoint_.timeout);
  http.set_read_timeout(endpoint_.timeout);
  http.set_write_timeout(endpoint_.timeout);
  httplib::Headers headers;
  if (!endpoint_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + endpoint_.api_key);
  }

  std::string last_error;
  auto backoff = endpoint_.initial_backoff;
  const int max_attempts = 1 + std::max(0, endpoint_.max_retries);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    *attempts = attempt;
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff = std::min(backoff * 2, endpoint_.max_backoff);
    }
    WaitForSlot();
    in_flight_.acquire();
    httplib::Result res = http.Post(url.path, headers, body, "application/json");
    in_flight_.release();
    ++requests_sent_;
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return res->body;
    last_error = "HTTP " + std::to_string(res->status);
    if (!IsRetryableStatus(res->status)) {
      throw EndpointError("non-retryable response from " + endpoint_.url +
                              ": " + last_error,
                          attempt);
    }
  }
  throw EndpointError("exhausted " + std::to_string(max_attempts) +
                          " attempts against " + endpoint_.url + ": " +
                          last_error,
                      max_attempts);
}

InferenceResult InferenceClient::Generate(const std::string& prompt,
                                          const GenerationParams& params,
                                          int variant) {
  if (auto err = params.Validate()) throw ValidationError(*err);
  InferenceResult result;
  result.prompt_hash = CacheKey(prompt, params, endpoint_.model_id, variant);
  if (cache_) {
    if (auto hit = cache_->Lookup(result.prompt_hash)) {
      ++cache_hits_;
      result.completion = std::move(hit->completion);
      result.from_cache = true;
      result.attempt_count = 0;
      if (hit->meta.contains("latency_ms") && hit->meta["latency_ms"].is_number()) {
        result.latency_ms = hit->meta["latency_ms"].get<double>();
      }
      return result;
    }
  }
  if (offline_) {
    throw EndpointError("replay cache miss for key " + result.prompt_hash);
  }
  const ordered_json request = BuildRequestBody(endpoint_, prompt, params);
  const auto start = Clock::now();
  int attempts = 0;
  const std::string body = Post(Dump(request), &attempts);
  result.completion = ParseResponseBody(endpoint_.adapter, body);
  result.latency_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  result.attempt_count = attempts;
  if (cache_) {
    ordered_json meta;
    meta["model_id"] = endpoint_.model_id;
    meta["variant"] = variant;
    meta["latency_ms"] = result.latency_ms;
    meta["attempts"] = attempts;
    cache_->Store(result.prompt_hash, request, result.completion, std::move(meta));
  }
  return result;
}

}  // namespace scpos
