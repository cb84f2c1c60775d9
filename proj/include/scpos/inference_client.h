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

#ifndef SCPOS_INFERENCE_CLIENT_H_
#define SCPOS_INFERENCE_CLIENT_H_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>

#include "json.hpp"

namespace scpos {

struct GenerationParams {
  int max_new_tokens = 2000;
  double repetition_penalty = 1.3;
  double temperature = 1.0;
  double top_p = 0.7;
  int top_k = 40;

  // Error message when max_new_tokens < 1, top_p outside (0, 1], top_k < 0,
  // or temperature / repetition_penalty negative.
  std::optional<std::string> Validate() const;

  nlohmann::ordered_json ToJson() const;

  friend bool operator==(const GenerationParams&,
                         const GenerationParams&) = default;
};

// "usa7b": (2000, 1.3, 1.0, 0.7, 40). "short_output": the same with
// max_new_tokens = 400. Throws ValidationError on other names.
GenerationParams Profile(std::string_view name);

struct InferenceResult {
  std::string prompt_hash;  // cache key
  std::string completion;
  double latency_ms = 0;
  int attempt_count = 0;  // >= 1 unless from_cache
  bool from_cache = false;
};

// Anything that turns a prompt into text. `variant` distinguishes repeated
// samples of the same prompt (e.g. evaluation runs); 0 is the plain call.
class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual InferenceResult Generate(const std::string& prompt,
                                   const GenerationParams& params,
                                   int variant = 0) = 0;
};

enum class WireAdapter {
  // POST {"model", "messages":[{"role":"user","content"}], "max_tokens",
  // "temperature", "top_p", ...}; reads choices[0].message.content.
  kOpenAiChat,
  // POST {"model", "prompt", "max_new_tokens", ...}; reads "completion",
  // "generated_text" or "text" (also inside a one-element array).
  kRawCompletion,
};

std::string_view ToString(WireAdapter a);
std::optional<WireAdapter> ParseWireAdapter(std::string_view s);

struct EndpointConfig {
  std::string url;  // scheme://host[:port]/path
  std::string api_key;
  std::string model_id = "default";
  WireAdapter adapter = WireAdapter::kOpenAiChat;
  // Sends top_k and repetition_penalty, which vLLM/TGI-style servers accept
  // but the hosted OpenAI API rejects.
  bool extended_sampling = true;
  int max_retries = 4;  // retries after the first attempt
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{16000};
  std::chrono::milliseconds timeout{120000};
  size_t max_in_flight = 4;
  std::chrono::milliseconds min_interval{0};  // between request starts

  // url from SCPOS_ENDPOINT, api_key from SCPOS_API_KEY.
  static EndpointConfig FromEnvironment();
};

// Builds the request body an adapter sends.
nlohmann::ordered_json BuildRequestBody(const EndpointConfig& endpoint,
                                        const std::string& prompt,
                                        const GenerationParams& params);

// Extracts the completion; throws EndpointError on a malformed body.
std::string ParseResponseBody(WireAdapter adapter, std::string_view body);

// Cache key: SHA-256 over (prompt, params, model_id[, variant]).
std::string CacheKey(const std::string& prompt, const GenerationParams& params,
                     const std::string& model_id, int variant = 0);

// Content-addressed directory of {request, completion, meta} JSON files at
// <dir>/<key[0:2]>/<key>.json. meta.checksum is the SHA-256 of the
// completion; entries that fail to parse or verify are misses.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  struct Entry {
    std::string completion;
    nlohmann::json meta;
  };

  std::optional<Entry> Lookup(const std::string& key) const;

  // Atomic write (temp file + rename). Throws IoError on failure.
  void Store(const std::string& key, const nlohmann::ordered_json& request,
             const std::string& completion, nlohmann::ordered_json meta);

  std::filesystem::path PathFor(const std::string& key) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::mutex write_mu_;
};

// HTTP client with a response cache, exponential-backoff retries on
// connection failures and 408/429/5xx, a cap on in-flight requests, and a
// minimum interval between request starts. Shareable across threads.
//
// In offline mode no request is sent and a cache miss is an EndpointError;
// this is how evaluations replay from a cache.
class InferenceClient : public TextGenerator {
 public:
  InferenceClient(EndpointConfig endpoint,
                  std::optional<std::filesystem::path> cache_dir,
                  bool offline = false);

  InferenceResult Generate(const std::string& prompt,
                           const GenerationParams& params,
                           int variant = 0) override;

  const EndpointConfig& endpoint() const { return endpoint_; }
  size_t requests_sent() const { return requests_sent_.load(); }
  size_t cache_hits() const { return cache_hits_.load(); }

 private:
  std::string Post(const std::string& body, int* attempts);
  void WaitForSlot();

  EndpointConfig endpoint_;
  std::unique_ptr<ResponseCache> cache_;
  bool offline_;
  std::counting_semaphore<1024> in_flight_;
  std::mutex rate_mu_;
  std::chrono::steady_clock::time_point next_start_;
  std::atomic<size_t> requests_sent_{0};
  std::atomic<size_t> cache_hits_{0};
};

}  // namespace scpos

#endif  // SCPOS_INFERENCE_CLIENT_H_
