#pragma once

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <string>

#include "logicl/llm.hpp"

namespace logicl {

struct HttpCompletionConfig {
  std::string url;  // e.g. https://api.openai.com/v1/completions
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double max_requests_per_second = 0.0;  // 0 = unthrottled
  std::size_t max_in_flight = 4;
};

/// Completion-style HTTP client: POSTs {model, prompt, max_tokens,
/// temperature, stop} with bearer auth and returns the first choice's text.
/// Transport errors and 408/429/5xx are retried with exponential backoff; a
/// context-length rejection raises Errc::prompt_too_long (the pipeline reacts
/// by shedding examples); anything that survives the retries raises
/// Errc::backend_unavailable. Concurrent callers share the configured
/// request-rate ceiling and in-flight bound.
class HttpCompletionBackend final : public CompletionBackend {
 public:
  explicit HttpCompletionBackend(HttpCompletionConfig config);

  std::string backend_id() const override;
  std::string complete(const CompletionRequest& request) override;

 private:
  class FlightSlot;
  void pace();

  HttpCompletionConfig config_;
  std::string base_url_;
  std::string path_;
  std::string api_key_;
  std::mutex gate_mutex_;
  std::condition_variable gate_cv_;
  std::size_t in_flight_ = 0;
  std::chrono::steady_clock::time_point next_request_slot_{};
};

}  // namespace logicl
