#include "logicl/http_completion.hpp"

#include <algorithm>
#include <cctype>
#include <thread>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "logicl/errors.hpp"
#include "net_util.hpp"

namespace logicl {

namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

/// Services report prompt-budget overflow as a 4xx whose body names the
/// context limit; there is no reliable structured code across providers.
bool looks_like_context_overflow(int status, const std::string& body) {
  if (status != 400 && status != 413) return false;
  const std::string lower = lowercase(body);
  return lower.find("context_length_exceeded") != std::string::npos ||
         lower.find("context length") != std::string::npos ||
         lower.find("maximum context") != std::string::npos ||
         lower.find("too long") != std::string::npos;
}

}  // namespace

/// RAII guard for the in-flight bound.
class HttpCompletionBackend::FlightSlot {
 public:
  explicit FlightSlot(HttpCompletionBackend& owner) : owner_(owner) {
    std::unique_lock lock(owner_.gate_mutex_);
    owner_.gate_cv_.wait(lock, [&] { return owner_.in_flight_ < owner_.config_.max_in_flight; });
    ++owner_.in_flight_;
  }
  ~FlightSlot() {
    {
      std::lock_guard lock(owner_.gate_mutex_);
      --owner_.in_flight_;
    }
    owner_.gate_cv_.notify_one();
  }
  FlightSlot(const FlightSlot&) = delete;
  FlightSlot& operator=(const FlightSlot&) = delete;

 private:
  HttpCompletionBackend& owner_;
};

HttpCompletionBackend::HttpCompletionBackend(HttpCompletionConfig config)
    : config_(std::move(config)) {
  if (config_.model.empty()) raise(Errc::config_error, "completion backend needs a model name");
  if (config_.max_in_flight == 0) config_.max_in_flight = 1;
  if (config_.max_attempts < 1) config_.max_attempts = 1;
  split_url(config_.url, base_url_, path_);
  api_key_ = read_api_key(config_.api_key_env);
}

std::string HttpCompletionBackend::backend_id() const {
  return "remote-completions:" + config_.model;
}

void HttpCompletionBackend::pace() {
  if (config_.max_requests_per_second <= 0.0) return;
  const auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / config_.max_requests_per_second));
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(gate_mutex_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_request_slot_);
    next_request_slot_ = slot + interval;
  }
  std::this_thread::sleep_until(slot);
}

std::string HttpCompletionBackend::complete(const CompletionRequest& request) {
  if (request.prompt.empty()) raise(Errc::config_error, "refusing to send an empty prompt");
  if (request.max_tokens < 1) raise(Errc::config_error, "max_tokens must be at least 1");
  if (request.temperature < 0.0) raise(Errc::config_error, "temperature must be non-negative");

  FlightSlot slot(*this);

  nlohmann::json body{{"model", request.model_id.empty() ? config_.model : request.model_id},
                      {"prompt", request.prompt},
                      {"max_tokens", request.max_tokens},
                      {"temperature", request.temperature}};
  if (!request.stop.empty()) body["stop"] = request.stop;
  const std::string payload = body.dump();
  httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};

  std::string last_failure;
  auto backoff = config_.initial_backoff;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    pace();
    httplib::Client client(base_url_);
    client.set_connection_timeout(30);
    client.set_read_timeout(300);
    auto res = client.Post(path_, headers, payload, "application/json");
    if (res && res->status == 200) {
      auto parsed = nlohmann::json::parse(res->body, nullptr, /*allow_exceptions=*/false);
      if (parsed.is_discarded() || !parsed.contains("choices") || !parsed["choices"].is_array() ||
          parsed["choices"].empty() || !parsed["choices"][0].contains("text")) {
        raise(Errc::backend_unavailable, "unexpected completion response shape");
      }
      return parsed["choices"][0]["text"].get<std::string>();
    }
    if (res && looks_like_context_overflow(res->status, res->body)) {
      raise(Errc::prompt_too_long, "service rejected the prompt: " + res->body);
    }
    if (res && !transient_http_status(res->status)) {
      raise(Errc::backend_unavailable, "completion endpoint returned status " +
                                           std::to_string(res->status) + ": " + res->body);
    }
    last_failure = res ? "status " + std::to_string(res->status)
                       : "transport error " + httplib::to_string(res.error());
    if (attempt < config_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  raise(Errc::backend_unavailable, "completion request failed after " +
                                       std::to_string(config_.max_attempts) + " attempts (" +
                                       last_failure + ")");
}

}  // namespace logicl
