#include "logicl/remote_encoder.hpp"

#include <cstdlib>
#include <thread>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "logicl/errors.hpp"
#include "net_util.hpp"

namespace logicl {

RemoteHttpEncoder::RemoteHttpEncoder(RemoteEncoderConfig config) : config_(std::move(config)) {
  if (config_.model.empty()) raise(Errc::config_error, "remote encoder needs a model name");
  split_url(config_.url, base_url_, path_);
  api_key_ = read_api_key(config_.api_key_env);
  if (config_.max_attempts < 1) config_.max_attempts = 1;
}

std::string RemoteHttpEncoder::backend_id() const {
  return "remote-embeddings:" + config_.model;
}

std::size_t RemoteHttpEncoder::dimension() const {
  std::lock_guard lock(mutex_);
  return dimension_;
}

std::vector<EmbeddingVector> RemoteHttpEncoder::encode(std::span<const std::string> texts) {
  if (texts.empty()) return {};

  nlohmann::json body{{"model", config_.model}, {"input", texts}};
  const std::string payload = body.dump();
  httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};

  std::string response_body;
  std::string last_failure;
  bool got_response = false;
  auto backoff = config_.initial_backoff;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    httplib::Client client(base_url_);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    auto res = client.Post(path_, headers, payload, "application/json");
    if (res && res->status == 200) {
      response_body = res->body;
      got_response = true;
      break;
    }
    if (res && !transient_http_status(res->status)) {
      raise(Errc::encoder_unavailable, "embedding endpoint returned status " +
                                           std::to_string(res->status) + ": " + res->body);
    }
    last_failure = res ? "status " + std::to_string(res->status)
                       : "transport error " + httplib::to_string(res.error());
    if (attempt < config_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  if (!got_response) {
    raise(Errc::encoder_unavailable,
          "embedding request failed after " + std::to_string(config_.max_attempts) +
              " attempts (" + last_failure + ")");
  }

  auto parsed = nlohmann::json::parse(response_body, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    raise(Errc::encoder_unavailable, "embedding response is not valid JSON");
  }

  // Either a bare list of float arrays, or {"data": [{index, embedding}...]}.
  nlohmann::json rows;
  if (parsed.is_array()) {
    rows = std::move(parsed);
  } else if (parsed.is_object() && parsed.contains("data") && parsed["data"].is_array()) {
    rows = nlohmann::json::array();
    rows.get_ref<nlohmann::json::array_t&>().resize(parsed["data"].size());
    std::size_t fallback_index = 0;
    for (auto& entry : parsed["data"]) {
      const std::size_t index = entry.value("index", fallback_index);
      if (index >= rows.size()) {
        raise(Errc::encoder_unavailable, "embedding response index out of range");
      }
      rows[index] = entry.contains("embedding") ? entry["embedding"] : entry;
      ++fallback_index;
    }
  } else {
    raise(Errc::encoder_unavailable, "unexpected embedding response shape");
  }

  if (rows.size() != texts.size()) {
    raise(Errc::encoder_unavailable, "embedding response has " + std::to_string(rows.size()) +
                                         " rows for " + std::to_string(texts.size()) + " inputs");
  }

  std::vector<EmbeddingVector> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array() || row.empty()) {
      raise(Errc::encoder_unavailable, "embedding response row is not a float array");
    }
    out.push_back(EmbeddingVector::normalized(row.get<std::vector<double>>()));
  }

  std::lock_guard lock(mutex_);
  for (const auto& vec : out) {
    if (dimension_ == 0) {
      dimension_ = vec.dimension();
    } else if (vec.dimension() != dimension_) {
      raise(Errc::dimension_mismatch,
            "embedding dimension changed from " + std::to_string(dimension_) + " to " +
                std::to_string(vec.dimension()));
    }
  }
  return out;
}

}  // namespace logicl
