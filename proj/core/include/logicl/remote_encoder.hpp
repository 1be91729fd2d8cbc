#pragma once

#include <chrono>
#include <mutex>
#include <string>

#include "logicl/embedding.hpp"

namespace logicl {

struct RemoteEncoderConfig {
  std::string url;  // full endpoint, e.g. https://api.openai.com/v1/embeddings
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  std::size_t batch_size = 64;  // applied by Embedder when chunking requests
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
};

/// JSON-over-HTTP encoder client. POSTs {"model": ..., "input": [texts]} with
/// bearer auth and accepts either a bare array of float arrays or an object
/// with a "data" list of {index, embedding} entries. Vectors are normalized
/// on arrival. Transient failures (transport errors, 408/429/5xx) are retried
/// with exponential backoff; exhaustion or a malformed response raises
/// Errc::encoder_unavailable.
class RemoteHttpEncoder final : public EncoderBackend {
 public:
  /// Reads the API key from the configured environment variable; a missing
  /// key or an unparseable URL is Errc::config_error.
  explicit RemoteHttpEncoder(RemoteEncoderConfig config);

  std::string backend_id() const override;
  std::size_t dimension() const override;
  std::vector<EmbeddingVector> encode(std::span<const std::string> texts) override;

 private:
  RemoteEncoderConfig config_;
  std::string base_url_;
  std::string path_;
  std::string api_key_;
  mutable std::mutex mutex_;
  std::size_t dimension_ = 0;  // learned from the first response
};

}  // namespace logicl
