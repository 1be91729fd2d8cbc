#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "logicl/embedding.hpp"

namespace logicl {

/// Keyed store of (backend_id, content digest) -> vector. A hit returns the
/// vector bit-identical to what was first stored. The persistent layout is
/// line-delimited JSON behind a version-header line; records are appended and
/// flushed as they arrive, and loading tolerates a truncated final line so an
/// interrupted run can resume from its own cache. Writes are serialized
/// internally; safe for concurrent use.
class EmbeddingCache {
 public:
  static constexpr int kFormatVersion = 1;

  /// In-memory only.
  EmbeddingCache();

  /// Backed by `file`: existing records are loaded, new ones appended.
  explicit EmbeddingCache(const std::filesystem::path& file);

  std::optional<EmbeddingVector> find(std::string_view backend_id, std::string_view text) const;

  /// First write wins; storing the same key again is a no-op.
  void store(std::string_view backend_id, std::string_view text, const EmbeddingVector& vector);

  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, EmbeddingVector> entries_;
  std::filesystem::path file_;
  std::ofstream appender_;
};

/// Embeds texts through a backend, consulting and populating the cache, with
/// misses encoded in batches of at most `batch_size` texts per backend call.
class Embedder {
 public:
  explicit Embedder(std::shared_ptr<EncoderBackend> backend,
                    std::shared_ptr<EmbeddingCache> cache = nullptr,
                    std::size_t batch_size = 64);

  /// Throws Errc::encoder_unavailable for empty text.
  EmbeddingVector embed(std::string_view text) const;

  std::vector<EmbeddingVector> embed_all(std::span<const std::string> texts) const;

  EncoderBackend& backend() const { return *backend_; }

 private:
  std::shared_ptr<EncoderBackend> backend_;
  std::shared_ptr<EmbeddingCache> cache_;
  std::size_t batch_size_;
};

}  // namespace logicl
