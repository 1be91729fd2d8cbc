#include "logicl/embedding_cache.hpp"

#include <utility>
#include <vector>

#include <json.hpp>

#include "logicl/errors.hpp"
#include "logicl/stable_hash.hpp"

namespace logicl {

namespace {

constexpr std::string_view kFormatName = "logicl-embedding-cache";

std::string cache_key(std::string_view backend_id, std::string_view digest) {
  std::string key;
  key.reserve(backend_id.size() + digest.size() + 1);
  key.append(backend_id);
  key.push_back('\n');
  key.append(digest);
  return key;
}

}  // namespace

EmbeddingCache::EmbeddingCache() = default;

EmbeddingCache::EmbeddingCache(const std::filesystem::path& file) : file_(file) {
  bool have_header = false;
  if (std::ifstream in(file_); in) {
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto record = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
      if (record.is_discarded()) {
        if (first) {
          raise(Errc::config_error, "corrupt embedding cache header in " + file_.string());
        }
        break;  // truncated tail of an interrupted run; records after it are lost
      }
      if (first) {
        first = false;
        if (record.value("format", "") != kFormatName ||
            record.value("version", 0) != kFormatVersion) {
          raise(Errc::config_error, "unsupported embedding cache format in " + file_.string());
        }
        have_header = true;
        continue;
      }
      if (!record.contains("backend") || !record.contains("content_hash") ||
          !record.contains("values")) {
        break;
      }
      auto values = record["values"].get<std::vector<double>>();
      entries_.try_emplace(
          cache_key(record["backend"].get<std::string>(),
                    record["content_hash"].get<std::string>()),
          EmbeddingVector::from_unit(std::move(values)));
    }
  }
  if (!file_.parent_path().empty()) {
    std::filesystem::create_directories(file_.parent_path());
  }
  appender_.open(file_, std::ios::app);
  if (!appender_) {
    raise(Errc::config_error, "cannot open embedding cache file " + file_.string());
  }
  if (!have_header) {
    nlohmann::json header{{"format", kFormatName}, {"version", kFormatVersion}};
    appender_ << header.dump() << '\n';
    appender_.flush();
  }
}

std::optional<EmbeddingVector> EmbeddingCache::find(std::string_view backend_id,
                                                    std::string_view text) const {
  const std::string key = cache_key(backend_id, stable_digest(text));
  std::lock_guard lock(mutex_);
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

void EmbeddingCache::store(std::string_view backend_id, std::string_view text,
                           const EmbeddingVector& vector) {
  const std::string digest = stable_digest(text);
  std::lock_guard lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(cache_key(backend_id, digest), vector);
  if (!inserted) return;
  if (appender_.is_open()) {
    nlohmann::json record{{"backend", std::string(backend_id)},
                          {"content_hash", digest},
                          {"values", vector.values()}};
    appender_ << record.dump() << '\n';
    appender_.flush();
  }
}

std::size_t EmbeddingCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

Embedder::Embedder(std::shared_ptr<EncoderBackend> backend, std::shared_ptr<EmbeddingCache> cache,
                   std::size_t batch_size)
    : backend_(std::move(backend)), cache_(std::move(cache)),
      batch_size_(batch_size == 0 ? 1 : batch_size) {
  if (!backend_) raise(Errc::config_error, "embedder needs an encoder backend");
}

EmbeddingVector Embedder::embed(std::string_view text) const {
  const std::string one(text);
  return embed_all(std::span<const std::string>(&one, 1)).front();
}

std::vector<EmbeddingVector> Embedder::embed_all(std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out(texts.size());
  const std::string backend_id = backend_->backend_id();

  // Gather cache misses, deduplicating repeated texts within the request.
  std::vector<std::string> miss_texts;
  std::unordered_map<std::string, std::size_t> miss_slots;
  std::vector<std::pair<std::size_t, std::size_t>> pending;  // (output pos, miss slot)
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const std::string& text = texts[i];
    if (text.empty()) {
      raise(Errc::encoder_unavailable, "refusing to embed empty text (input " +
                                           std::to_string(i) + ")");
    }
    if (cache_) {
      if (auto hit = cache_->find(backend_id, text)) {
        out[i] = std::move(*hit);
        continue;
      }
    }
    auto [it, inserted] = miss_slots.try_emplace(text, miss_texts.size());
    if (inserted) miss_texts.push_back(text);
    pending.emplace_back(i, it->second);
  }

  std::vector<EmbeddingVector> encoded(miss_texts.size());
  for (std::size_t start = 0; start < miss_texts.size(); start += batch_size_) {
    const std::size_t count = std::min(batch_size_, miss_texts.size() - start);
    auto batch = backend_->encode(std::span<const std::string>(miss_texts).subspan(start, count));
    if (batch.size() != count) {
      raise(Errc::encoder_unavailable, "encoder returned " + std::to_string(batch.size()) +
                                           " vectors for " + std::to_string(count) + " texts");
    }
    for (std::size_t j = 0; j < count; ++j) {
      if (cache_) cache_->store(backend_id, miss_texts[start + j], batch[j]);
      encoded[start + j] = std::move(batch[j]);
    }
  }

  for (const auto& [pos, slot] : pending) out[pos] = encoded[slot];
  return out;
}

}  // namespace logicl
