#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace logicl {

/// An L2-normalized embedding. Construction rejects zero vectors; the stored
/// norm never strays from 1 by more than 1e-6.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;

  /// Scales `values` to unit length. Throws Errc::degenerate_embedding when
  /// the norm is numerically zero.
  static EmbeddingVector normalized(std::vector<double> values);

  /// Adopts `values` unchanged after checking they are already unit length,
  /// so bits loaded from the cache survive untouched.
  static EmbeddingVector from_unit(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t dimension() const noexcept { return values_.size(); }

  /// Inner product; throws Errc::dimension_mismatch when dimensions differ.
  double dot(const EmbeddingVector& other) const;

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<double> values_;
};

/// a.b / (|a||b|). Equals the plain dot product for normalized inputs.
/// Throws Errc::dimension_mismatch when dimensions differ.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

/// Contract for text encoders. Implementations must be deterministic: the
/// same backend_id and input text always produce the same vector — caching
/// and the offline tests rely on it.
class EncoderBackend {
 public:
  virtual ~EncoderBackend() = default;

  /// Stable string identifying the encoder family, version and parameters;
  /// part of every cache key.
  virtual std::string backend_id() const = 0;

  /// Vector dimension. Remote encoders may return 0 until the first response
  /// reveals it.
  virtual std::size_t dimension() const = 0;

  virtual std::vector<EmbeddingVector> encode(std::span<const std::string> texts) = 0;
};

/// Deterministic offline encoder: hashed character n-gram term frequencies,
/// L2-normalized. Feature index is the stable hash of the n-gram modulo the
/// dimension. Texts shorter than the n-gram size fall back to a single
/// feature for the whole text. Pure, so safe for concurrent use.
class LocalNgramEncoder final : public EncoderBackend {
 public:
  static constexpr std::size_t kDefaultDimension = 1024;
  static constexpr std::size_t kDefaultNgram = 3;

  /// Requires dimension >= 64 and ngram >= 2 (Errc::config_error otherwise).
  explicit LocalNgramEncoder(std::size_t dimension = kDefaultDimension,
                             std::size_t ngram = kDefaultNgram);

  std::string backend_id() const override;
  std::size_t dimension() const override { return dimension_; }
  std::vector<EmbeddingVector> encode(std::span<const std::string> texts) override;

  EmbeddingVector encode_one(std::string_view text) const;

 private:
  std::size_t dimension_;
  std::size_t ngram_;
};

}  // namespace logicl
