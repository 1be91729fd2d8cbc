#include "logicl/embedding.hpp"

#include <cmath>

#include "logicl/errors.hpp"
#include "logicl/stable_hash.hpp"

namespace logicl {

namespace {

double l2_norm(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum);
}

}  // namespace

EmbeddingVector EmbeddingVector::normalized(std::vector<double> values) {
  const double norm = l2_norm(values);
  if (!(norm > 1e-12)) {
    raise(Errc::degenerate_embedding, "cannot normalize a zero vector");
  }
  for (double& v : values) v /= norm;
  EmbeddingVector out;
  out.values_ = std::move(values);
  return out;
}

EmbeddingVector EmbeddingVector::from_unit(std::vector<double> values) {
  const double norm = l2_norm(values);
  if (std::abs(norm - 1.0) > 1e-6) {
    raise(Errc::degenerate_embedding,
          "vector is not unit length (norm " + std::to_string(norm) + ")");
  }
  EmbeddingVector out;
  out.values_ = std::move(values);
  return out;
}

double EmbeddingVector::dot(const EmbeddingVector& other) const {
  if (values_.size() != other.values_.size()) {
    raise(Errc::dimension_mismatch, "dot of " + std::to_string(values_.size()) + " against " +
                                        std::to_string(other.values_.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) sum += values_[i] * other.values_[i];
  return sum;
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) {
    raise(Errc::dimension_mismatch, "cosine of " + std::to_string(a.dimension()) + " against " +
                                        std::to_string(b.dimension()));
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    dot += av[i] * bv[i];
    na += av[i] * av[i];
    nb += bv[i] * bv[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) {
    raise(Errc::degenerate_embedding, "cosine of a zero vector");
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

LocalNgramEncoder::LocalNgramEncoder(std::size_t dimension, std::size_t ngram)
    : dimension_(dimension), ngram_(ngram) {
  if (dimension < 64) {
    raise(Errc::config_error, "encoder dimension must be at least 64");
  }
  if (ngram < 2) {
    raise(Errc::config_error, "n-gram size must be at least 2");
  }
}

std::string LocalNgramEncoder::backend_id() const {
  return "local-ngram:v1:n=" + std::to_string(ngram_) + ":dim=" + std::to_string(dimension_);
}

std::vector<EmbeddingVector> LocalNgramEncoder::encode(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) out.push_back(encode_one(text));
  return out;
}

EmbeddingVector LocalNgramEncoder::encode_one(std::string_view text) const {
  std::vector<double> values(dimension_, 0.0);
  if (text.size() < ngram_) {
    values[fnv1a64(text) % dimension_] += 1.0;
  } else {
    for (std::size_t i = 0; i + ngram_ <= text.size(); ++i) {
      values[fnv1a64(text.substr(i, ngram_)) % dimension_] += 1.0;
    }
  }
  return EmbeddingVector::normalized(std::move(values));
}

}  // namespace logicl
