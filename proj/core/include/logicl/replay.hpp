#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "logicl/llm.hpp"

namespace logicl {

/// Append-only record/replay log of completions: line-delimited JSON records
/// {key, model, response} behind a version-header line. Requests are keyed by
/// a stable digest of their canonical JSON form, so a recorded session can be
/// replayed bit-for-bit offline. Appends are serialized internally.
class ReplayStore {
 public:
  static constexpr int kFormatVersion = 1;

  /// Opens (or creates) the store at `path` and loads existing records.
  explicit ReplayStore(const std::filesystem::path& path);

  static std::string request_digest(const CompletionRequest& request);

  std::optional<std::string> find(const std::string& digest) const;

  /// First write wins; appending an existing digest is a no-op.
  void append(const std::string& digest, const std::string& model_id,
              const std::string& response);

  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::string> responses_;
  std::filesystem::path path_;
  std::ofstream appender_;
};

enum class ReplayMode {
  record,  // misses go to the wrapped backend and get recorded
  replay,  // misses are a hard error: the session must already be complete
};

class ReplayBackend final : public CompletionBackend {
 public:
  /// `inner` may be null in replay mode; record mode requires it
  /// (Errc::config_error otherwise).
  ReplayBackend(std::shared_ptr<ReplayStore> store,
                std::shared_ptr<CompletionBackend> inner,
                ReplayMode mode);

  std::string backend_id() const override;

  /// Replay-mode misses raise Errc::backend_unavailable carrying the digest.
  std::string complete(const CompletionRequest& request) override;

 private:
  std::shared_ptr<ReplayStore> store_;
  std::shared_ptr<CompletionBackend> inner_;
  ReplayMode mode_;
};

}  // namespace logicl
