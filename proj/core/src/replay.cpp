#include "logicl/replay.hpp"

#include <utility>

#include <json.hpp>

#include "logicl/errors.hpp"
#include "logicl/stable_hash.hpp"

namespace logicl {

namespace {

constexpr std::string_view kFormatName = "logicl-replay";

}  // namespace

ReplayStore::ReplayStore(const std::filesystem::path& path) : path_(path) {
  bool have_header = false;
  if (std::ifstream in(path_); in) {
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto record = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
      if (record.is_discarded()) {
        if (first) raise(Errc::config_error, "corrupt replay store header in " + path_.string());
        break;  // truncated tail of an interrupted recording
      }
      if (first) {
        first = false;
        if (record.value("format", "") != kFormatName ||
            record.value("version", 0) != kFormatVersion) {
          raise(Errc::config_error, "unsupported replay store format in " + path_.string());
        }
        have_header = true;
        continue;
      }
      if (!record.contains("key") || !record.contains("response")) break;
      responses_.try_emplace(record["key"].get<std::string>(),
                             record["response"].get<std::string>());
    }
  }
  if (!path_.parent_path().empty()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  appender_.open(path_, std::ios::app);
  if (!appender_) {
    raise(Errc::config_error, "cannot open replay store " + path_.string());
  }
  if (!have_header) {
    nlohmann::json header{{"format", kFormatName}, {"version", kFormatVersion}};
    appender_ << header.dump() << '\n';
    appender_.flush();
  }
}

std::string ReplayStore::request_digest(const CompletionRequest& request) {
  const nlohmann::json canonical{{"prompt", request.prompt},
                                 {"max_tokens", request.max_tokens},
                                 {"temperature", request.temperature},
                                 {"stop", request.stop},
                                 {"model", request.model_id}};
  return stable_digest(canonical.dump());
}

std::optional<std::string> ReplayStore::find(const std::string& digest) const {
  std::lock_guard lock(mutex_);
  if (auto it = responses_.find(digest); it != responses_.end()) return it->second;
  return std::nullopt;
}

void ReplayStore::append(const std::string& digest, const std::string& model_id,
                         const std::string& response) {
  std::lock_guard lock(mutex_);
  auto [it, inserted] = responses_.try_emplace(digest, response);
  if (!inserted) return;
  nlohmann::json record{{"key", digest}, {"model", model_id}, {"response", response}};
  appender_ << record.dump() << '\n';
  appender_.flush();
}

std::size_t ReplayStore::size() const {
  std::lock_guard lock(mutex_);
  return responses_.size();
}

ReplayBackend::ReplayBackend(std::shared_ptr<ReplayStore> store,
                             std::shared_ptr<CompletionBackend> inner, ReplayMode mode)
    : store_(std::move(store)), inner_(std::move(inner)), mode_(mode) {
  if (!store_) raise(Errc::config_error, "replay backend needs a store");
  if (mode_ == ReplayMode::record && !inner_) {
    raise(Errc::config_error, "record mode needs a backend to record from");
  }
}

std::string ReplayBackend::backend_id() const {
  return "replay[" + (inner_ ? inner_->backend_id() : std::string("offline")) + "]";
}

std::string ReplayBackend::complete(const CompletionRequest& request) {
  const std::string digest = ReplayStore::request_digest(request);
  if (auto hit = store_->find(digest)) return *hit;
  if (mode_ == ReplayMode::replay) {
    raise(Errc::backend_unavailable, "replay miss for request digest " + digest);
  }
  std::string response = inner_->complete(request);
  store_->append(digest, request.model_id, response);
  return response;
}

}  // namespace logicl
