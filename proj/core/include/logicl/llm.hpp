#pragma once

#include <string>
#include <vector>

#include "logicl/prompt.hpp"

namespace logicl {

struct CompletionRequest {
  std::string prompt;
  int max_tokens = 1;
  double temperature = 0.0;
  std::vector<std::string> stop;
  std::string model_id;
};

/// Completion service contract. With temperature 0 identical requests must
/// yield identical responses; replay caching and the offline tests rely on
/// that. Implementations are shared read-only handles, callable from many
/// workers at once.
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;

  virtual std::string backend_id() const = 0;
  virtual std::string complete(const CompletionRequest& request) = 0;
};

/// Offline stand-in that answers every prompt with the label of its last
/// (most similar) example, wrapped in the locator pair, plus a fixed
/// "\nDone." suffix so extraction has chatter to ignore. A prompt without
/// example blocks gets an empty string, which downstream records as an
/// extraction failure. Pure and deterministic: with this backend the whole
/// pipeline is a function of dataset, labels and configuration.
class MockNearestTemplateBackend final : public CompletionBackend {
 public:
  explicit MockNearestTemplateBackend(PromptConfig config = PromptConfig::defaults());

  std::string backend_id() const override;
  std::string complete(const CompletionRequest& request) override;

 private:
  PromptConfig config_;
};

}  // namespace logicl
