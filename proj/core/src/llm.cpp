#include "logicl/llm.hpp"

#include <utility>

namespace logicl {

MockNearestTemplateBackend::MockNearestTemplateBackend(PromptConfig config)
    : config_(std::move(config)) {
  config_.validate();
}

std::string MockNearestTemplateBackend::backend_id() const { return "mock-nearest-template:v1"; }

std::string MockNearestTemplateBackend::complete(const CompletionRequest& request) {
  // The last locator pair in the prompt belongs to the most similar example;
  // the query block that follows it carries no locators.
  const std::string& prompt = request.prompt;
  const std::size_t start = prompt.rfind(config_.start_locator);
  if (start == std::string::npos) return "";
  const std::size_t body = start + config_.start_locator.size();
  const std::size_t end = prompt.find(config_.end_locator, body);
  if (end == std::string::npos) return "";
  const std::string label = collapse_whitespace(prompt.substr(body, end - body));
  if (label.empty()) return "";
  return config_.start_locator + " " + label + " " + config_.end_locator + "\nDone.";
}

}  // namespace logicl
