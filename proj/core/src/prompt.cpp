#include "logicl/prompt.hpp"

#include "logicl/errors.hpp"

namespace logicl {

namespace {

constexpr std::string_view kLogCue = "Log: ";
constexpr std::string_view kTemplateCue = "Template:";

void check_no_locator(std::string_view text, std::string_view what, const PromptConfig& config) {
  if (text.find(config.start_locator) != std::string_view::npos ||
      text.find(config.end_locator) != std::string_view::npos) {
    raise(Errc::locator_collision, std::string(what) + " contains a locator string");
  }
}

std::optional<Template> first_line_template(std::string_view raw) {
  const std::size_t eol = raw.find('\n');
  const std::string_view line = eol == std::string_view::npos ? raw : raw.substr(0, eol);
  if (collapse_whitespace(line).empty()) return std::nullopt;
  return normalize_template(line);
}

}  // namespace

void PromptConfig::validate() const {
  if (start_locator.empty() || end_locator.empty()) {
    raise(Errc::config_error, "locators must be non-empty");
  }
  if (start_locator == end_locator) {
    raise(Errc::config_error, "locators must be distinct");
  }
  if (start_locator.find(end_locator) != std::string::npos ||
      end_locator.find(start_locator) != std::string::npos) {
    raise(Errc::config_error, "locators must not be substrings of each other");
  }
}

PromptConfig PromptConfig::defaults() {
  PromptConfig config;
  config.instruction =
      "Extract the template of the last log message below by replacing every "
      "variable token with <*> and keeping constant tokens unchanged; answer "
      "in the same wrapped format as the worked examples.";
  return config;
}

Prompt build_prompt(std::span<const ScoredExample> examples,
                    std::span<const Candidate> candidates,
                    const LogRecord& query,
                    const PromptConfig& config) {
  config.validate();
  if (config.use_locators) {
    check_no_locator(config.instruction, "instruction", config);
  }

  Prompt prompt;
  prompt.example_count = examples.size();
  prompt.query_content = query.content;

  std::string& text = prompt.text;
  text.append(config.instruction);
  text.append("\n");
  for (const ScoredExample& example : examples) {
    const Candidate& candidate = candidates[example.candidate_index];
    if (config.use_locators) {
      check_no_locator(candidate.record.content, "example log line", config);
      check_no_locator(candidate.label.text(), "example label", config);
    }
    text.append("\n");
    text.append(kLogCue);
    text.append(candidate.record.content);
    text.append("\n");
    text.append(kTemplateCue);
    text.append(" ");
    if (config.use_locators) {
      text.append(config.start_locator);
      text.append(" ");
      text.append(candidate.label.text());
      text.append(" ");
      text.append(config.end_locator);
    } else {
      text.append(candidate.label.text());
    }
    text.append("\n");
  }
  text.append("\n");
  text.append(kLogCue);
  text.append(query.content);
  text.append("\n");
  text.append(kTemplateCue);
  return prompt;
}

Prompt build_prompt(const SelectionResult& selection,
                    std::span<const Candidate> candidates,
                    const LogRecord& query,
                    const PromptConfig& config) {
  return build_prompt(std::span<const ScoredExample>(selection.examples), candidates, query,
                      config);
}

std::optional<Template> extract_template(std::string_view raw_output,
                                         const PromptConfig& config) {
  config.validate();
  if (!config.use_locators) {
    return first_line_template(raw_output);
  }
  const std::size_t start = raw_output.find(config.start_locator);
  if (start != std::string_view::npos) {
    const std::size_t body = start + config.start_locator.size();
    const std::size_t end = raw_output.find(config.end_locator, body);
    if (end != std::string_view::npos) {
      const std::string_view inner = raw_output.substr(body, end - body);
      if (collapse_whitespace(inner).empty()) return std::nullopt;
      return normalize_template(inner);
    }
  }
  if (config.fallback_first_line) {
    return first_line_template(raw_output);
  }
  return std::nullopt;
}

}  // namespace logicl
