#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "logicl/log_model.hpp"
#include "logicl/selector.hpp"

namespace logicl {

/// Prompt layout settings. The locator pair wraps every template in the
/// prompt and, by analogy, in the completion, so the answer can be cut out of
/// the raw output mechanically no matter what chatter follows it.
struct PromptConfig {
  std::string instruction;
  std::string start_locator = "<START>";
  std::string end_locator = "<END>";

  /// When false, example templates are emitted unwrapped and extraction
  /// always takes the first output line (ablation mode).
  bool use_locators = true;

  /// When no locator pair is found in the output, fall back to the first
  /// output line instead of failing.
  bool fallback_first_line = false;

  /// Locators must be non-empty, distinct and not substrings of each other;
  /// anything else is Errc::config_error.
  void validate() const;

  static PromptConfig defaults();
};

struct Prompt {
  std::string text;
  std::size_t example_count = 0;
  std::string query_content;
};

/// Assembles instruction, one block per example — the raw log line, then its
/// labeled template wrapped in the locator pair — in the given order, and
/// finally the query's log line with the bare template cue, so the completion
/// is expected to open with the start locator. Throws Errc::locator_collision
/// when the instruction, an example log line or a label contains a locator.
Prompt build_prompt(std::span<const ScoredExample> examples,
                    std::span<const Candidate> candidates,
                    const LogRecord& query,
                    const PromptConfig& config);

/// Overload using the selection's stored (ascending) order.
Prompt build_prompt(const SelectionResult& selection,
                    std::span<const Candidate> candidates,
                    const LogRecord& query,
                    const PromptConfig& config);

/// Cuts the template out of a raw completion: the text between the first
/// start locator and the next end locator, normalized; later pairs and
/// trailing chatter are ignored. Returns nullopt when no pair is found and
/// the first-line fallback is off — an extraction failure is a recorded
/// outcome, not an exception.
std::optional<Template> extract_template(std::string_view raw_output,
                                         const PromptConfig& config);

}  // namespace logicl
