#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "logicl/log_model.hpp"

namespace logicl {

/// One evaluated message. An absent prediction records an extraction failure
/// and is never correct.
struct EvaluationRow {
  std::size_t line_id = 0;
  Template ground_truth;
  std::optional<Template> predicted;
};

struct EvaluationInput {
  std::vector<EvaluationRow> rows;
};

struct EvaluationCounts {
  std::size_t messages_total = 0;
  std::size_t messages_correct = 0;
  std::size_t identified_templates = 0;    // distinct predicted strings
  std::size_t correctly_identified = 0;    // ground-truth templates fully parsed
  std::size_t ground_truth_templates = 0;  // distinct ground-truth strings
};

/// Per ground-truth template tally. A template counts as correctly identified
/// only when every one of its messages was parsed exactly.
struct TemplateOutcome {
  std::string ground_truth;
  std::size_t messages = 0;
  std::size_t correct_messages = 0;
  bool correctly_identified = false;
};

struct EvaluationReport {
  double pa = 0.0;   // correct messages / total messages
  double pta = 0.0;  // correctly identified / identified templates
  double rta = 0.0;  // correctly identified / ground-truth templates
  EvaluationCounts counts;
  std::vector<TemplateOutcome> per_template;  // sorted by template text
  bool no_identified_templates = false;       // PTA forced to 0 by convention

  /// Serialized JSON document (stable key order, round-trip floats).
  std::string to_json() const;

  /// Small fixed-width text table.
  std::string to_table() const;
};

/// Message- and template-level accuracy: a message is correct iff its
/// predicted template equals the ground truth exactly. Throws
/// Errc::empty_evaluation on empty input and Errc::config_error on duplicate
/// line ids.
EvaluationReport evaluate(const EvaluationInput& input);

}  // namespace logicl
