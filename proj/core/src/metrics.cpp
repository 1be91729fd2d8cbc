#include "logicl/metrics.hpp"

#include <cstdio>
#include <map>
#include <unordered_set>

#include <json.hpp>

#include "logicl/errors.hpp"

namespace logicl {

EvaluationReport evaluate(const EvaluationInput& input) {
  if (input.rows.empty()) {
    raise(Errc::empty_evaluation, "no rows to evaluate");
  }

  std::unordered_set<std::size_t> seen_ids;
  seen_ids.reserve(input.rows.size());
  std::map<std::string, TemplateOutcome> groups;  // ordered for a stable breakdown
  std::unordered_set<std::string> identified;
  std::size_t correct_messages = 0;

  for (const EvaluationRow& row : input.rows) {
    if (!seen_ids.insert(row.line_id).second) {
      raise(Errc::config_error, "duplicate line_id " + std::to_string(row.line_id));
    }
    TemplateOutcome& group = groups[row.ground_truth.text()];
    ++group.messages;
    const bool correct = row.predicted.has_value() && *row.predicted == row.ground_truth;
    if (correct) {
      ++group.correct_messages;
      ++correct_messages;
    }
    if (row.predicted.has_value()) {
      identified.insert(row.predicted->text());
    }
  }

  EvaluationReport report;
  report.counts.messages_total = input.rows.size();
  report.counts.messages_correct = correct_messages;
  report.counts.identified_templates = identified.size();
  report.counts.ground_truth_templates = groups.size();

  report.per_template.reserve(groups.size());
  for (auto& [text, group] : groups) {
    group.ground_truth = text;
    group.correctly_identified = group.correct_messages == group.messages;
    if (group.correctly_identified) ++report.counts.correctly_identified;
    report.per_template.push_back(group);
  }

  report.pa = static_cast<double>(correct_messages) / static_cast<double>(input.rows.size());
  report.no_identified_templates = identified.empty();
  report.pta = identified.empty() ? 0.0
                                  : static_cast<double>(report.counts.correctly_identified) /
                                        static_cast<double>(identified.size());
  report.rta = static_cast<double>(report.counts.correctly_identified) /
               static_cast<double>(groups.size());
  return report;
}

std::string EvaluationReport::to_json() const {
  nlohmann::json doc{
      {"pa", pa},
      {"pta", pta},
      {"rta", rta},
      {"counts",
       {{"messages_total", counts.messages_total},
        {"messages_correct", counts.messages_correct},
        {"identified_templates", counts.identified_templates},
        {"correctly_identified", counts.correctly_identified},
        {"ground_truth_templates", counts.ground_truth_templates}}},
      {"no_identified_templates", no_identified_templates},
  };
  auto breakdown = nlohmann::json::array();
  for (const TemplateOutcome& outcome : per_template) {
    breakdown.push_back({{"template", outcome.ground_truth},
                         {"messages", outcome.messages},
                         {"correct_messages", outcome.correct_messages},
                         {"correctly_identified", outcome.correctly_identified}});
  }
  doc["per_template"] = std::move(breakdown);
  return doc.dump(2) + "\n";
}

std::string EvaluationReport::to_table() const {
  char line[160];
  std::string out;
  out += "metric  value   detail\n";
  std::snprintf(line, sizeof(line), "PA      %.4f  %zu/%zu messages\n", pa,
                counts.messages_correct, counts.messages_total);
  out += line;
  std::snprintf(line, sizeof(line), "PTA     %.4f  %zu/%zu identified templates%s\n", pta,
                counts.correctly_identified, counts.identified_templates,
                no_identified_templates ? " (none identified)" : "");
  out += line;
  std::snprintf(line, sizeof(line), "RTA     %.4f  %zu/%zu ground-truth templates\n", rta,
                counts.correctly_identified, counts.ground_truth_templates);
  out += line;
  return out;
}

}  // namespace logicl
