#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logicl/log_model.hpp"

namespace logicl {

/// A loaded log dataset. line_id always equals the zero-based data-row index,
/// regardless of any LineId column in the file.
struct Dataset {
  std::vector<LogRecord> records;
  bool has_ground_truth = false;  // an EventTemplate column was present
  bool has_event_ids = false;     // an EventId column was present
};

/// Loads a structured log CSV. The header must carry a Content column;
/// EventId and EventTemplate are optional and only needed for evaluation.
/// Rows with empty content, ragged rows and conflicting templates under one
/// event id raise Errc::ingest_error naming the data row.
Dataset load_structured_csv(const std::filesystem::path& path);

/// One row of the candidate file human annotators fill in: the sampled log
/// plus its (initially empty) label column.
struct CandidateRow {
  std::size_t line_id = 0;
  std::string content;
  std::string label;
};

/// Writes header line_id,content,template and one row per candidate, in the
/// given order.
void write_candidate_csv(const std::filesystem::path& path, std::span<const CandidateRow> rows);

/// Reads a candidate file back. With require_labels set, rows whose label is
/// blank raise Errc::missing_labels listing every offending line_id.
std::vector<CandidateRow> read_candidate_csv(const std::filesystem::path& path,
                                             bool require_labels);

/// Per-log parsing result. The prompt and raw completion stay in memory for
/// diagnostics; the CSV carries line_id, predicted_template, parameters
/// (JSON-encoded), status and example_ids (JSON-encoded candidate line ids in
/// prompt order).
struct ParseOutcome {
  std::size_t line_id = 0;
  std::string prompt;
  std::string raw_completion;
  std::optional<Template> predicted;
  std::vector<std::string> parameters;
  std::vector<std::size_t> example_ids;
  std::string status;  // ok | extraction_failed | no_match
};

inline constexpr std::string_view kStatusOk = "ok";
inline constexpr std::string_view kStatusExtractionFailed = "extraction_failed";
inline constexpr std::string_view kStatusNoMatch = "no_match";

void write_parse_csv(const std::filesystem::path& path, std::span<const ParseOutcome> outcomes);

/// Row as read back from a parse-output file (prompt and raw completion are
/// not persisted).
struct ParseRow {
  std::size_t line_id = 0;
  std::optional<Template> predicted;
  std::vector<std::string> parameters;
  std::vector<std::size_t> example_ids;
  std::string status;
};

std::vector<ParseRow> read_parse_csv(const std::filesystem::path& path);

}  // namespace logicl
