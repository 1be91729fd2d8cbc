#include "logicl/dataset.hpp"

#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "logicl/csv.hpp"
#include "logicl/errors.hpp"

namespace logicl {

namespace {

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::ingest_error, "cannot open " + path.string());
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::ingest_error, "cannot write " + path.string());
  return out;
}

bool blank_row(const std::vector<std::string>& row) {
  return row.size() == 1 && row[0].empty();
}

std::size_t parse_line_id(const std::string& field, std::size_t row_number,
                          const std::filesystem::path& path) {
  try {
    std::size_t consumed = 0;
    const unsigned long long value = std::stoull(field, &consumed);
    if (consumed != field.size()) throw std::invalid_argument(field);
    return static_cast<std::size_t>(value);
  } catch (const std::exception&) {
    raise(Errc::ingest_error, "bad line_id '" + field + "' (row " + std::to_string(row_number) +
                                  " of " + path.string() + ")");
  }
}

}  // namespace

Dataset load_structured_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  CsvReader reader(in);

  auto header = reader.next_row();
  if (!header) raise(Errc::ingest_error, path.string() + " is empty");
  const auto content_col = find_column(*header, "Content");
  if (!content_col) {
    raise(Errc::ingest_error, path.string() + " has no Content column");
  }
  const auto event_col = find_column(*header, "EventId");
  const auto template_col = find_column(*header, "EventTemplate");

  Dataset dataset;
  dataset.has_ground_truth = template_col.has_value();
  dataset.has_event_ids = event_col.has_value();

  // EventId -> template text, to enforce one template per event.
  std::unordered_map<std::string, std::pair<std::string, std::size_t>> event_templates;

  std::size_t data_row = 0;
  while (auto row = reader.next_row()) {
    if (blank_row(*row)) continue;
    ++data_row;
    if (row->size() <= *content_col ||
        (event_col && row->size() <= *event_col) ||
        (template_col && row->size() <= *template_col)) {
      raise(Errc::ingest_error,
            "short row (data row " + std::to_string(data_row) + " of " + path.string() + ")");
    }
    LogRecord record;
    record.line_id = dataset.records.size();
    record.content = (*row)[*content_col];
    if (collapse_whitespace(record.content).empty()) {
      raise(Errc::ingest_error,
            "empty content (data row " + std::to_string(data_row) + " of " + path.string() + ")");
    }
    if (event_col && !(*row)[*event_col].empty()) {
      record.event_id = (*row)[*event_col];
    }
    if (template_col && !collapse_whitespace((*row)[*template_col]).empty()) {
      record.ground_truth = normalize_template((*row)[*template_col]);
    }
    if (record.event_id && record.ground_truth) {
      auto [it, inserted] = event_templates.try_emplace(
          *record.event_id, std::make_pair(record.ground_truth->text(), data_row));
      if (!inserted && it->second.first != record.ground_truth->text()) {
        raise(Errc::ingest_error, "event " + *record.event_id +
                                      " maps to conflicting templates (data rows " +
                                      std::to_string(it->second.second) + " and " +
                                      std::to_string(data_row) + " of " + path.string() + ")");
      }
    }
    dataset.records.push_back(std::move(record));
  }
  return dataset;
}

void write_candidate_csv(const std::filesystem::path& path, std::span<const CandidateRow> rows) {
  auto out = open_for_write(path);
  write_csv_row(out, std::vector<std::string>{"line_id", "content", "template"});
  for (const CandidateRow& row : rows) {
    write_csv_row(out, std::vector<std::string>{std::to_string(row.line_id), row.content,
                                                row.label});
  }
}

std::vector<CandidateRow> read_candidate_csv(const std::filesystem::path& path,
                                             bool require_labels) {
  auto in = open_for_read(path);
  CsvReader reader(in);
  auto header = reader.next_row();
  if (!header) raise(Errc::ingest_error, path.string() + " is empty");
  const auto id_col = find_column(*header, "line_id");
  const auto content_col = find_column(*header, "content");
  const auto label_col = find_column(*header, "template");
  if (!id_col || !content_col || !label_col) {
    raise(Errc::ingest_error,
          path.string() + " needs columns line_id, content and template");
  }

  std::vector<CandidateRow> rows;
  std::vector<std::size_t> unlabeled;
  std::size_t data_row = 0;
  while (auto row = reader.next_row()) {
    if (blank_row(*row)) continue;
    ++data_row;
    const std::size_t needed = std::max({*id_col, *content_col, *label_col}) + 1;
    if (row->size() < needed) {
      raise(Errc::ingest_error,
            "short row (data row " + std::to_string(data_row) + " of " + path.string() + ")");
    }
    CandidateRow out;
    out.line_id = parse_line_id((*row)[*id_col], data_row, path);
    out.content = (*row)[*content_col];
    out.label = (*row)[*label_col];
    if (collapse_whitespace(out.content).empty()) {
      raise(Errc::ingest_error,
            "empty content (data row " + std::to_string(data_row) + " of " + path.string() + ")");
    }
    if (collapse_whitespace(out.label).empty()) unlabeled.push_back(out.line_id);
    rows.push_back(std::move(out));
  }
  if (require_labels && !unlabeled.empty()) {
    std::string ids;
    for (std::size_t id : unlabeled) {
      if (!ids.empty()) ids += ", ";
      ids += std::to_string(id);
    }
    raise(Errc::missing_labels, "unlabeled candidate rows: line_id " + ids);
  }
  return rows;
}

void write_parse_csv(const std::filesystem::path& path, std::span<const ParseOutcome> outcomes) {
  auto out = open_for_write(path);
  write_csv_row(out, std::vector<std::string>{"line_id", "predicted_template", "parameters",
                                              "status", "example_ids"});
  for (const ParseOutcome& outcome : outcomes) {
    const nlohmann::json parameters = outcome.parameters;
    const nlohmann::json example_ids = outcome.example_ids;
    write_csv_row(out, std::vector<std::string>{
                           std::to_string(outcome.line_id),
                           outcome.predicted ? outcome.predicted->text() : std::string(),
                           parameters.dump(),
                           outcome.status,
                           example_ids.dump(),
                       });
  }
}

std::vector<ParseRow> read_parse_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  CsvReader reader(in);
  auto header = reader.next_row();
  if (!header) raise(Errc::ingest_error, path.string() + " is empty");
  const auto id_col = find_column(*header, "line_id");
  const auto template_col = find_column(*header, "predicted_template");
  const auto params_col = find_column(*header, "parameters");
  const auto status_col = find_column(*header, "status");
  const auto examples_col = find_column(*header, "example_ids");
  if (!id_col || !template_col || !params_col || !status_col || !examples_col) {
    raise(Errc::ingest_error, path.string() + " is not a parse-output file");
  }

  std::vector<ParseRow> rows;
  std::size_t data_row = 0;
  while (auto row = reader.next_row()) {
    if (blank_row(*row)) continue;
    ++data_row;
    const std::size_t needed =
        std::max({*id_col, *template_col, *params_col, *status_col, *examples_col}) + 1;
    if (row->size() < needed) {
      raise(Errc::ingest_error,
            "short row (data row " + std::to_string(data_row) + " of " + path.string() + ")");
    }
    ParseRow out;
    out.line_id = parse_line_id((*row)[*id_col], data_row, path);
    out.status = (*row)[*status_col];
    if (!(*row)[*template_col].empty()) {
      out.predicted = normalize_template((*row)[*template_col]);
    }
    const auto params = nlohmann::json::parse((*row)[*params_col], nullptr, false);
    const auto examples = nlohmann::json::parse((*row)[*examples_col], nullptr, false);
    if (params.is_discarded() || !params.is_array() || examples.is_discarded() ||
        !examples.is_array()) {
      raise(Errc::ingest_error, "bad JSON cell (data row " + std::to_string(data_row) + " of " +
                                    path.string() + ")");
    }
    out.parameters = params.get<std::vector<std::string>>();
    out.example_ids = examples.get<std::vector<std::size_t>>();
    rows.push_back(std::move(out));
  }
  return rows;
}

}  // namespace logicl
