#include "logicl/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "logicl/dpp.hpp"
#include "logicl/errors.hpp"
#include "logicl/stable_hash.hpp"

namespace logicl {

namespace {

/// Headroom on top of twice the query's token count: locators, cue echo and
/// a little trailing chatter.
constexpr int kMaxTokensPad = 16;

std::size_t whitespace_token_count(std::string_view text) {
  std::size_t count = 0;
  bool in_token = false;
  for (unsigned char ch : text) {
    const bool space = std::isspace(ch) != 0;
    if (!space && !in_token) ++count;
    in_token = !space;
  }
  return count;
}

std::uint64_t derive_row_seed(std::uint64_t base, std::size_t line_id) {
  return splitmix64(splitmix64(base) ^ (static_cast<std::uint64_t>(line_id) + 1));
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& thread : pool) thread.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "";
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return stable_digest(bytes);
}

void write_manifest(const PipelineConfig& config, std::string_view command,
                    const std::string& encoder_id, const std::string& completion_id,
                    const std::vector<std::filesystem::path>& outputs,
                    const std::string& started, const std::string& finished) {
  nlohmann::json doc{
      {"command", std::string(command)},
      {"config", nlohmann::json::parse(config.to_json())},
      {"backend_ids", {{"encoder", encoder_id}, {"completion", completion_id}}},
      {"dataset_digest", file_digest(config.dataset)},
      {"started", started},
      {"finished", finished},
  };
  auto paths = nlohmann::json::array();
  for (const auto& path : outputs) paths.push_back(path.string());
  doc["outputs"] = std::move(paths);

  const auto path = config.manifest_path();
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::config_error, "cannot write manifest " + path.string());
  out << doc.dump(2) << "\n";
}

/// Completion services cut the output *before* a stop sequence, so a stop on
/// the end locator removes the very marker extraction needs; re-append it.
std::string completion_text_for_extraction(std::string raw, const CompletionRequest& request,
                                           const PromptConfig& prompt) {
  if (!prompt.use_locators || raw.empty()) return raw;
  const bool stopped_on_end =
      std::find(request.stop.begin(), request.stop.end(), prompt.end_locator) !=
      request.stop.end();
  if (stopped_on_end && raw.find(prompt.end_locator) == std::string::npos) {
    raw += " " + prompt.end_locator;
  }
  return raw;
}

CompletionRequest make_request(const Prompt& prompt, const PipelineConfig& config) {
  CompletionRequest request;
  request.prompt = prompt.text;
  request.temperature = 0.0;
  if (config.max_tokens_override > 0) {
    request.max_tokens = config.max_tokens_override;
  } else {
    const std::size_t query_tokens = whitespace_token_count(prompt.query_content);
    request.max_tokens = static_cast<int>(2 * query_tokens) + kMaxTokensPad;
  }
  if (config.prompt.use_locators) {
    request.stop = {config.prompt.end_locator};
  } else {
    request.stop = {"\n"};
  }
  switch (config.completion) {
    case CompletionKind::http:
      request.model_id = config.http_completion.model;
      break;
    case CompletionKind::replay:
      request.model_id = config.replay_inner == CompletionKind::http
                             ? config.http_completion.model
                             : "mock";
      break;
    case CompletionKind::mock:
      request.model_id = "mock";
      break;
  }
  return request;
}

ParseOutcome parse_one(const LogRecord& query, const EmbeddingVector& query_vec,
                       std::span<const Candidate> candidates, CompletionBackend& backend,
                       const PipelineConfig& config) {
  SelectionResult selection = select_examples(query, query_vec, candidates,
                                              config.example_count, config.exclude_identical);

  const std::uint64_t row_seed = derive_row_seed(config.seed.value_or(0), query.line_id);

  ParseOutcome outcome;
  outcome.line_id = query.line_id;

  std::string raw;
  CompletionRequest request;
  std::vector<ScoredExample> ordered;
  while (true) {
    ordered = ordered_examples(selection, config.order, row_seed);
    Prompt prompt = build_prompt(ordered, candidates, query, config.prompt);
    request = make_request(prompt, config);
    outcome.prompt = prompt.text;
    try {
      raw = backend.complete(request);
      break;
    } catch (const Error& error) {
      // Shed the least similar example and retry with a shorter prompt.
      if (error.code() != Errc::prompt_too_long || selection.examples.size() <= 1) throw;
      selection.examples.erase(selection.examples.begin());
    }
  }

  outcome.example_ids.reserve(ordered.size());
  for (const ScoredExample& example : ordered) {
    outcome.example_ids.push_back(candidates[example.candidate_index].record.line_id);
  }

  outcome.raw_completion = raw;
  std::string extraction_input = completion_text_for_extraction(raw, request, config.prompt);
  outcome.predicted = extract_template(extraction_input, config.prompt);
  if (!outcome.predicted && config.retry_extraction) {
    raw = backend.complete(request);
    outcome.raw_completion = raw;
    extraction_input = completion_text_for_extraction(raw, request, config.prompt);
    outcome.predicted = extract_template(extraction_input, config.prompt);
  }

  if (!outcome.predicted) {
    outcome.status = kStatusExtractionFailed;
    return outcome;
  }
  if (auto params = match_template(query.content, *outcome.predicted)) {
    outcome.parameters = std::move(params->values);
    outcome.status = kStatusOk;
  } else {
    outcome.status = kStatusNoMatch;
  }
  return outcome;
}

}  // namespace

std::shared_ptr<EncoderBackend> make_encoder(const PipelineConfig& config) {
  if (config.encoder == EncoderKind::remote) {
    return std::make_shared<RemoteHttpEncoder>(config.remote_encoder);
  }
  return std::make_shared<LocalNgramEncoder>(config.ngram_dimension, config.ngram);
}

std::shared_ptr<EmbeddingCache> make_embedding_cache(const PipelineConfig& config) {
  if (config.embedding_cache.empty()) return std::make_shared<EmbeddingCache>();
  return std::make_shared<EmbeddingCache>(config.embedding_cache);
}

std::shared_ptr<CompletionBackend> make_completion_backend(const PipelineConfig& config) {
  switch (config.completion) {
    case CompletionKind::mock:
      return std::make_shared<MockNearestTemplateBackend>(config.prompt);
    case CompletionKind::http:
      return std::make_shared<HttpCompletionBackend>(config.http_completion);
    case CompletionKind::replay: {
      auto store = std::make_shared<ReplayStore>(config.replay_file);
      std::shared_ptr<CompletionBackend> inner;
      if (config.replay_mode == ReplayMode::record) {
        inner = config.replay_inner == CompletionKind::http
                    ? std::shared_ptr<CompletionBackend>(
                          std::make_shared<HttpCompletionBackend>(config.http_completion))
                    : std::make_shared<MockNearestTemplateBackend>(config.prompt);
      }
      return std::make_shared<ReplayBackend>(store, inner, config.replay_mode);
    }
  }
  raise(Errc::config_error, "unknown completion backend kind");
}

std::vector<Candidate> build_candidates(std::span<const CandidateRow> rows,
                                        const Embedder& embedder) {
  std::vector<std::string> contents;
  contents.reserve(rows.size());
  for (const CandidateRow& row : rows) contents.push_back(row.content);
  auto embeddings = embedder.embed_all(contents);

  std::vector<Candidate> candidates;
  candidates.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Candidate candidate;
    candidate.record.line_id = rows[i].line_id;
    candidate.record.content = rows[i].content;
    candidate.label = normalize_template(rows[i].label);
    candidate.embedding = std::move(embeddings[i]);
    candidates.push_back(std::move(candidate));
  }
  return candidates;
}

std::vector<ParseOutcome> run_parse(const Dataset& dataset,
                                    std::span<const Candidate> candidates,
                                    const Embedder& embedder,
                                    CompletionBackend& backend,
                                    const PipelineConfig& config) {
  if (candidates.empty()) {
    raise(Errc::no_candidates, "candidate set is empty");
  }

  std::vector<std::string> contents;
  contents.reserve(dataset.records.size());
  for (const LogRecord& record : dataset.records) contents.push_back(record.content);
  const auto query_vectors = embedder.embed_all(contents);

  std::vector<ParseOutcome> outcomes(dataset.records.size());
  parallel_for(dataset.records.size(), config.parallelism, [&](std::size_t i) {
    outcomes[i] =
        parse_one(dataset.records[i], query_vectors[i], candidates, backend, config);
  });
  return outcomes;
}

EvaluationReport evaluate_outcomes(const Dataset& dataset,
                                   std::span<const ParseOutcome> outcomes) {
  EvaluationInput input;
  input.rows.reserve(outcomes.size());
  for (const ParseOutcome& outcome : outcomes) {
    if (outcome.line_id >= dataset.records.size()) {
      raise(Errc::join_error, "line_id " + std::to_string(outcome.line_id) +
                                  " is not in the dataset");
    }
    const LogRecord& record = dataset.records[outcome.line_id];
    if (!record.ground_truth) {
      raise(Errc::join_error,
            "line_id " + std::to_string(outcome.line_id) + " has no ground-truth template");
    }
    input.rows.push_back({outcome.line_id, *record.ground_truth, outcome.predicted});
  }
  return evaluate(input);
}

SampleStats cmd_sample(const PipelineConfig& config) {
  config.validate();
  const std::string started = iso_timestamp();

  const Dataset dataset = load_structured_csv(config.dataset);
  const auto kept = dedup_by_content(dataset.records);

  std::vector<LogRecord> distinct;
  std::vector<std::string> contents;
  distinct.reserve(kept.size());
  contents.reserve(kept.size());
  for (std::size_t index : kept) {
    distinct.push_back(dataset.records[index]);
    contents.push_back(dataset.records[index].content);
  }

  Embedder embedder(make_encoder(config), make_embedding_cache(config),
                    config.remote_encoder.batch_size);
  const auto embeddings = embedder.embed_all(contents);
  const DppSelection selection =
      sample_candidates(distinct, embeddings, config.candidate_count);

  // Candidate files are written in dataset order, ready for annotation.
  std::vector<std::size_t> dataset_indices;
  dataset_indices.reserve(selection.indices.size());
  for (std::size_t pick : selection.indices) dataset_indices.push_back(kept[pick]);
  std::sort(dataset_indices.begin(), dataset_indices.end());

  std::vector<CandidateRow> rows;
  rows.reserve(dataset_indices.size());
  for (std::size_t index : dataset_indices) {
    rows.push_back({dataset.records[index].line_id, dataset.records[index].content, ""});
  }
  write_candidate_csv(config.candidate_file_path(), rows);

  SampleStats stats;
  stats.dataset_rows = dataset.records.size();
  stats.distinct_contents = distinct.size();
  stats.requested = config.candidate_count;
  stats.selected = rows.size();
  stats.rank_exhausted = selection.rank_exhausted;
  if (dataset.has_event_ids) {
    std::unordered_set<std::string> all_events;
    std::unordered_set<std::string> covered;
    for (const LogRecord& record : dataset.records) {
      if (record.event_id) all_events.insert(*record.event_id);
    }
    for (std::size_t index : dataset_indices) {
      if (dataset.records[index].event_id) covered.insert(*dataset.records[index].event_id);
    }
    stats.events_total = all_events.size();
    stats.events_covered = covered.size();
  }

  write_manifest(config, "sample", embedder.backend().backend_id(), "",
                 {config.candidate_file_path()}, started, iso_timestamp());
  return stats;
}

ParseStats cmd_parse(const PipelineConfig& config) {
  config.validate();
  const std::string started = iso_timestamp();

  const Dataset dataset = load_structured_csv(config.dataset);
  const auto rows = read_candidate_csv(config.candidate_file_path(), /*require_labels=*/true);

  Embedder embedder(make_encoder(config), make_embedding_cache(config),
                    config.remote_encoder.batch_size);
  const auto candidates = build_candidates(rows, embedder);
  auto backend = make_completion_backend(config);
  const auto outcomes = run_parse(dataset, candidates, embedder, *backend, config);
  write_parse_csv(config.parse_output_path(), outcomes);

  ParseStats stats;
  stats.rows = outcomes.size();
  for (const ParseOutcome& outcome : outcomes) {
    if (outcome.status == kStatusOk) ++stats.ok;
    else if (outcome.status == kStatusExtractionFailed) ++stats.extraction_failed;
    else ++stats.no_match;
  }

  write_manifest(config, "parse", embedder.backend().backend_id(), backend->backend_id(),
                 {config.parse_output_path()}, started, iso_timestamp());
  return stats;
}

EvaluationReport cmd_evaluate(const PipelineConfig& config) {
  const std::string started = iso_timestamp();

  const Dataset dataset = load_structured_csv(config.dataset);
  const auto rows = read_parse_csv(config.parse_output_path());

  EvaluationInput input;
  input.rows.reserve(rows.size());
  std::vector<std::size_t> missing;
  for (const ParseRow& row : rows) {
    if (row.line_id >= dataset.records.size()) {
      missing.push_back(row.line_id);
      continue;
    }
    const LogRecord& record = dataset.records[row.line_id];
    if (!record.ground_truth) {
      raise(Errc::join_error,
            "line_id " + std::to_string(row.line_id) + " has no ground-truth template");
    }
    input.rows.push_back({row.line_id, *record.ground_truth, row.predicted});
  }
  if (!missing.empty()) {
    std::string ids;
    for (std::size_t id : missing) {
      if (!ids.empty()) ids += ", ";
      ids += std::to_string(id);
    }
    raise(Errc::join_error, "parse rows not present in the dataset: line_id " + ids);
  }

  const EvaluationReport report = evaluate(input);

  const auto report_path = config.report_json_path();
  if (!report_path.parent_path().empty()) {
    std::filesystem::create_directories(report_path.parent_path());
  }
  std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::config_error, "cannot write report " + report_path.string());
  out << report.to_json();
  out.close();

  write_manifest(config, "evaluate", "", "", {report_path}, started, iso_timestamp());
  return report;
}

AblateResult cmd_ablate(const PipelineConfig& config, const AblateSpec& spec) {
  config.validate();
  if (spec.candidate_counts.empty() || spec.example_counts.empty() || spec.orders.empty()) {
    raise(Errc::config_error, "ablation sweep must name candidate counts, example counts "
                              "and orders");
  }
  for (std::size_t k : spec.example_counts) {
    if (k < 1 || k > 9) {
      raise(Errc::config_error, "example counts must lie in 1..9, got " + std::to_string(k));
    }
  }
  for (std::size_t K : spec.candidate_counts) {
    for (std::size_t k : spec.example_counts) {
      if (K < k) {
        raise(Errc::config_error, "candidate count " + std::to_string(K) +
                                      " is smaller than example count " + std::to_string(k));
      }
    }
  }
  if (spec.repeats == 0) raise(Errc::config_error, "repeat count must be at least 1");
  const bool wants_random = std::find(spec.orders.begin(), spec.orders.end(),
                                      ExampleOrder::random) != spec.orders.end();
  if (wants_random && !config.seed.has_value()) {
    raise(Errc::config_error, "random order in the sweep needs an explicit seed");
  }

  const std::string started = iso_timestamp();
  const Dataset dataset = load_structured_csv(config.dataset);
  if (!dataset.has_ground_truth) {
    raise(Errc::config_error, "ablation needs a dataset with ground-truth templates");
  }

  // One embedder and one completion backend across every cell.
  Embedder embedder(make_encoder(config), make_embedding_cache(config),
                    config.remote_encoder.batch_size);
  auto backend = make_completion_backend(config);

  const auto kept = dedup_by_content(dataset.records);
  std::vector<LogRecord> distinct;
  std::vector<std::string> distinct_contents;
  for (std::size_t index : kept) {
    distinct.push_back(dataset.records[index]);
    distinct_contents.push_back(dataset.records[index].content);
  }
  const auto distinct_embeddings = embedder.embed_all(distinct_contents);

  AblateResult result;
  for (std::size_t K : spec.candidate_counts) {
    const DppSelection selection = sample_candidates(distinct, distinct_embeddings, K);

    // Candidates take their labels from the dataset's ground truth, standing
    // in for the annotation pass; a sweep over K could not reuse one
    // hand-labeled file.
    std::vector<CandidateRow> rows;
    for (std::size_t pick : selection.indices) {
      const LogRecord& record = dataset.records[kept[pick]];
      if (!record.ground_truth) {
        raise(Errc::config_error, "candidate line " + std::to_string(record.line_id) +
                                      " has no ground-truth template to label from");
      }
      rows.push_back({record.line_id, record.content, record.ground_truth->text()});
    }
    std::sort(rows.begin(), rows.end(),
              [](const CandidateRow& a, const CandidateRow& b) { return a.line_id < b.line_id; });
    const auto candidates = build_candidates(rows, embedder);

    for (std::size_t k : spec.example_counts) {
      for (ExampleOrder order : spec.orders) {
        AblateCell cell;
        cell.candidate_count = K;
        cell.example_count = k;
        cell.order = order;
        const std::size_t repeats = order == ExampleOrder::random ? spec.repeats : 1;
        for (std::size_t repeat = 0; repeat < repeats; ++repeat) {
          PipelineConfig cell_config = config;
          cell_config.candidate_count = K;
          cell_config.example_count = k;
          cell_config.order = order;
          if (order == ExampleOrder::random) {
            cell_config.seed = splitmix64(config.seed.value_or(0) + repeat);
          }
          const auto outcomes =
              run_parse(dataset, candidates, embedder, *backend, cell_config);
          cell.repeats.push_back(evaluate_outcomes(dataset, outcomes));
        }
        for (const EvaluationReport& report : cell.repeats) {
          cell.mean_pa += report.pa;
          cell.mean_pta += report.pta;
          cell.mean_rta += report.rta;
        }
        cell.mean_pa /= static_cast<double>(cell.repeats.size());
        cell.mean_pta /= static_cast<double>(cell.repeats.size());
        cell.mean_rta /= static_cast<double>(cell.repeats.size());
        result.cells.push_back(std::move(cell));
      }
    }
  }

  const auto matrix_path = config.ablation_json_path();
  if (!matrix_path.parent_path().empty()) {
    std::filesystem::create_directories(matrix_path.parent_path());
  }
  std::ofstream out(matrix_path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::config_error, "cannot write ablation matrix " + matrix_path.string());
  out << ablate_to_json(result);
  out.close();

  write_manifest(config, "ablate", embedder.backend().backend_id(), backend->backend_id(),
                 {matrix_path}, started, iso_timestamp());
  return result;
}

std::string ablate_to_json(const AblateResult& result) {
  auto cells = nlohmann::json::array();
  for (const AblateCell& cell : result.cells) {
    auto repeats = nlohmann::json::array();
    for (const EvaluationReport& report : cell.repeats) {
      repeats.push_back({{"pa", report.pa}, {"pta", report.pta}, {"rta", report.rta}});
    }
    cells.push_back({{"candidate_count", cell.candidate_count},
                     {"example_count", cell.example_count},
                     {"order", to_string(cell.order)},
                     {"repeats", std::move(repeats)},
                     {"mean", {{"pa", cell.mean_pa}, {"pta", cell.mean_pta},
                               {"rta", cell.mean_rta}}}});
  }
  nlohmann::json doc{{"cells", std::move(cells)}};
  return doc.dump(2) + "\n";
}

}  // namespace logicl
