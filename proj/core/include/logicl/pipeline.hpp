#pragma once

#include <memory>
#include <span>
#include <vector>

#include "logicl/config.hpp"
#include "logicl/dataset.hpp"
#include "logicl/embedding_cache.hpp"
#include "logicl/llm.hpp"
#include "logicl/metrics.hpp"

namespace logicl {

std::shared_ptr<EncoderBackend> make_encoder(const PipelineConfig& config);
std::shared_ptr<EmbeddingCache> make_embedding_cache(const PipelineConfig& config);
std::shared_ptr<CompletionBackend> make_completion_backend(const PipelineConfig& config);

/// Builds prompt-ready candidates from annotated rows: labels are normalized
/// and contents embedded in one batch.
std::vector<Candidate> build_candidates(std::span<const CandidateRow> rows,
                                        const Embedder& embedder);

/// Core per-dataset parsing loop: for every record select examples, order
/// them, build the prompt, complete, extract and derive parameters. Rows are
/// processed by a bounded worker pool; results come back in dataset order.
/// When the service rejects a prompt as too long, the least similar example
/// is shed and the prompt rebuilt, down to a single example.
std::vector<ParseOutcome> run_parse(const Dataset& dataset,
                                    std::span<const Candidate> candidates,
                                    const Embedder& embedder,
                                    CompletionBackend& backend,
                                    const PipelineConfig& config);

/// Joins outcomes with the dataset's ground truth and evaluates them.
/// Throws Errc::join_error when a row has no ground truth to compare against.
EvaluationReport evaluate_outcomes(const Dataset& dataset,
                                   std::span<const ParseOutcome> outcomes);

struct SampleStats {
  std::size_t dataset_rows = 0;
  std::size_t distinct_contents = 0;
  std::size_t requested = 0;
  std::size_t selected = 0;
  bool rank_exhausted = false;
  std::size_t events_total = 0;    // distinct event ids in the dataset (when present)
  std::size_t events_covered = 0;  // distinct event ids among the candidates
};

/// Offline stage: deduplicate, embed, select the diverse candidate set and
/// write it as a labeling-ready CSV (dataset order) plus the run manifest.
SampleStats cmd_sample(const PipelineConfig& config);

struct ParseStats {
  std::size_t rows = 0;
  std::size_t ok = 0;
  std::size_t extraction_failed = 0;
  std::size_t no_match = 0;
};

/// Online stage: parse every dataset row against the labeled candidate file
/// and write the parse-output CSV plus the run manifest.
ParseStats cmd_parse(const PipelineConfig& config);

/// Joins a parse-output file with the dataset on line_id and writes the
/// report JSON plus the run manifest. Missing line ids raise Errc::join_error.
EvaluationReport cmd_evaluate(const PipelineConfig& config);

struct AblateSpec {
  std::vector<std::size_t> candidate_counts;  // K values
  std::vector<std::size_t> example_counts;    // k values, each within 1..9
  std::vector<ExampleOrder> orders;
  std::size_t repeats = 1;  // applied to random order only
};

struct AblateCell {
  std::size_t candidate_count = 0;
  std::size_t example_count = 0;
  ExampleOrder order = ExampleOrder::ascending;
  std::vector<EvaluationReport> repeats;
  double mean_pa = 0.0;
  double mean_pta = 0.0;
  double mean_rta = 0.0;
};

struct AblateResult {
  std::vector<AblateCell> cells;
};

/// Sweeps candidate count, example count and permutation order over one
/// dataset, labeling candidates from the dataset's ground truth; random-order
/// cells repeat `repeats` times with derived seeds and report the mean. All
/// cells share the embedding cache and the completion backend. Writes the
/// matrix JSON plus the run manifest.
AblateResult cmd_ablate(const PipelineConfig& config, const AblateSpec& spec);

std::string ablate_to_json(const AblateResult& result);

}  // namespace logicl
