#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "logicl/http_completion.hpp"
#include "logicl/prompt.hpp"
#include "logicl/remote_encoder.hpp"
#include "logicl/replay.hpp"
#include "logicl/selector.hpp"

namespace logicl {

enum class EncoderKind { local, remote };
enum class CompletionKind { mock, http, replay };

std::string to_string(EncoderKind kind);
std::string to_string(CompletionKind kind);
std::string to_string(ExampleOrder order);
std::string to_string(ReplayMode mode);

/// Everything a pipeline run needs. CLI flags mirror these fields; API keys
/// are only ever named here by environment variable.
struct PipelineConfig {
  std::filesystem::path dataset;

  // Encoding
  EncoderKind encoder = EncoderKind::local;
  std::size_t ngram = LocalNgramEncoder::kDefaultNgram;
  std::size_t ngram_dimension = LocalNgramEncoder::kDefaultDimension;
  RemoteEncoderConfig remote_encoder;
  std::filesystem::path embedding_cache;  // empty = in-memory only

  // Completion
  CompletionKind completion = CompletionKind::mock;
  HttpCompletionConfig http_completion;
  std::filesystem::path replay_file;
  ReplayMode replay_mode = ReplayMode::record;
  CompletionKind replay_inner = CompletionKind::mock;  // backend recorded from

  // Selection and prompting
  std::size_t candidate_count = 200;  // offline candidate budget (K)
  std::size_t example_count = 5;      // examples per prompt (k)
  ExampleOrder order = ExampleOrder::ascending;
  std::optional<std::uint64_t> seed;  // required by random order
  bool exclude_identical = true;
  PromptConfig prompt = PromptConfig::defaults();
  int max_tokens_override = 0;  // 0 = twice the query token count plus headroom
  bool retry_extraction = false;

  std::size_t parallelism = 4;

  // Outputs; empty paths fall back to defaults under out_dir.
  std::filesystem::path out_dir = "out";
  std::filesystem::path candidate_file;
  std::filesystem::path parse_output;
  std::filesystem::path report_json;
  std::filesystem::path ablation_json;
  std::filesystem::path manifest_file;

  std::filesystem::path candidate_file_path() const;
  std::filesystem::path parse_output_path() const;
  std::filesystem::path report_json_path() const;
  std::filesystem::path ablation_json_path() const;
  std::filesystem::path manifest_path() const;

  /// Throws Errc::config_error on inconsistent settings (candidate budget
  /// smaller than the example count, random order without a seed, ...).
  void validate() const;

  /// JSON snapshot for the run manifest.
  std::string to_json() const;
};

}  // namespace logicl
