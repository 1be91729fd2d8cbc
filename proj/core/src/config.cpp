#include "logicl/config.hpp"

#include <json.hpp>

#include "logicl/errors.hpp"

namespace logicl {

std::string to_string(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::local: return "local";
    case EncoderKind::remote: return "remote";
  }
  return "?";
}

std::string to_string(CompletionKind kind) {
  switch (kind) {
    case CompletionKind::mock: return "mock";
    case CompletionKind::http: return "http";
    case CompletionKind::replay: return "replay";
  }
  return "?";
}

std::string to_string(ExampleOrder order) {
  switch (order) {
    case ExampleOrder::ascending: return "ascending";
    case ExampleOrder::descending: return "descending";
    case ExampleOrder::random: return "random";
  }
  return "?";
}

std::string to_string(ReplayMode mode) {
  switch (mode) {
    case ReplayMode::record: return "record";
    case ReplayMode::replay: return "replay";
  }
  return "?";
}

std::filesystem::path PipelineConfig::candidate_file_path() const {
  return candidate_file.empty() ? out_dir / "candidates.csv" : candidate_file;
}

std::filesystem::path PipelineConfig::parse_output_path() const {
  return parse_output.empty() ? out_dir / "parse.csv" : parse_output;
}

std::filesystem::path PipelineConfig::report_json_path() const {
  return report_json.empty() ? out_dir / "report.json" : report_json;
}

std::filesystem::path PipelineConfig::ablation_json_path() const {
  return ablation_json.empty() ? out_dir / "ablation.json" : ablation_json;
}

std::filesystem::path PipelineConfig::manifest_path() const {
  return manifest_file.empty() ? out_dir / "manifest.json" : manifest_file;
}

void PipelineConfig::validate() const {
  if (candidate_count == 0) raise(Errc::config_error, "candidate count must be at least 1");
  if (example_count == 0) raise(Errc::config_error, "example count must be at least 1");
  if (candidate_count < example_count) {
    raise(Errc::config_error, "candidate count " + std::to_string(candidate_count) +
                                  " is smaller than example count " +
                                  std::to_string(example_count));
  }
  if (order == ExampleOrder::random && !seed.has_value()) {
    raise(Errc::config_error, "random order needs an explicit seed");
  }
  if (parallelism == 0) raise(Errc::config_error, "parallelism must be at least 1");
  prompt.validate();
  if (encoder == EncoderKind::remote) {
    if (remote_encoder.url.empty() || remote_encoder.model.empty()) {
      raise(Errc::config_error, "remote encoder needs a URL and a model name");
    }
  } else {
    if (ngram_dimension < 64) raise(Errc::config_error, "encoder dimension must be at least 64");
    if (ngram < 2) raise(Errc::config_error, "n-gram size must be at least 2");
  }
  if (completion == CompletionKind::http ||
      (completion == CompletionKind::replay && replay_mode == ReplayMode::record &&
       replay_inner == CompletionKind::http)) {
    if (http_completion.url.empty() || http_completion.model.empty()) {
      raise(Errc::config_error, "http completion needs a URL and a model name");
    }
  }
  if (completion == CompletionKind::replay) {
    if (replay_file.empty()) raise(Errc::config_error, "replay completion needs a store file");
    if (replay_inner == CompletionKind::replay) {
      raise(Errc::config_error, "replay cannot record from itself");
    }
  }
}

std::string PipelineConfig::to_json() const {
  nlohmann::json doc{
      {"dataset", dataset.string()},
      {"encoder",
       {{"kind", to_string(encoder)},
        {"ngram", ngram},
        {"ngram_dimension", ngram_dimension},
        {"remote_url", remote_encoder.url},
        {"remote_model", remote_encoder.model},
        {"remote_api_key_env", remote_encoder.api_key_env},
        {"batch_size", remote_encoder.batch_size},
        {"cache", embedding_cache.string()}}},
      {"completion",
       {{"kind", to_string(completion)},
        {"http_url", http_completion.url},
        {"http_model", http_completion.model},
        {"http_api_key_env", http_completion.api_key_env},
        {"max_requests_per_second", http_completion.max_requests_per_second},
        {"max_in_flight", http_completion.max_in_flight},
        {"replay_file", replay_file.string()},
        {"replay_mode", to_string(replay_mode)},
        {"replay_inner", to_string(replay_inner)}}},
      {"candidate_count", candidate_count},
      {"example_count", example_count},
      {"order", to_string(order)},
      {"exclude_identical", exclude_identical},
      {"prompt",
       {{"instruction", prompt.instruction},
        {"start_locator", prompt.start_locator},
        {"end_locator", prompt.end_locator},
        {"use_locators", prompt.use_locators},
        {"fallback_first_line", prompt.fallback_first_line}}},
      {"max_tokens_override", max_tokens_override},
      {"retry_extraction", retry_extraction},
      {"parallelism", parallelism},
      {"out_dir", out_dir.string()},
  };
  if (seed.has_value()) {
    doc["seed"] = *seed;
  } else {
    doc["seed"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

}  // namespace logicl
