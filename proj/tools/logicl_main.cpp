// Command-line front end for the log-template extraction pipeline:
//   sample    pick a diverse candidate set from a log dataset for labeling
//   parse     extract a template for every log using labeled candidates
//   evaluate  score a parse output against ground truth
//   ablate    sweep candidate count, example count and example order

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "logicl/errors.hpp"
#include "logicl/pipeline.hpp"

namespace {

using logicl::AblateSpec;
using logicl::CompletionKind;
using logicl::EncoderKind;
using logicl::ExampleOrder;
using logicl::PipelineConfig;
using logicl::ReplayMode;

void add_common_options(CLI::App& cmd, PipelineConfig& config, std::uint64_t& seed_value,
                        bool& seed_given) {
  cmd.add_option("--dataset", config.dataset, "Structured log CSV (needs a Content column)")
      ->required();
  cmd.add_option("--out-dir", config.out_dir, "Directory for output files")
      ->capture_default_str();

  // Encoder
  cmd.add_option("--encoder", config.encoder, "Embedding backend")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, EncoderKind>{{"local", EncoderKind::local},
                                             {"remote", EncoderKind::remote}},
          CLI::ignore_case))
      ->capture_default_str();
  cmd.add_option("--ngram", config.ngram, "Local encoder n-gram size")->capture_default_str();
  cmd.add_option("--ngram-dim", config.ngram_dimension, "Local encoder dimension")
      ->capture_default_str();
  cmd.add_option("--encoder-url", config.remote_encoder.url, "Remote embedding endpoint URL");
  cmd.add_option("--encoder-model", config.remote_encoder.model, "Remote embedding model");
  cmd.add_option("--encoder-key-env", config.remote_encoder.api_key_env,
                 "Environment variable holding the embedding API key")
      ->capture_default_str();
  cmd.add_option("--encoder-batch", config.remote_encoder.batch_size,
                 "Texts per embedding request")
      ->capture_default_str();
  cmd.add_option("--embedding-cache", config.embedding_cache,
                 "Embedding cache file (created when absent)");

  // Completion
  cmd.add_option("--completion", config.completion, "Completion backend")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, CompletionKind>{{"mock", CompletionKind::mock},
                                                {"http", CompletionKind::http},
                                                {"replay", CompletionKind::replay}},
          CLI::ignore_case))
      ->capture_default_str();
  cmd.add_option("--completion-url", config.http_completion.url,
                 "Completion endpoint URL (completions-style API)");
  cmd.add_option("--completion-model", config.http_completion.model, "Completion model name");
  cmd.add_option("--completion-key-env", config.http_completion.api_key_env,
                 "Environment variable holding the completion API key")
      ->capture_default_str();
  cmd.add_option("--rate-limit", config.http_completion.max_requests_per_second,
                 "Completion requests per second (0 = unthrottled)")
      ->capture_default_str();
  cmd.add_option("--max-in-flight", config.http_completion.max_in_flight,
                 "Concurrent completion requests")
      ->capture_default_str();
  cmd.add_option("--replay-file", config.replay_file, "Record/replay store for completions");
  cmd.add_option("--replay-mode", config.replay_mode, "record or replay")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ReplayMode>{{"record", ReplayMode::record},
                                            {"replay", ReplayMode::replay}},
          CLI::ignore_case))
      ->capture_default_str();
  cmd.add_option("--replay-inner", config.replay_inner,
                 "Backend recorded from in record mode (mock or http)")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, CompletionKind>{{"mock", CompletionKind::mock},
                                                {"http", CompletionKind::http}},
          CLI::ignore_case))
      ->capture_default_str();

  // Selection and prompting
  cmd.add_option("--candidates,-K", config.candidate_count,
                 "Offline candidate budget (diverse sampling)")
      ->capture_default_str();
  cmd.add_option("--examples,-k", config.example_count, "Examples per prompt")
      ->capture_default_str();
  cmd.add_option("--order", config.order, "Example order in the prompt")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ExampleOrder>{{"ascending", ExampleOrder::ascending},
                                              {"descending", ExampleOrder::descending},
                                              {"random", ExampleOrder::random}},
          CLI::ignore_case))
      ->capture_default_str();
  auto* seed_opt = cmd.add_option("--seed", seed_value,
                                  "Seed for randomized choices (required by --order random)");
  cmd.callback([&seed_given, seed_opt] { seed_given = seed_opt->count() > 0; });
  cmd.add_flag("--exclude-identical,!--no-exclude-identical", config.exclude_identical,
               "Skip candidates identical to the query (leakage guard)")
      ->capture_default_str();
  cmd.add_option("--instruction", config.prompt.instruction, "Prompt instruction text");
  cmd.add_option("--start-locator", config.prompt.start_locator, "Opening locator")
      ->capture_default_str();
  cmd.add_option("--end-locator", config.prompt.end_locator, "Closing locator")
      ->capture_default_str();
  cmd.add_flag("--no-locators", [&config](std::int64_t count) {
        if (count > 0) config.prompt.use_locators = false;
      },
      "Drop the locator pair and read the first output line (ablation)");
  cmd.add_flag("--fallback-first-line", config.prompt.fallback_first_line,
               "On missing locators, take the first output line instead of failing");
  cmd.add_option("--max-tokens", config.max_tokens_override,
                 "Completion token budget (0 = sized from the query)")
      ->capture_default_str();
  cmd.add_flag("--retry-extraction", config.retry_extraction,
               "Re-request once when extraction fails");
  cmd.add_option("--jobs,-j", config.parallelism, "Worker threads for per-log parsing")
      ->capture_default_str();

  // Output files
  cmd.add_option("--candidate-file", config.candidate_file,
                 "Candidate CSV (default <out-dir>/candidates.csv)");
  cmd.add_option("--parse-output", config.parse_output,
                 "Parse output CSV (default <out-dir>/parse.csv)");
  cmd.add_option("--report-json", config.report_json,
                 "Report JSON (default <out-dir>/report.json)");
  cmd.add_option("--ablation-json", config.ablation_json,
                 "Ablation matrix JSON (default <out-dir>/ablation.json)");
  cmd.add_option("--manifest", config.manifest_file,
                 "Run manifest JSON (default <out-dir>/manifest.json)");
}

std::vector<ExampleOrder> parse_orders(const std::vector<std::string>& names) {
  std::vector<ExampleOrder> orders;
  for (const std::string& name : names) {
    if (name == "ascending") orders.push_back(ExampleOrder::ascending);
    else if (name == "descending") orders.push_back(ExampleOrder::descending);
    else if (name == "random") orders.push_back(ExampleOrder::random);
    else logicl::raise(logicl::Errc::config_error, "unknown order '" + name + "'");
  }
  return orders;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Few-shot log template extraction"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI-style config file");

  PipelineConfig config;
  std::uint64_t seed_value = 0;
  bool seed_given = false;

  auto* sample = app.add_subcommand(
      "sample", "Select a diverse candidate set from the dataset for labeling");
  auto* parse = app.add_subcommand(
      "parse", "Extract a template for every log using the labeled candidate file");
  auto* evaluate = app.add_subcommand(
      "evaluate", "Score a parse output against the dataset's ground truth");
  auto* ablate = app.add_subcommand(
      "ablate", "Sweep candidate count, example count and example order");

  for (CLI::App* cmd : {sample, parse, evaluate, ablate}) {
    add_common_options(*cmd, config, seed_value, seed_given);
  }

  AblateSpec spec;
  std::vector<std::string> order_names{"ascending"};
  ablate->add_option("--sweep-candidates", spec.candidate_counts,
                     "Candidate budgets to sweep")
      ->delimiter(',')
      ->required();
  ablate->add_option("--sweep-examples", spec.example_counts,
                     "Example counts to sweep (each within 1..9)")
      ->delimiter(',')
      ->required();
  ablate->add_option("--sweep-orders", order_names, "Orders to sweep")
      ->delimiter(',')
      ->capture_default_str();
  ablate->add_option("--repeats", spec.repeats, "Repetitions for random order")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (seed_given) config.seed = seed_value;

    if (sample->parsed()) {
      const auto stats = logicl::cmd_sample(config);
      std::printf("dataset rows:      %zu\n", stats.dataset_rows);
      std::printf("distinct contents: %zu\n", stats.distinct_contents);
      std::printf("candidates:        %zu of %zu requested\n", stats.selected, stats.requested);
      if (stats.events_total > 0) {
        std::printf("event coverage:    %zu/%zu\n", stats.events_covered, stats.events_total);
      }
      if (stats.selected < stats.requested) {
        std::fprintf(stderr,
                     "warning: only %zu distinct logs were available%s\n", stats.selected,
                     stats.rank_exhausted ? " (kernel rank exhausted)" : "");
      }
      std::printf("candidate file:    %s\n", config.candidate_file_path().string().c_str());
      std::printf("label the template column, then run: logicl parse\n");
    } else if (parse->parsed()) {
      const auto stats = logicl::cmd_parse(config);
      std::printf("parsed rows:        %zu\n", stats.rows);
      std::printf("ok:                 %zu\n", stats.ok);
      std::printf("extraction failed:  %zu\n", stats.extraction_failed);
      std::printf("template mismatch:  %zu\n", stats.no_match);
      std::printf("parse output:       %s\n", config.parse_output_path().string().c_str());
    } else if (evaluate->parsed()) {
      const auto report = logicl::cmd_evaluate(config);
      std::fputs(report.to_table().c_str(), stdout);
      std::printf("report: %s\n", config.report_json_path().string().c_str());
    } else if (ablate->parsed()) {
      spec.orders = parse_orders(order_names);
      const auto result = logicl::cmd_ablate(config, spec);
      std::printf("%-12s %-10s %-12s %-8s %-8s %-8s\n", "candidates", "examples", "order",
                  "PA", "PTA", "RTA");
      for (const auto& cell : result.cells) {
        std::printf("%-12zu %-10zu %-12s %-8.4f %-8.4f %-8.4f\n", cell.candidate_count,
                    cell.example_count, to_string(cell.order).c_str(),
                    cell.mean_pa, cell.mean_pta, cell.mean_rta);
      }
      std::printf("matrix: %s\n", config.ablation_json_path().string().c_str());
    }
  } catch (const logicl::Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
