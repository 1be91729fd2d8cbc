#include <benchmark/benchmark.h>

#include <random>

#include "logicl/dpp.hpp"
#include "logicl/selector.hpp"

namespace {

using namespace logicl;

std::vector<EmbeddingVector> random_unit_vectors(std::size_t count, std::size_t dim,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<EmbeddingVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> values(dim);
    for (auto& v : values) v = gauss(rng);
    out.push_back(EmbeddingVector::normalized(std::move(values)));
  }
  return out;
}

std::vector<LogRecord> numbered_logs(std::size_t count) {
  std::vector<LogRecord> logs(count);
  for (std::size_t i = 0; i < count; ++i) {
    logs[i].line_id = i;
    logs[i].content = "entry " + std::to_string(i);
  }
  return logs;
}

void BM_sample_candidates(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto embeddings = random_unit_vectors(n, 256, 42);
  const auto logs = numbered_logs(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_candidates(logs, embeddings, k));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n * k));
}
BENCHMARK(BM_sample_candidates)
    ->Args({1000, 50})
    ->Args({2000, 50})
    ->Args({4000, 50})
    ->Args({2000, 100})
    ->Args({2000, 200})
    ->Unit(benchmark::kMillisecond);

void BM_select_examples(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  const auto embeddings = random_unit_vectors(count + 1, 1024, 7);
  std::vector<Candidate> candidates(count);
  for (std::size_t i = 0; i < count; ++i) {
    candidates[i].record.line_id = i;
    candidates[i].record.content = "candidate line " + std::to_string(i);
    candidates[i].label = normalize_template("candidate line <*>");
    candidates[i].embedding = embeddings[i];
  }
  LogRecord query;
  query.content = "a fresh incoming log line";
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_examples(query, embeddings[count], candidates, 5, true));
  }
}
BENCHMARK(BM_select_examples)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
