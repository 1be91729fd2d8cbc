#include <benchmark/benchmark.h>

#include "logicl/embedding.hpp"
#include "logicl/log_model.hpp"

namespace {

using namespace logicl;

void BM_ngram_encode(benchmark::State& state) {
  LocalNgramEncoder encoder(static_cast<std::size_t>(state.range(0)));
  const std::string line =
      "Accepted connection from 192.168.14.7 port 50214 on interface eth0 after 3 retries";
  for (auto _ : state) {
    benchmark::DoNotOptimize(encoder.encode_one(line));
  }
}
BENCHMARK(BM_ngram_encode)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_match_template(benchmark::State& state) {
  const Template tmpl = normalize_template(
      "Accepted connection from <*> port <*> on interface <*> after <*> retries");
  const std::string content =
      "Accepted connection from 192.168.14.7 port 50214 on interface eth0 after 3 retries";
  for (auto _ : state) {
    benchmark::DoNotOptimize(match_template(content, tmpl));
  }
}
BENCHMARK(BM_match_template)->Unit(benchmark::kNanosecond);

void BM_normalize_template(benchmark::State& state) {
  const std::string raw = "  Accepted   connection from <*>   port <*>  ";
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize_template(raw));
  }
}
BENCHMARK(BM_normalize_template)->Unit(benchmark::kNanosecond);

}  // namespace
