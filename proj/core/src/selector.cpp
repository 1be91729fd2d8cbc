#include "logicl/selector.hpp"

#include <algorithm>

#include "logicl/errors.hpp"
#include "logicl/stable_hash.hpp"

namespace logicl {

SelectionResult select_examples(const LogRecord& query,
                                const EmbeddingVector& query_vec,
                                std::span<const Candidate> candidates,
                                std::size_t k,
                                bool exclude_identical) {
  if (k == 0) raise(Errc::config_error, "example count must be at least 1");

  const std::string query_key = exclude_identical ? collapse_whitespace(query.content) : "";

  std::vector<ScoredExample> usable;
  usable.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (exclude_identical && collapse_whitespace(candidates[i].record.content) == query_key) {
      continue;
    }
    usable.push_back({i, cosine_similarity(query_vec, candidates[i].embedding)});
  }
  if (usable.empty()) {
    raise(Errc::no_candidates, "no usable candidates for query line " +
                                   std::to_string(query.line_id) +
                                   (exclude_identical ? " (identical candidates excluded)" : ""));
  }

  std::sort(usable.begin(), usable.end(), [](const ScoredExample& a, const ScoredExample& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.candidate_index < b.candidate_index;
  });

  SelectionResult result;
  result.query_id = query.line_id;
  result.truncated = usable.size() < k;
  const std::size_t take = std::min(k, usable.size());
  result.examples.assign(usable.begin(), usable.begin() + static_cast<std::ptrdiff_t>(take));
  std::reverse(result.examples.begin(), result.examples.end());
  return result;
}

std::vector<ScoredExample> ordered_examples(const SelectionResult& selection,
                                            ExampleOrder order,
                                            std::uint64_t seed) {
  std::vector<ScoredExample> out = selection.examples;
  switch (order) {
    case ExampleOrder::ascending:
      break;
    case ExampleOrder::descending:
      std::reverse(out.begin(), out.end());
      break;
    case ExampleOrder::random: {
      // Hand-rolled Fisher-Yates: std::shuffle's draw is implementation
      // defined, and runs must agree across standard libraries.
      std::uint64_t state = seed;
      for (std::size_t i = out.size(); i > 1; --i) {
        state = splitmix64(state);
        std::swap(out[i - 1], out[state % i]);
      }
      break;
    }
  }
  return out;
}

}  // namespace logicl
