#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "logicl/embedding.hpp"
#include "logicl/log_model.hpp"

namespace logicl {

/// A labeled log available as a prompt example.
struct Candidate {
  LogRecord record;
  Template label;
  EmbeddingVector embedding;
};

struct ScoredExample {
  std::size_t candidate_index = 0;  // position in the candidate span
  double similarity = 0.0;

  friend bool operator==(const ScoredExample&, const ScoredExample&) = default;
};

/// Examples chosen for one query, ascending by similarity so the most
/// similar example sits last (closest to the query in the prompt).
/// `truncated` reports that fewer than the requested k usable candidates
/// existed.
struct SelectionResult {
  std::vector<ScoredExample> examples;
  std::size_t query_id = 0;
  bool truncated = false;
};

enum class ExampleOrder { ascending, descending, random };

/// Scores every candidate against the query, takes the top k (ties to the
/// lower candidate index) and returns them ascending by similarity. When
/// exclude_identical is set, candidates whose whitespace-collapsed content
/// equals the query's are skipped and the scan continues down the ranking, so
/// a duplicated query still gets k examples when enough distinct candidates
/// exist. Throws Errc::no_candidates when nothing usable remains and
/// Errc::config_error for k == 0.
SelectionResult select_examples(const LogRecord& query,
                                const EmbeddingVector& query_vec,
                                std::span<const Candidate> candidates,
                                std::size_t k,
                                bool exclude_identical);

/// Reorders a selection for prompting: `ascending` keeps the stored order,
/// `descending` reverses it, `random` shuffles with a self-contained
/// Fisher-Yates driven by the seed (identical output on every platform).
/// Always an exact permutation of the selected set.
std::vector<ScoredExample> ordered_examples(const SelectionResult& selection,
                                            ExampleOrder order,
                                            std::uint64_t seed = 0);

}  // namespace logicl
