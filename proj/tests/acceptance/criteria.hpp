#pragma once

// Acceptance criteria: one self-contained check per guarantee the artifact
// makes. Each check throws std::runtime_error with a diagnostic on failure;
// the harness prints one PASS/FAIL line per criterion.

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace acceptance {

struct Criterion {
  int id;
  std::string name;
  bool opt_in;  // excluded from the default run (live smoke test)
  std::function<void()> run;
};

void register_algorithm_criteria(std::vector<Criterion>& criteria);
void register_pipeline_criteria(std::vector<Criterion>& criteria);

template <typename... Parts>
void require(bool condition, const Parts&... parts) {
  if (condition) return;
  std::ostringstream message;
  (message << ... << parts);
  throw std::runtime_error(message.str());
}

}  // namespace acceptance
