#pragma once

// Shared fixtures: a scratch directory that cleans up after itself and a
// synthetic log corpus whose templates use disjoint vocabularies, so
// character-n-gram similarity ranks same-template pairs far above
// cross-template ones.

#include <unistd.h>

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "logicl/log_model.hpp"

namespace logicl::testing {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("logicl-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Template texts with (near-)disjoint constant vocabularies.
const std::vector<std::string>& synthetic_templates();

struct SyntheticRow {
  std::size_t line_id;
  std::string content;
  std::string event_id;
  std::string template_text;
};

/// `rows` log lines cycling through the first `template_count` templates,
/// every content unique (parameters derive from the row index).
std::vector<SyntheticRow> make_synthetic_rows(std::size_t rows, std::size_t template_count);

/// Writes rows as a structured CSV (LineId, Content, EventId, EventTemplate).
void write_structured_csv(const std::filesystem::path& path,
                          const std::vector<SyntheticRow>& rows);

}  // namespace logicl::testing
